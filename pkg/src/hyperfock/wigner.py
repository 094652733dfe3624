"""Phase-space engine: Wigner functions of finite Fock-basis states.

Two independent evaluation paths are provided on purpose. The closed form
expands W(x, p) over Fock-index pairs (n, n') with generalized-Laguerre
kernels; the oracle integrates the defining transform of the position
wavefunction numerically. They share no code beyond the state itself, so
their pointwise agreement is a meaningful correctness check.

Units are dimensionless oscillator quadratures (hbar = 1), in which the
vacuum Wigner function peaks at 1/pi.

All evaluation is node-parallel in principle: inputs are immutable, node
results are independent, and sums are accumulated in a fixed index order so
results do not depend on evaluation scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from numpy import linspace
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln

from .errors import InvalidParams, QuadratureNotConverged
from .fockspace import FockState, mean_photon_number

_LN2 = math.log(2.0)

# direct-integral (oracle) refinement schedule
_ORACLE_START_NODES = 250
_ORACLE_MAX_NODES = 4000
_ORACLE_ACCEPT = 1e-9
_ORACLE_FAIL = 1e-7


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls phase-space truncation and quadrature resolution.

    cutoff -- radius R of the integration disk (and half-width of the
      oracle's position window); None derives it from the highest occupied
      Fock level n_top as sqrt(2 n_top + 1) + 5, beyond which the Gaussian
      envelope makes the tail contribution negligible. An explicit cutoff
      must still satisfy cutoff >= sqrt(2 <n>) + 5.
    nodes -- radial Gauss-Legendre nodes; angular_nodes -- uniform nodes
      around the circle. The negativity integral is evaluated at this
      resolution and at double it, and the difference is reported.
    wln_tolerance -- maximum allowed change of the log-negativity under
      that node doubling before the result is rejected as unconverged.
    """

    cutoff: float | None = None
    nodes: int = 512
    angular_nodes: int = 256
    wln_tolerance: float = 1e-4

    def __post_init__(self):
        if self.nodes < 32 or self.angular_nodes < 32:
            raise InvalidParams(
                f"node counts must be >= 32, got {self.nodes} x {self.angular_nodes}"
            )
        if not self.wln_tolerance > 0.0:
            raise InvalidParams("wln_tolerance must be positive")

    def radius(self, state: FockState) -> float:
        if self.cutoff is None:
            occupied = np.flatnonzero(state.amplitudes != 0)
            n_top = int(occupied[-1]) if occupied.size else 0
            return math.sqrt(2.0 * n_top + 1.0) + 5.0
        floor = math.sqrt(2.0 * mean_photon_number(state)) + 5.0
        if self.cutoff < floor - 1e-9:
            raise InvalidParams(
                f"cutoff {self.cutoff} below required sqrt(2<n>)+5 = {floor:.3f}"
            )
        return float(self.cutoff)


def _wigner_array(amps: np.ndarray, x, p) -> np.ndarray:
    """W(x, p) for an amplitude vector, broadcasting over arrays x and p.

    The double Fock sum is folded onto ordered pairs n <= n' = n + a: the
    kernel is Hermitian under index swap, so each off-diagonal pair
    contributes twice the real part of one term. Per offset a the needed
    generalized Laguerre values L_n^a are generated by the three-term
    upward recurrence in n, and the pair coefficients
    (-1)^(n+a) sqrt(2^a n!/(n+a)!) are assembled in log space.
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    d = len(amps)
    r2 = x * x + p * p
    z = 2.0 * r2
    shape = np.broadcast_shapes(x.shape, p.shape)
    out = np.zeros(shape)
    zstep = 1j * p - x
    zpow = np.ones(shape, dtype=complex)
    log_fact = gammaln(np.arange(d) + 1.0)
    for a in range(d):
        n_top = d - 1 - a
        n = np.arange(n_top + 1)
        log_coeff = 0.5 * (a * _LN2 + log_fact[n] - log_fact[n + a])
        signs = 1.0 - 2.0 * ((n + a) % 2)
        w = np.conj(amps[: n_top + 1]) * amps[a:d] * signs * np.exp(log_coeff)
        acc = w[0] * np.ones(shape, dtype=complex)  # L_0^a = 1
        if n_top >= 1:
            l_prev = np.ones(shape)
            l_curr = (1.0 + a) - z
            acc += w[1] * l_curr
            for nn in range(2, n_top + 1):
                l_prev, l_curr = (
                    l_curr,
                    ((2.0 * nn - 1.0 + a - z) * l_curr - (nn - 1.0 + a) * l_prev) / nn,
                )
                acc += w[nn] * l_curr
        if a == 0:
            out += acc.real
        else:
            out += 2.0 * (acc * zpow).real
        zpow = zpow * zstep
    return out * (np.exp(-r2) / math.pi)


def wigner_point(state: FockState, x: float, p: float) -> float:
    """Closed-form W(x, p) at a single phase-space point."""
    return float(_wigner_array(state.amplitudes, np.float64(x), np.float64(p)))


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """W sampled on a rectangular grid; values[i, j] = W(x_i, p_j)."""

    x_min: float
    x_max: float
    p_min: float
    p_max: float
    nx: int
    np: int
    values: np.ndarray

    @property
    def x_nodes(self) -> np.ndarray:
        return linspace(self.x_min, self.x_max, self.nx)

    @property
    def p_nodes(self) -> np.ndarray:
        return linspace(self.p_min, self.p_max, self.np)

    def integral(self) -> float:
        """Trapezoid estimate of the grid integral (should be ~1 when the
        grid covers the state's support)."""
        inner = np.trapezoid(self.values, self.p_nodes, axis=1)
        return float(np.trapezoid(inner, self.x_nodes))

    def to_csv_text(self) -> str:
        xs = self.x_nodes
        ps = self.p_nodes
        lines = ["x,p,W"]
        for i in range(self.nx):
            for j in range(self.np):
                lines.append(f"{xs[i]:.17g},{ps[j]:.17g},{self.values[i, j]:.17g}")
        return "\n".join(lines) + "\n"

    def to_json_text(self) -> str:
        import json

        header = {
            "x_min": self.x_min,
            "x_max": self.x_max,
            "p_min": self.p_min,
            "p_max": self.p_max,
            "nx": self.nx,
            "np": self.np,
            "order": "x-major",
            "values": [float(v) for v in self.values.ravel()],
        }
        return json.dumps(header)


def wigner_grid(
    state: FockState,
    x_min: float = -4.0,
    x_max: float = 4.0,
    p_min: float = -4.0,
    p_max: float = 4.0,
    nx: int = 101,
    np: int = 101,
) -> WignerGrid:
    """Evaluate the closed-form Wigner function on a rectangular grid."""
    if nx < 2 or np < 2:
        raise InvalidParams("grid needs at least 2 nodes per axis")
    xs = linspace(x_min, x_max, nx)
    ps = linspace(p_min, p_max, np)
    values = _wigner_array(state.amplitudes, xs[:, None], ps[None, :])
    values.setflags(write=False)
    return WignerGrid(
        x_min=float(x_min),
        x_max=float(x_max),
        p_min=float(p_min),
        p_max=float(p_max),
        nx=int(nx),
        np=int(np),
        values=values,
    )


@lru_cache(maxsize=32)
def _leggauss_cached(n: int):
    nodes, weights = leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _leggauss_scaled(n: int, lo: float, hi: float):
    nodes, weights = _leggauss_cached(n)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return mid + half * nodes, half * weights


def _position_wavefunction(amps: np.ndarray, u) -> np.ndarray:
    """psi(u) = sum_n c_n phi_n(u), with phi_n the normalized oscillator
    eigenfunctions generated by the stable normalized recurrence
    phi_n = u sqrt(2/n) phi_{n-1} - sqrt((n-1)/n) phi_{n-2}."""
    u = np.asarray(u, dtype=float)
    phi_prev = math.pi ** -0.25 * np.exp(-0.5 * u * u)
    acc = amps[0] * phi_prev
    if len(amps) == 1:
        return acc
    phi = math.sqrt(2.0) * u * phi_prev
    acc = acc + amps[1] * phi
    for n in range(2, len(amps)):
        phi, phi_prev = (
            math.sqrt(2.0 / n) * u * phi - math.sqrt((n - 1.0) / n) * phi_prev,
            phi,
        )
        acc = acc + amps[n] * phi
    return acc


def _oracle_integral(
    amps: np.ndarray, x: float, p: float, y_cutoff: float, nodes: int
) -> complex:
    """One fixed-resolution evaluation of the defining Wigner transform
    (1/pi) * integral over y of conj(psi(x+y)) psi(x-y) exp(2ipy)."""
    y, w = _leggauss_scaled(nodes, -y_cutoff, y_cutoff)
    vals = (
        np.conj(_position_wavefunction(amps, x + y))
        * _position_wavefunction(amps, x - y)
        * np.exp(2j * p * y)
    )
    return complex(np.dot(w, vals)) / math.pi


def wigner_oracle_point(
    state: FockState, x: float, p: float, quad: QuadratureSpec | None = None
) -> float:
    """W(x, p) by direct numerical integration of the position-space
    transform. Independent of the closed form; intended for validation at
    desk scale (dim up to a few tens).

    Node counts are doubled until successive values agree to 1e-9;
    QuadratureNotConverged is raised if they still differ by more than
    1e-7 at the largest resolution.
    """
    quad = quad if quad is not None else QuadratureSpec()
    y_cutoff = quad.radius(state) + abs(x)
    amps = state.amplitudes
    nodes = _ORACLE_START_NODES
    prev = _oracle_integral(amps, x, p, y_cutoff, nodes)
    while True:
        nodes *= 2
        curr = _oracle_integral(amps, x, p, y_cutoff, nodes)
        delta = abs(curr - prev)
        if delta <= _ORACLE_ACCEPT:
            return float(curr.real)
        if nodes >= _ORACLE_MAX_NODES:
            if delta > _ORACLE_FAIL:
                raise QuadratureNotConverged(
                    f"direct Wigner integral at ({x}, {p}) moved by {delta:.3e} "
                    f"between {nodes // 2} and {nodes} nodes"
                )
            return float(curr.real)
        prev = curr


class WlnResult(NamedTuple):
    value: float
    nodes: int
    angular_nodes: int
    refinement_delta: float
    abs_integral: float
    wigner_integral: float


def _radial_mean_profile(probs: np.ndarray, r) -> np.ndarray:
    """Angular average of W at radius r, up to the positive factor
    exp(-r^2)/pi: the off-diagonal Fourier modes integrate to zero around
    the circle, leaving sum_n p_n (-1)^n L_n(2 r^2)."""
    r = np.asarray(r, dtype=float)
    z = 2.0 * r * r
    acc = probs[0] * np.ones_like(z)
    if len(probs) > 1:
        l_prev = np.ones_like(z)
        l_curr = 1.0 - z
        acc = acc - probs[1] * l_curr
        for n in range(2, len(probs)):
            l_prev, l_curr = (
                l_curr,
                ((2.0 * n - 1.0 - z) * l_curr - (n - 1.0) * l_prev) / n,
            )
            acc = acc + (probs[n] * (1.0 - 2.0 * (n % 2))) * l_curr
    return acc


def _radial_panel_edges(amps: np.ndarray, radius: float) -> np.ndarray:
    """Radial panel boundaries for the disk quadrature: the zeros of the
    angular-mean Wigner profile, bisected to high precision.

    For radially symmetric states these are exactly the kink circles of
    |W|, so panelized quadrature sees only smooth integrands; for other
    states they still track the near-circular ring structure.
    """
    probs = np.abs(amps) ** 2
    probe = np.linspace(0.0, radius, 4097)
    g = _radial_mean_profile(probs, probe)
    crossings = []
    idx = np.flatnonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0)
    for i in idx:
        lo, hi = probe[i], probe[i + 1]
        glo = g[i]
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            gmid = float(_radial_mean_profile(probs, np.float64(mid)))
            if gmid == 0.0:
                lo = hi = mid
                break
            if (glo < 0) == (gmid < 0):
                lo, glo = mid, gmid
            else:
                hi = mid
        crossings.append(0.5 * (lo + hi))
    crossings = [c for c in crossings if 1e-6 < c < radius - 1e-6]
    return np.concatenate([[0.0], np.asarray(crossings, dtype=float), [radius]])


def _phase_space_integrals(amps: np.ndarray, radius: float, nodes: int, angular: int):
    """Integrals of |W| and W over the disk of given radius.

    Tensor-product rule in polar coordinates: composite Gauss-Legendre in
    r against the r dr measure, with panels split at the zero rings of the
    angular-mean profile; uniform midpoint around the circle, which
    integrates the finite angular Fourier content of W exactly. Keeping
    the kinks of |W| on (or near) panel boundaries restores fast radial
    convergence that a Cartesian grid, whose every row and column crosses
    the rings, cannot achieve.
    """
    edges = _radial_panel_edges(amps, radius)
    widths = np.diff(edges)
    r_parts, w_parts = [], []
    for lo, width in zip(edges[:-1], widths):
        q = max(12, int(round(nodes * width / radius)))
        rp, wp = _leggauss_scaled(q, lo, lo + width)
        r_parts.append(rp)
        w_parts.append(wp)
    r = np.concatenate(r_parts)
    wr = np.concatenate(w_parts)
    theta = 2.0 * math.pi * (np.arange(angular) + 0.5) / angular
    values = _wigner_array(
        amps, r[:, None] * np.cos(theta)[None, :], r[:, None] * np.sin(theta)[None, :]
    )
    wt = (wr * r)[:, None] * (2.0 * math.pi / angular)
    return float((wt * np.abs(values)).sum()), float((wt * values).sum())


def wigner_log_negativity_detailed(
    state: FockState, quad: QuadratureSpec | None = None
) -> WlnResult:
    """log of the integrated absolute Wigner function, with convergence
    metadata.

    Natural logarithm throughout. The integral is evaluated at the
    requested resolution and at double resolution on both axes; the
    reported value is the finer one and refinement_delta the difference of
    the two, which must stay within quad.wln_tolerance. wigner_integral
    carries the signed integral of W on the same grid, a ~1 sanity
    diagnostic.
    """
    quad = quad if quad is not None else QuadratureSpec()
    radius = quad.radius(state)
    amps = state.amplitudes
    abs1, _ = _phase_space_integrals(amps, radius, quad.nodes, quad.angular_nodes)
    abs2, total2 = _phase_space_integrals(
        amps, radius, 2 * quad.nodes, 2 * quad.angular_nodes
    )
    coarse = math.log(abs1)
    value = math.log(abs2)
    delta = abs(value - coarse)
    if delta > quad.wln_tolerance:
        raise QuadratureNotConverged(
            f"log-negativity moved by {delta:.3e} (> {quad.wln_tolerance}) when "
            f"doubling {quad.nodes} x {quad.angular_nodes} nodes"
        )
    return WlnResult(
        value=value,
        nodes=2 * quad.nodes,
        angular_nodes=2 * quad.angular_nodes,
        refinement_delta=delta,
        abs_integral=abs2,
        wigner_integral=total2,
    )


def wigner_log_negativity(state: FockState, quad: QuadratureSpec | None = None) -> float:
    """Convenience wrapper returning only the converged value."""
    return wigner_log_negativity_detailed(state, quad).value
