"""Entanglement potential via a balanced beamsplitter with a vacuum ancilla.

A classical input splits into a product state and yields zero concurrence;
any nonclassical input entangles the output modes. The reduced-state
purity is computed both from the dense two-mode vector and from a
closed-form multiple sum specific to photon-added hypergeometric inputs,
so each path can certify the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .fockspace import FockState
from .states import HypergeometricParams, _log_binomial_prefix, log_binomial_real

_LN2 = math.log(2.0)
_I_POW = (1.0 + 0.0j, 1j, -1.0 + 0.0j, -1j)


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Pure two-mode state; amplitudes[j, l] multiplies |j, l>."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 2 or amps.shape[0] != amps.shape[1]:
            raise ValueError("two-mode amplitudes must be a square matrix")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > 1e-12:
            raise ValueError(f"two-mode amplitudes not unit-norm: |c|^2 = {norm_sq!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


def beamsplitter_with_vacuum(state: FockState) -> TwoModeState:
    """Mix the state with vacuum on a balanced splitter.

    Convention: |n, 0> maps to 2^(-n/2) sum_j sqrt(C(n, j)) i^(n-j) |j, n-j>,
    i.e. transmission 1/sqrt(2) and reflection i/sqrt(2). The i-phases are
    local and drop out of purity, but are kept so the output matches the
    stated convention amplitude for amplitude.
    """
    d = state.dim
    out = np.zeros((d, d), dtype=complex)
    log_fact = gammaln(np.arange(d) + 1.0)
    for n in range(d):
        c = state.amplitudes[n]
        if c == 0:
            continue
        j = np.arange(n + 1)
        log_coeff = 0.5 * (log_fact[n] - log_fact[j] - log_fact[n - j] - n * _LN2)
        phases = np.array([_I_POW[(n - jj) % 4] for jj in j])
        out[j, n - j] += c * phases * np.exp(log_coeff)
    return TwoModeState(out)


def reduced_purity(t: TwoModeState, trace_out: str = "A") -> float:
    """Tr(rho^2) of the single-mode state left after tracing out one mode.

    For the balanced splitter both choices agree; the default traces out
    the first (transmitted) mode.
    """
    a = t.amplitudes
    if trace_out == "A":
        gram = a.conj().T @ a
    elif trace_out == "B":
        gram = a @ a.conj().T
    else:
        raise ValueError(f"trace_out must be 'A' or 'B', got {trace_out!r}")
    return float(np.sum(np.abs(gram) ** 2))


def concurrence_potential(state: FockState) -> float:
    """C = sqrt(2 (1 - Tr(rho_B^2))) of the splitter output.

    Zero for classical inputs (vacuum, coherent); positive otherwise.
    Tiny negative round-off under the square root is clipped.
    """
    purity = reduced_purity(beamsplitter_with_vacuum(state))
    return math.sqrt(max(0.0, 2.0 * (1.0 - purity)))


def purity_closed_form_pahs(p: HypergeometricParams) -> float:
    """Reduced-state purity of the splitter output for a photon-added
    hypergeometric input, from the closed-form multiple sum.

    The sum runs over (n, m, r) in [0, M]^3 with the paired index
    s = n - m + r, plus an inner sum over the splitter index k1. Terms
    whose indices leave the valid region (s outside [0, M], or a factorial
    of a negative integer in the inner sum) are exactly zero and are
    skipped. Every factor is combined in log space.
    """
    L, M, eta, k = p.L, p.M, p.eta, p.k
    lb_e = _log_binomial_prefix(L * eta, M)
    lb_o = _log_binomial_prefix(L * (1.0 - eta), M)
    lb_lm = log_binomial_real(L, M)
    lf = gammaln(np.arange(M + 2 * k + 2) + 1.0)  # lf[i] = log(i!)

    # log of the bare-state PND (unnormalized by C(L, M))
    log_w = lb_e + lb_o[::-1]

    # normalization of the photon-added state: N^2 = 1 / sum_n w_n (n+k)!/n!
    n_idx = np.arange(M + 1)
    log_n2 = -logsumexp(log_w - lb_lm + lf[n_idx + k] - lf[n_idx])

    term_logs = []
    for n in range(M + 1):
        if log_w[n] == -math.inf:
            continue
        for m in range(M + 1):
            if log_w[m] == -math.inf:
                continue
            for r in range(M + 1):
                s = n - m + r
                if s < 0 or s > M:
                    continue
                if log_w[r] == -math.inf or log_w[s] == -math.inf:
                    continue
                k1_lo = max(0, m - r)
                k1_hi = min(n + k, k + m)
                if k1_lo > k1_hi:
                    continue
                k1 = np.arange(k1_lo, k1_hi + 1)
                log_inner = (
                    lf[n + k]
                    + lf[m + k]
                    + lf[r + k]
                    + lf[s + k]
                    - 0.5 * (lf[n] + lf[m] + lf[r] + lf[s])
                    - lf[k1]
                    - lf[n + k - k1]
                    - lf[k + m - k1]
                    - lf[r - m + k1]
                )
                log_pref = (
                    0.5 * (log_w[n] + log_w[m] + log_w[r] + log_w[s])
                    - (n + 2 * k + r) * _LN2
                    - 2.0 * lb_lm
                )
                term_logs.append(log_pref + logsumexp(log_inner))
    return float(np.exp(logsumexp(np.array(term_logs)) + 2.0 * log_n2))
