"""Command-line front end: construct states, evaluate measures, run sweeps.

Exit codes: 0 success, 2 invalid parameters, 3 quadrature convergence
failure, 4 I/O failure. All outputs are deterministic: identical flags
produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import (
    IndexOutOfRange,
    InvalidParams,
    NegativeCoefficient,
    QuadratureNotConverged,
    TruncationTooSmall,
    ZeroState,
)
from .fockspace import add_photons, mean_photon_number, photon_number_distribution
from .measures import ALL_MEASURES, MeasureReport, measure_report
from .states import (
    HypergeometricParams,
    binomial,
    coherent_tail_mass,
    coherent_truncated,
    fock,
    hypergeometric,
    pahs,
    pinned_L,
)
from .wigner import QuadratureSpec, wigner_grid

EXIT_OK = 0
EXIT_INVALID_PARAMS = 2
EXIT_NOT_CONVERGED = 3
EXIT_IO = 4

_PARAM_ERRORS = (
    InvalidParams,
    NegativeCoefficient,
    TruncationTooSmall,
    IndexOutOfRange,
    ZeroState,
)

FAMILIES = ("pahs", "hypergeometric", "binomial", "coherent", "fock")

# which parameters may be swept, per family
SWEEPABLE = {
    "pahs": ("L", "M", "eta", "k"),
    "hypergeometric": ("L", "M", "eta"),
    "binomial": ("M", "eta", "k"),
    "coherent": ("alpha", "dim", "k"),
    "fock": ("n", "dim"),
}
_INT_PARAMS = {"M", "k", "n", "dim"}

OUTPUT_DIR_ENV = "HYPERFOCK_OUTPUT_DIR"

_META_COLS = ["wln_nodes", "wln_angular_nodes", "wln_refinement_delta"]


def _fmt(value) -> str:
    """CSV cell for a scalar: 17 significant digits, 'inf'/'undefined' for
    the non-finite mu sentinels, empty for missing."""
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return "undefined"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    return str(value)


def _json_scalar(value):
    if value is None:
        return None
    if isinstance(value, float):
        if math.isnan(value):
            return "undefined"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
    return value


def _resolve_out_path(path: str) -> str:
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _build_state(family: str, opts: dict):
    """Construct the requested state; returns (state, params_dict).

    params_dict holds the fully resolved parameters (e.g. the pinned L),
    keyed by flag name, in a fixed order.
    """
    def need(*names):
        missing = [n for n in names if opts.get(n) is None]
        if missing:
            flags = ", ".join(f"--{n}" for n in missing)
            raise InvalidParams(f"family '{family}' requires {flags}")

    if family in ("pahs", "hypergeometric"):
        need("M", "eta")
        k = int(opts.get("k") or 0)
        if family == "hypergeometric":
            k = 0
        L = opts.get("L")
        if L is None:
            L = pinned_L(int(opts["M"]), float(opts["eta"]), float(opts["L_coeff"]))
        params = HypergeometricParams(float(L), int(opts["M"]), float(opts["eta"]), k)
        state = pahs(params) if k else hypergeometric(params)
        return state, {"L": params.L, "M": params.M, "eta": params.eta, "k": params.k}
    if family == "binomial":
        need("M", "eta")
        k = int(opts.get("k") or 0)
        state = binomial(int(opts["M"]), float(opts["eta"]))
        if k:
            state = add_photons(state, k)
        return state, {"M": int(opts["M"]), "eta": float(opts["eta"]), "k": k}
    if family == "coherent":
        need("alpha")
        alpha = float(opts["alpha"])
        dim = opts.get("dim")
        if dim is None:
            dim = _auto_coherent_dim(alpha)
        k = int(opts.get("k") or 0)
        state = coherent_truncated(alpha, int(dim))
        if k:
            state = add_photons(state, k)
        return state, {"alpha": alpha, "dim": int(dim), "k": k}
    if family == "fock":
        need("n")
        n = int(opts["n"])
        dim = int(opts["dim"]) if opts.get("dim") is not None else n + 1
        return fock(n, dim), {"n": n, "dim": dim}
    raise InvalidParams(f"unknown family '{family}'")


def _auto_coherent_dim(alpha: float) -> int:
    """Smallest truncation whose dropped mass is below 1e-12."""
    d = max(8, int(alpha * alpha) + 2)
    while coherent_tail_mass(alpha, d) > 1e-12:
        d += 4
        if d > 100_000:
            raise InvalidParams(f"no reasonable truncation found for alpha={alpha}")
    return d


def _quad_from_args(args) -> QuadratureSpec:
    return QuadratureSpec(
        cutoff=args.quad_cutoff,
        nodes=args.quad_nodes,
        angular_nodes=args.quad_angular_nodes,
        wln_tolerance=args.wln_tolerance,
    )


def _measure_names(raw: str):
    if raw == "all":
        return ALL_MEASURES
    names = tuple(s.strip() for s in raw.split(",") if s.strip())
    bad = [n for n in names if n not in ALL_MEASURES]
    if bad:
        raise InvalidParams(
            f"unknown measures {bad}; choose from {', '.join(ALL_MEASURES)} or 'all'"
        )
    if not names:
        raise InvalidParams("at least one measure must be requested")
    return names


def _measure_columns(names) -> list[str]:
    cols = set()
    for n in names:
        if n == "anticlassicality":
            cols.update(("anticlassicality", "anticlassicality_with_vacuum"))
        else:
            cols.add(n)
    return sorted(cols)


def _report_cells(report: MeasureReport, columns) -> dict:
    return {c: getattr(report, c) for c in columns}


# ---------------------------------------------------------------- commands


def cmd_state(args) -> int:
    state, params = _build_state(args.family, vars(args))
    pnd = photon_number_distribution(state)
    doc = {
        "family": args.family,
        "params": params,
        "dim": state.dim,
        "amplitudes": [[float(c.real), float(c.imag)] for c in state.amplitudes],
        "pnd": [float(p) for p in pnd],
        "mean_n": mean_photon_number(state),
    }
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_measures(args) -> int:
    state, params = _build_state(args.family, vars(args))
    names = _measure_names(args.measures)
    report = measure_report(state, params, include=names, quad=_quad_from_args(args))
    columns = _measure_columns(names)
    if args.format == "csv":
        meta_cols = _META_COLS if "wln" in names else []
        header = sorted(params) + columns + meta_cols
        cells = {**params, **_report_cells(report, columns + meta_cols)}
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerow([_fmt(cells[c]) for c in header])
    else:
        doc = {
            "family": args.family,
            "params": params,
            "measures": {c: _json_scalar(getattr(report, c)) for c in columns},
            "metadata": {"wln_log_base": "e"},
        }
        if "wln" in names:
            doc["metadata"]["wln_nodes"] = report.wln_nodes
            doc["metadata"]["wln_angular_nodes"] = report.wln_angular_nodes
            doc["metadata"]["wln_refinement_delta"] = report.wln_refinement_delta
        print(json.dumps(doc, indent=2))
    return EXIT_OK


def _sweep_row(family, opts, param, value, names, quad, columns, meta_cols):
    """Compute one sweep row; returns (cells, error_kind)."""
    row_opts = dict(opts)
    row_opts[param] = value
    cells = {param: value}
    try:
        state, params = _build_state(family, row_opts)
        cells.update(params)
        report = measure_report(state, params, include=names, quad=quad)
        cells.update(_report_cells(report, columns + meta_cols))
        cells["error"] = ""
        return cells, None
    except _PARAM_ERRORS as exc:
        cells["error"] = str(exc)
        return cells, "params"
    except QuadratureNotConverged as exc:
        cells["error"] = str(exc)
        return cells, "convergence"


def cmd_sweep(args) -> int:
    family = args.family
    if args.param not in SWEEPABLE[family]:
        raise InvalidParams(
            f"'{args.param}' is not sweepable for family '{family}' "
            f"(choose from {', '.join(SWEEPABLE[family])})"
        )
    values = _parse_values(args.param, args.values)
    names = _measure_names(args.measures)
    quad = _quad_from_args(args)
    columns = _measure_columns(names)
    meta_cols = _META_COLS if "wln" in names else []
    opts = vars(args)

    jobs = max(1, args.jobs)
    work = lambda v: _sweep_row(
        family, opts, args.param, v, names, quad, columns, meta_cols
    )
    if jobs == 1:
        results = [work(v) for v in values]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, values))

    # swept value first, then remaining resolved params, then measures
    param_cols = sorted({k for cells, _ in results for k in cells} -
                        set(columns) - set(meta_cols) - {args.param, "error"})
    header = [args.param] + param_cols + columns + meta_cols + ["error"]
    out_path = _resolve_out_path(args.out)
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for cells, _ in results:
            writer.writerow([_fmt(cells.get(c)) for c in header[:-1]]
                            + [cells.get("error", "")])
    failures = [kind for _, kind in results if kind]
    print(f"wrote {len(results)} rows to {out_path}"
          + (f" ({len(failures)} failed)" if failures else ""))
    if "params" in failures:
        return EXIT_INVALID_PARAMS
    if "convergence" in failures:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _parse_values(param: str, raw: str):
    tokens = [t.strip() for t in raw.split(",") if t.strip()]
    if not tokens:
        raise InvalidParams("--values must list at least one value")
    out = []
    for t in tokens:
        v = float(t)
        if param in _INT_PARAMS:
            if v != int(v):
                raise InvalidParams(f"parameter '{param}' takes integers, got {t}")
            v = int(v)
        out.append(v)
    return out


def cmd_wigner(args) -> int:
    state, params = _build_state(args.family, vars(args))
    grid = wigner_grid(
        state,
        x_min=args.xmin,
        x_max=args.xmax,
        p_min=args.pmin,
        p_max=args.pmax,
        nx=args.nx,
        np=args.np,
    )
    out_path = _resolve_out_path(args.out)
    with open(out_path, "w") as fh:
        fh.write(grid.to_csv_text())
    sidecar = {
        "family": args.family,
        "params": params,
        "x_min": grid.x_min,
        "x_max": grid.x_max,
        "p_min": grid.p_min,
        "p_max": grid.p_max,
        "nx": grid.nx,
        "np": grid.np,
        "w_min": float(grid.values.min()),
        "w_max": float(grid.values.max()),
        "integral": grid.integral(),
    }
    text = json.dumps(sidecar, indent=2)
    with open(out_path + ".json", "w") as fh:
        fh.write(text + "\n")
    print(text)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_state_flags(p: argparse.ArgumentParser):
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--L", type=float, default=None,
                   help="population parameter (default: pinned via --L-coeff)")
    p.add_argument("--L-coeff", dest="L_coeff", type=float, default=2.0,
                   help="L = coeff * max(M/eta, M/(1-eta)) when --L is absent")
    p.add_argument("--M", type=int, default=None, help="dimension parameter")
    p.add_argument("--eta", type=float, default=None, help="probability in [0, 1]")
    p.add_argument("--k", type=int, default=None, help="photons added")
    p.add_argument("--alpha", type=float, default=None, help="coherent amplitude")
    p.add_argument("--dim", type=int, default=None, help="basis truncation")
    p.add_argument("--n", type=int, default=None, help="Fock level")


def _add_quad_flags(p: argparse.ArgumentParser):
    p.add_argument("--quad-nodes", type=int, default=512,
                   help="radial Gauss-Legendre nodes for the negativity integral")
    p.add_argument("--quad-angular-nodes", type=int, default=256,
                   help="uniform angular nodes for the negativity integral")
    p.add_argument("--quad-cutoff", type=float, default=None,
                   help="override the phase-space half-width")
    p.add_argument("--wln-tolerance", type=float, default=1e-4,
                   help="allowed change of the log-negativity under node doubling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperfock",
        description="Photon-added hypergeometric states and nonclassicality measures.",
        epilog=f"Set {OUTPUT_DIR_ENV} to redirect relative output paths.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="print amplitudes, PND and <n> as JSON")
    _add_state_flags(p_state)
    p_state.set_defaults(func=cmd_state)

    p_meas = sub.add_parser("measures", help="evaluate nonclassicality measures")
    _add_state_flags(p_meas)
    _add_quad_flags(p_meas)
    p_meas.add_argument("--measures", default="all",
                        help=f"comma list from: {', '.join(ALL_MEASURES)} (default all)")
    p_meas.add_argument("--format", choices=("json", "csv"), default="json")
    p_meas.set_defaults(func=cmd_measures)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter, write a CSV")
    _add_state_flags(p_sweep)
    _add_quad_flags(p_sweep)
    p_sweep.add_argument("--param", required=True, help="parameter to sweep")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--measures", default="all")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--jobs", type=int, default=1,
                         help="max concurrent rows (output order is unaffected)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_wig = sub.add_parser("wigner", help="evaluate W on a grid, write CSV + sidecar")
    _add_state_flags(p_wig)
    p_wig.add_argument("--xmin", type=float, default=-4.0)
    p_wig.add_argument("--xmax", type=float, default=4.0)
    p_wig.add_argument("--pmin", type=float, default=-4.0)
    p_wig.add_argument("--pmax", type=float, default=4.0)
    p_wig.add_argument("--nx", type=int, default=101)
    p_wig.add_argument("--np", type=int, default=101)
    p_wig.add_argument("--out", required=True, help="output CSV path")
    p_wig.set_defaults(func=cmd_wigner)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _PARAM_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_PARAMS
    except QuadratureNotConverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
