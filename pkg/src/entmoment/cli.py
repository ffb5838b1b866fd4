"""Command-line front end: basis export, state analysis, sweeps, selftest.

Exit codes: 0 success, 1 validated domain/configuration failure, 2 state
file parse error, 3 state invariant violation on load, 64 usage error.
All failures print a single machine-parsable line ``error: <kind>: <msg>``
to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import acceptance
from .basis import basis_to_dict, generate_basis
from .entanglement import (
    classify,
    concurrence_variant,
    concurrence_wootters,
    d_measure,
    octahedron_check,
    ppt_check,
    tr_rho_rhotilde,
)
from .errors import (
    ConfigurationError,
    DimensionError,
    DomainError,
    FormatError,
    NormalizationError,
    PositivityError,
    ResolutionError,
    ShapeError,
    SymmetryError,
)
from .linalg import hermitian_eigenvalues
from .states import (
    DensityOperator,
    fano_decompose,
    load_state,
    local_dimension,
    purity,
    save_state,
    schmidt_mix,
    standard_form_state,
    state_to_dict,
    werner,
)
from .sweep import (
    AxisSpec,
    SweepGrid,
    SweepTable,
    format_float,
    grid_sweep,
    wedge_field,
    write_csv,
    write_svg,
)
from .tensors import (
    covariance_coefficients,
    product_representation,
    quadratic_invariant,
    split_sym_antisym,
    tensor_coefficients,
)

USAGE_EXIT = 64


class _Exit(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Exit(USAGE_EXIT, "usage", message)


def _parse_range(spec: str, name: str) -> AxisSpec:
    parts = spec.split(":")
    if len(parts) != 3:
        raise _Exit(USAGE_EXIT, "usage", f"range for {name} must be start:stop:count, got {spec!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise _Exit(USAGE_EXIT, "usage", f"malformed range {spec!r} for {name}")
    return AxisSpec(name=name, start=start, stop=stop, count=count)


def _parse_triple(spec: str) -> tuple[float, float, float]:
    parts = spec.split(",")
    if len(parts) != 3:
        raise _Exit(USAGE_EXIT, "usage", f"expected three comma-separated values, got {spec!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise _Exit(USAGE_EXIT, "usage", f"malformed triple {spec!r}")


def _load_checked(path: str) -> DensityOperator:
    try:
        return load_state(path)
    except (json.JSONDecodeError, FormatError) as exc:
        raise _Exit(2, "parse", f"{path}: {exc}")
    except SymmetryError as exc:
        raise _Exit(3, "validation", f"{path}: hermiticity: {exc}")
    except NormalizationError as exc:
        raise _Exit(3, "validation", f"{path}: trace: {exc}")
    except PositivityError as exc:
        raise _Exit(3, "validation", f"{path}: positivity: {exc}")
    except OSError as exc:
        raise _Exit(2, "parse", str(exc))


def _build_family(args) -> DensityOperator:
    family = args.family.replace("-", "_")
    if family == "werner":
        if args.x is None:
            raise _Exit(USAGE_EXIT, "usage", "--family werner requires --x")
        return werner(args.x)
    if family == "schmidt":
        if args.x is None or args.alpha is None:
            raise _Exit(USAGE_EXIT, "usage", "--family schmidt requires --x and --alpha")
        return schmidt_mix(args.x, args.alpha)
    if family == "standard_form":
        if args.d is None:
            raise _Exit(USAGE_EXIT, "usage", "--family standard-form requires --d d1,d2,d3")
        return standard_form_state(_parse_triple(args.d))
    raise _Exit(USAGE_EXIT, "usage", f"unknown family {args.family!r}")


def _complex_pairs(matrix: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def analysis_report(state: DensityOperator, tol: float) -> dict:
    """Full analysis payload for a bipartite state."""
    n = local_dimension(state.dim)
    rep = product_representation(n)
    t = tensor_coefficients(state, rep, order=2)
    l_sym, omega = split_sym_antisym(t)
    k = covariance_coefficients(state, rep)
    fano = fano_decompose(state)
    report = {
        "dim": state.dim,
        "n_local": n,
        "purity": purity(state),
        "linear_entropy": 1.0 - purity(state),
        "f2_linear": quadratic_invariant(state, "linear"),
        "f2_covariance": quadratic_invariant(state, "covariance"),
    }
    if n == 2:
        report["tr_rho_rhotilde"] = tr_rho_rhotilde(state)
        report["d_measure"] = d_measure(state)
        report["concurrence_wootters"] = concurrence_wootters(state)
        report["concurrence_variant"] = concurrence_variant(state)
    report["bloch_a"] = [float(v) for v in fano.nvec]
    report["bloch_b"] = [float(v) for v in fano.mvec]
    report["correlation"] = [[float(v) for v in row] for row in fano.C]
    report["L"] = [[float(v) for v in row] for row in l_sym]
    report["Omega"] = [[float(v) for v in row] for row in omega]
    report["K"] = _complex_pairs(k.values)
    verdict = classify(state, tol=tol)
    report["verdict"] = {
        "status": verdict.status,
        "decided_by": verdict.decided_by,
        "witnesses": {k_: float(v) for k_, v in verdict.witnesses.items()},
    }
    return report


def _write_matrix_csv(report: dict, path: str) -> None:
    blocks = [
        ("L", report["L"]),
        ("Omega", report["Omega"]),
        ("K_real", [[pair[0] for pair in row] for row in report["K"]]),
        ("K_imag", [[pair[1] for pair in row] for row in report["K"]]),
    ]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for name, rows in blocks:
            fh.write(f"# {name}\n")
            for row in rows:
                fh.write(",".join(format_float(v) for v in row) + "\n")


def cmd_basis(args) -> int:
    doc = json.dumps(basis_to_dict(generate_basis(args.n)), allow_nan=False)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(doc + "\n")
    else:
        print(doc)
    return 0


def cmd_analyze(args) -> int:
    if args.state and args.family:
        raise _Exit(USAGE_EXIT, "usage", "--state and --family are mutually exclusive")
    if args.state:
        rho = _load_checked(args.state)
    elif args.family:
        rho = _build_family(args)
    else:
        raise _Exit(USAGE_EXIT, "usage", "analyze needs --state or --family")
    if args.dump_state:
        save_state(rho, args.dump_state)
    report = analysis_report(rho, tol=args.tolerance)
    doc = json.dumps(report, indent=2, allow_nan=False)
    print(doc)
    if args.out:
        if args.out.endswith(".csv"):
            _write_matrix_csv(report, args.out)
        else:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(doc + "\n")
    verdict = report["verdict"]
    print(
        f"dim={report['dim']} purity={report['purity']:.6g} "
        f"verdict={verdict['status']}"
        + (f" ({verdict['decided_by']})" if verdict["decided_by"] else ""),
        file=sys.stderr,
    )
    return 0


def _sweep_grid(args, quantities) -> SweepGrid:
    family = (args.family or "").replace("-", "_")
    if family == "werner":
        if not args.x:
            raise _Exit(USAGE_EXIT, "usage", "werner sweeps need --x start:stop:count")
        axes = (_parse_range(args.x, "x"),)
    elif family == "schmidt":
        if not args.x or not args.alpha:
            raise _Exit(USAGE_EXIT, "usage", "schmidt sweeps need --x and --alpha ranges")
        axes = (_parse_range(args.x, "x"), _parse_range(args.alpha, "alpha"))
    elif family == "standard_form":
        if not args.d:
            raise _Exit(USAGE_EXIT, "usage", "standard-form sweeps need --d r1,r2,r3 ranges")
        specs = args.d.split(",")
        if len(specs) != 3:
            raise _Exit(USAGE_EXIT, "usage", "--d needs three comma-separated ranges")
        axes = tuple(_parse_range(s, f"d{i + 1}") for i, s in enumerate(specs))
    else:
        raise _Exit(USAGE_EXIT, "usage", f"unknown or missing family {args.family!r}")
    return SweepGrid(family=family, axes=axes, quantities=tuple(quantities))


def _emit_table(table: SweepTable, args) -> None:
    if args.out:
        write_csv(table, args.out)
    else:
        sys.stdout.write(",".join(table.columns) + "\n")
        for row in table.rows:
            sys.stdout.write(",".join(format_float(v) for v in row) + "\n")
    if args.svg:
        write_svg(table, args.svg)


def cmd_sweep(args) -> int:
    quantities = [q.strip() for q in args.quantities.split(",") if q.strip()]
    if not quantities:
        raise _Exit(USAGE_EXIT, "usage", "--quantities must name at least one quantity")
    grid = _sweep_grid(args, quantities)
    _emit_table(grid_sweep(grid), args)
    return 0


def cmd_wedge(args) -> int:
    quantities = [q.strip() for q in args.quantities.split(",") if q.strip()]
    if len(quantities) != 2:
        raise _Exit(USAGE_EXIT, "usage", "wedge needs exactly two quantities, e.g. C,D")
    grid = _sweep_grid(args, quantities)
    _emit_table(wedge_field(grid, quantities[0], quantities[1]), args)
    return 0


def cmd_standard_form(args) -> int:
    if not args.d:
        raise _Exit(USAGE_EXIT, "usage", "standard-form requires --d d1,d2,d3")
    d = _parse_triple(args.d)
    rho = standard_form_state(d)
    octa = octahedron_check(d, tol=args.tolerance)
    ppt = ppt_check(rho, tol=args.tolerance)
    spectrum = [float(v) for v in hermitian_eigenvalues(rho.matrix)]
    report = {
        "d": [float(v) for v in d],
        "state": state_to_dict(rho),
        "spectrum": spectrum,
        "octahedron": {"separable": bool(octa.separable), "l1": float(octa.l1)},
        "ppt": {
            "separable": bool(ppt.separable),
            "min_eigenvalue": float(ppt.min_eigenvalue),
        },
    }
    print(json.dumps(report, indent=2, allow_nan=False))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(report, allow_nan=False) + "\n")
    return 0


def cmd_selftest(args) -> int:
    numbers = None
    if args.only:
        try:
            numbers = [int(v) for v in args.only.split(",")]
        except ValueError:
            raise _Exit(USAGE_EXIT, "usage", f"--only takes criterion numbers, got {args.only!r}")
    results = acceptance.run_all(numbers)
    failures = 0
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"{tag} {res.number:2d} {res.name}: {res.detail}")
        failures += 0 if res.passed else 1
    print(f"{len(results) - failures}/{len(results)} criteria passed", file=sys.stderr)
    return 0 if failures == 0 else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="entmoment", description=__doc__)
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)

    p = sub.add_parser("basis", help="emit a generalized Pauli basis as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("analyze", help="full report for a state (file or family)")
    p.add_argument("--state")
    p.add_argument("--family")
    p.add_argument("--x", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--d")
    p.add_argument("--out")
    p.add_argument("--dump-state", dest="dump_state")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="evaluate quantities over a family grid (CSV)")
    p.add_argument("--family", required=True)
    p.add_argument("--x")
    p.add_argument("--alpha")
    p.add_argument("--d")
    p.add_argument("--quantities", required=True)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("wedge", help="central-difference wedge of two quantities")
    p.add_argument("--family", required=True)
    p.add_argument("--x")
    p.add_argument("--alpha")
    p.add_argument("--d")
    p.add_argument("--quantities", default="C,D")
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_wedge)

    p = sub.add_parser("standard-form", help="standard-form state report")
    p.add_argument("--d", required=True)
    p.add_argument("--out")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_standard_form)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_selftest)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "verb", None):
            parser.error("a subcommand is required")
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return exc.code
    except (json.JSONDecodeError, FormatError) as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return 2
    except (SymmetryError, NormalizationError) as exc:
        print(f"error: validation: {exc}", file=sys.stderr)
        return 3
    except (
        DomainError,
        DimensionError,
        ShapeError,
        PositivityError,
        ConfigurationError,
        ResolutionError,
    ) as exc:
        print(f"error: {type(exc).__name__.removesuffix('Error').lower()}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
