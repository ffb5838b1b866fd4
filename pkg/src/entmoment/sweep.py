"""Parameter sweeps over state families and finite-difference wedge fields.

Rows are evaluated independently (optionally across IOVT_THREADS worker
threads) and assembled in lexicographic grid order, so output is bitwise
reproducible regardless of scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from .entanglement import (
    ENTANGLED,
    SEPARABLE,
    classify,
    concurrence_variant,
    concurrence_wootters,
    correlation_block,
    d_measure,
    kyfan_norm,
    tr_rho_rhotilde,
)
from .errors import ConfigurationError, DomainError, ResolutionError
from .states import DensityOperator, purity, schmidt_mix, standard_form_state, werner
from .tensors import quadratic_invariant

VERDICT_CODE = {SEPARABLE: 1.0, ENTANGLED: -1.0}

QUANTITIES = {
    "purity": purity,
    "linear_entropy": lambda rho: 1.0 - purity(rho),
    "tr_rho_rhotilde": tr_rho_rhotilde,
    "f2_linear": lambda rho: quadratic_invariant(rho, "linear"),
    "f2_covariance": lambda rho: quadratic_invariant(rho, "covariance"),
    "d_measure": d_measure,
    "concurrence_wootters": concurrence_wootters,
    "concurrence_variant": concurrence_variant,
    "kyfan_c": lambda rho: kyfan_norm(correlation_block(rho)),
    "verdict": lambda rho: VERDICT_CODE.get(classify(rho).status, 0.0),
}

QUANTITY_ALIASES = {"C": "concurrence_variant", "D": "d_measure"}

FAMILY_AXES = {
    "werner": ("x",),
    "schmidt": ("x", "alpha"),
    "standard_form": ("d1", "d2", "d3"),
}

# (low, high, slack): slack covers rounded endpoints like 1.5708 for pi/2
# on axes whose state builder tolerates them.
AXIS_DOMAINS = {
    "x": (0.0, 1.0, 0.0),
    "alpha": (0.0, np.pi / 2, 1e-3),
    "d1": (-1.0, 1.0, 0.0),
    "d2": (-1.0, 1.0, 0.0),
    "d3": (-1.0, 1.0, 0.0),
}


@dataclass(frozen=True)
class AxisSpec:
    """Inclusive linear range start..stop sampled at ``count`` points."""

    name: str
    start: float
    stop: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepGrid:
    """A family, its axis ranges, and the quantities to evaluate."""

    family: str
    axes: tuple
    quantities: tuple

    def __post_init__(self):
        if self.family not in FAMILY_AXES:
            raise ConfigurationError(
                f"unknown family {self.family!r}; expected one of {sorted(FAMILY_AXES)}"
            )
        expected = FAMILY_AXES[self.family]
        names = tuple(a.name for a in self.axes)
        if names != expected:
            raise ConfigurationError(
                f"family {self.family!r} requires axes {expected}, got {names}"
            )
        for axis in self.axes:
            if axis.count < 2:
                raise ConfigurationError(
                    f"axis {axis.name!r} needs at least 2 points, got {axis.count}"
                )
            lo, hi, slack = AXIS_DOMAINS[axis.name]
            lo, hi = lo - slack, hi + slack
            if not (lo <= axis.start <= hi and lo <= axis.stop <= hi):
                raise DomainError(
                    f"axis {axis.name!r} range [{axis.start}, {axis.stop}] "
                    f"outside domain [{lo:.6g}, {hi:.6g}]"
                )
        object.__setattr__(self, "quantities", resolve_quantities(self.quantities))


def resolve_quantities(names) -> tuple:
    resolved = []
    for name in names:
        name = QUANTITY_ALIASES.get(name, name)
        if name not in QUANTITIES:
            raise ConfigurationError(
                f"unknown quantity {name!r}; expected one of "
                f"{sorted(QUANTITIES) + sorted(QUANTITY_ALIASES)}"
            )
        resolved.append(name)
    return tuple(resolved)


def build_state(family: str, params: dict) -> DensityOperator:
    """Construct a family member from named axis values."""
    if family == "werner":
        return werner(params["x"])
    if family == "schmidt":
        return schmidt_mix(params["x"], params["alpha"])
    if family == "standard_form":
        return standard_form_state((params["d1"], params["d2"], params["d3"]))
    raise ConfigurationError(f"unknown family {family!r}")


@dataclass(frozen=True)
class SweepTable:
    """Column names plus a dense float row block."""

    columns: tuple
    rows: np.ndarray


def _thread_count() -> int:
    raw = os.environ.get("IOVT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def grid_sweep(grid: SweepGrid) -> SweepTable:
    """Evaluate every requested quantity at every grid point.

    Rows are ordered lexicographically over the axes (first axis slowest).
    """
    axis_values = [axis.values() for axis in grid.axes]
    names = [axis.name for axis in grid.axes]
    points = list(product(*axis_values))
    funcs = [QUANTITIES[q] for q in grid.quantities]

    def evaluate(point):
        rho = build_state(grid.family, dict(zip(names, point)))
        return [float(v) for v in point] + [float(f(rho)) for f in funcs]

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(evaluate, points))
    else:
        rows = [evaluate(p) for p in points]
    columns = tuple(names) + tuple(grid.quantities)
    return SweepTable(columns=columns, rows=np.array(rows, dtype=float))


def wedge_field(grid: SweepGrid, f: str, g: str, table: SweepTable | None = None) -> SweepTable:
    """Central-difference wedge df/dx * dg/dy - df/dy * dg/dx on a 2-axis grid.

    Boundary points are omitted.  The ``seam`` column flags rows whose
    five-point stencil straddles an exact-zero clamp boundary of f or g
    (relevant for max(0, .) quantities); wedge values there are reported
    as computed.  An already-evaluated ``table`` holding both quantities
    on the same grid may be passed to skip re-evaluation.
    """
    if len(grid.axes) != 2:
        raise ConfigurationError(f"wedge field needs exactly 2 axes, got {len(grid.axes)}")
    for axis in grid.axes:
        if axis.count < 3:
            raise ResolutionError(
                f"axis {axis.name!r} needs at least 3 points for central "
                f"differences, got {axis.count}"
            )
    fname, gname = resolve_quantities((f, g))
    if table is None:
        eval_grid = SweepGrid(
            family=grid.family, axes=grid.axes, quantities=(fname, gname)
        )
        table = grid_sweep(eval_grid)
    for name in (fname, gname):
        if name not in table.columns:
            raise ConfigurationError(f"supplied table lacks quantity {name!r}")
    n1, n2 = grid.axes[0].count, grid.axes[1].count
    fv = table.rows[:, table.columns.index(fname)].reshape(n1, n2)
    gv = table.rows[:, table.columns.index(gname)].reshape(n1, n2)
    x1 = grid.axes[0].values()
    x2 = grid.axes[1].values()
    h1 = x1[1] - x1[0]
    h2 = x2[1] - x2[0]
    df1 = (fv[2:, 1:-1] - fv[:-2, 1:-1]) / (2.0 * h1)
    df2 = (fv[1:-1, 2:] - fv[1:-1, :-2]) / (2.0 * h2)
    dg1 = (gv[2:, 1:-1] - gv[:-2, 1:-1]) / (2.0 * h1)
    dg2 = (gv[1:-1, 2:] - gv[1:-1, :-2]) / (2.0 * h2)
    wedge = df1 * dg2 - df2 * dg1
    seam = np.zeros_like(wedge, dtype=bool)
    for v in (fv, gv):
        stencil = np.stack(
            [v[1:-1, 1:-1], v[2:, 1:-1], v[:-2, 1:-1], v[1:-1, 2:], v[1:-1, :-2]]
        )
        seam |= (stencil.min(axis=0) == 0.0) & (stencil.max(axis=0) > 0.0)
    rows = []
    for i in range(1, n1 - 1):
        for j in range(1, n2 - 1):
            rows.append(
                [x1[i], x2[j], wedge[i - 1, j - 1], 1.0 if seam[i - 1, j - 1] else 0.0]
            )
    columns = (grid.axes[0].name, grid.axes[1].name, "wedge", "seam")
    return SweepTable(columns=columns, rows=np.array(rows, dtype=float))


def format_float(v: float) -> str:
    return f"{v:.17g}"


def write_csv(table: SweepTable, path) -> None:
    """CSV with a header row, 17-significant-digit floats, LF endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(table.columns) + "\n")
        for row in table.rows:
            fh.write(",".join(format_float(v) for v in row) + "\n")


def _color(t: float) -> str:
    # Linear two-segment map: blue -> white -> red over [0, 1].
    t = min(1.0, max(0.0, t))
    if t < 0.5:
        u = t / 0.5
        r, g, b = int(255 * u), int(255 * u), 255
    else:
        u = (t - 0.5) / 0.5
        r, g, b = 255, int(255 * (1 - u)), int(255 * (1 - u))
    return f"#{r:02x}{g:02x}{b:02x}"


def write_svg(table: SweepTable, path, quantity: str | None = None) -> None:
    """Minimal SVG rendering of a sweep table.

    Two leading axis columns produce a heatmap, one produces a line plot;
    the value range is annotated.  Rendering is presentation plumbing,
    not a stable format.
    """
    n_axes = sum(1 for c in table.columns if c in AXIS_DOMAINS or c == "alpha")
    n_axes = max(1, min(2, n_axes))
    qcols = [c for c in table.columns[n_axes:] if c != "seam"]
    if quantity is None:
        quantity = qcols[0]
    col = table.columns.index(quantity)
    vals = table.rows[:, col]
    vmin, vmax = float(vals.min()), float(vals.max())
    span = (vmax - vmin) or 1.0
    width, height, margin = 640, 480, 40
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if n_axes == 2:
        a1 = np.unique(table.rows[:, 0])
        a2 = np.unique(table.rows[:, 1])
        cw = (width - 2 * margin) / len(a1)
        ch = (height - 2 * margin) / len(a2)
        i1 = np.searchsorted(a1, table.rows[:, 0])
        i2 = np.searchsorted(a2, table.rows[:, 1])
        for k in range(table.rows.shape[0]):
            x = margin + i1[k] * cw
            y = height - margin - (i2[k] + 1) * ch
            t = (vals[k] - vmin) / span
            parts.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw + 0.5:.2f}" '
                f'height="{ch + 0.5:.2f}" fill="{_color(t)}"/>'
            )
    else:
        xs = table.rows[:, 0]
        xmin, xmax = float(xs.min()), float(xs.max())
        xspan = (xmax - xmin) or 1.0
        pts = []
        for k in range(table.rows.shape[0]):
            px = margin + (xs[k] - xmin) / xspan * (width - 2 * margin)
            py = height - margin - (vals[k] - vmin) / span * (height - 2 * margin)
            pts.append(f"{px:.2f},{py:.2f}")
        parts.append(
            f'<polyline points="{" ".join(pts)}" fill="none" stroke="#c00" stroke-width="1.5"/>'
        )
    parts.append(
        f'<text x="{margin}" y="20" font-size="13" font-family="monospace">'
        f"{quantity}: min={format_float(vmin)} max={format_float(vmax)}</text>"
    )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def default_figure_grid(family: str = "schmidt", count: int = 101) -> SweepGrid:
    """Desk-scale default grids used by the figure-reproduction script."""
    if family == "werner":
        return SweepGrid(
            family="werner",
            axes=(AxisSpec("x", 0.0, 1.0, 201),),
            quantities=("concurrence_wootters", "purity", "tr_rho_rhotilde"),
        )
    return SweepGrid(
        family="schmidt",
        axes=(
            AxisSpec("x", 0.0, 1.0, count),
            AxisSpec("alpha", 0.0, np.pi / 2, count),
        ),
        quantities=("concurrence_variant", "d_measure"),
    )
