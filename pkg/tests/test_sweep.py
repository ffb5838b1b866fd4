"""Grid sweeps, wedge fields, CSV/SVG emission, determinism."""

import numpy as np
import pytest

from entmoment.errors import ConfigurationError, DomainError, ResolutionError
from entmoment.states import schmidt_mix
from entmoment.entanglement import tr_rho_rhotilde
from entmoment.sweep import (
    AxisSpec,
    SweepGrid,
    format_float,
    grid_sweep,
    wedge_field,
    write_csv,
    write_svg,
)


def werner_grid(count=3, quantities=("concurrence_wootters",)):
    return SweepGrid(
        family="werner", axes=(AxisSpec("x", 0.0, 1.0, count),), quantities=quantities
    )


def schmidt_grid(nx, na, quantities, x=(0.0, 1.0), alpha=(0.0, np.pi / 2)):
    return SweepGrid(
        family="schmidt",
        axes=(AxisSpec("x", x[0], x[1], nx), AxisSpec("alpha", alpha[0], alpha[1], na)),
        quantities=quantities,
    )


def test_werner_concurrence_column():
    table = grid_sweep(werner_grid())
    assert table.columns == ("x", "concurrence_wootters")
    assert np.allclose(table.rows[:, 0], [0.0, 0.5, 1.0])
    assert np.allclose(table.rows[:, 1], [0.0, 0.25, 1.0], atol=1e-12)


def test_werner_purity_endpoint():
    table = grid_sweep(werner_grid(quantities=("purity",)))
    assert table.rows[-1, 1] == pytest.approx(1.0, abs=1e-12)


def test_schmidt_f2_linear_constant_in_alpha():
    table = grid_sweep(schmidt_grid(5, 7, ("f2_linear",)))
    values = table.rows[:, 2].reshape(5, 7)
    xs = np.linspace(0, 1, 5)
    for i, x in enumerate(xs):
        assert np.allclose(values[i], 6 * (x * x + 1), atol=1e-12)


def test_row_order_is_lexicographic():
    table = grid_sweep(schmidt_grid(3, 4, ("purity",)))
    xs = table.rows[:, 0]
    assert np.all(np.diff(xs) >= 0)
    alphas = table.rows[:4, 1]
    assert np.all(np.diff(alphas) > 0)


def test_quantity_aliases():
    grid = SweepGrid(
        family="werner", axes=(AxisSpec("x", 0.0, 1.0, 2),), quantities=("D", "C")
    )
    assert grid.quantities == ("d_measure", "concurrence_variant")


def test_unknown_quantity_rejected():
    with pytest.raises(ConfigurationError):
        werner_grid(quantities=("totally_bogus",))


def test_axis_validation():
    with pytest.raises(ConfigurationError):
        SweepGrid(family="werner", axes=(AxisSpec("x", 0, 1, 1),), quantities=("purity",))
    with pytest.raises(DomainError):
        SweepGrid(family="werner", axes=(AxisSpec("x", 0, 1.5, 3),), quantities=("purity",))
    with pytest.raises(ConfigurationError):
        SweepGrid(family="werner", axes=(AxisSpec("alpha", 0, 1, 3),), quantities=("purity",))
    with pytest.raises(ConfigurationError):
        SweepGrid(family="nonsense", axes=(AxisSpec("x", 0, 1, 3),), quantities=("purity",))


def test_verdict_codes_on_werner():
    table = grid_sweep(
        SweepGrid(
            family="werner", axes=(AxisSpec("x", 0.0, 1.0, 5),), quantities=("verdict",)
        )
    )
    assert np.allclose(table.rows[:, 1], [1.0, 1.0, -1.0, -1.0, -1.0])


def test_wedge_of_identical_quantities_vanishes():
    grid = schmidt_grid(7, 7, ("d_measure",))
    table = wedge_field(grid, "d_measure", "d_measure")
    assert table.columns == ("x", "alpha", "wedge", "seam")
    assert table.rows.shape == (25, 4)
    assert np.max(np.abs(table.rows[:, 2])) == 0.0


def test_wedge_requires_resolution():
    grid = schmidt_grid(7, 7, ("d_measure",))
    bad = SweepGrid(
        family="schmidt",
        axes=(AxisSpec("x", 0, 1, 2), AxisSpec("alpha", 0, 1.5, 7)),
        quantities=("d_measure",),
    )
    with pytest.raises(ResolutionError):
        wedge_field(bad, "d_measure", "purity")
    with pytest.raises(ConfigurationError):
        wedge_field(werner_grid(5), "d_measure", "purity")
    with pytest.raises(ConfigurationError):
        wedge_field(grid, "d_measure", "bogus")


def _analytic_wedge(x, a):
    c4, c8 = np.cos(4 * a), np.cos(8 * a)
    s4, s8 = np.sin(4 * a), np.sin(8 * a)
    fx = 8 * c4 * x**3 + 2 * c8 * x**3 + 6 * x**3 - 6 * c4 * x**2 - 6 * x**2 - 4 * c4 * x + 8 * x
    fa = -8 * s4 * x**4 - 4 * s8 * x**4 + 8 * s4 * x**3 + 8 * s4 * x**2
    gx = x * (1 - 2 * c4) / 2
    ga = 2 * x**2 * s4
    return fx * ga - fa * gx


def test_flip_overlap_closed_form_on_family():
    # Analytic anchor used by the convergence test below.
    for x in (0.2, 0.8):
        for a in (0.3, 1.1):
            expected = (1 + x * x - 2 * x * x * np.cos(4 * a)) / 4
            assert tr_rho_rhotilde(schmidt_mix(x, a)) == pytest.approx(expected, abs=1e-12)


def test_central_difference_second_order():
    quantities = ("f2_covariance", "tr_rho_rhotilde")
    span = dict(x=(0.1, 0.9), alpha=(0.1, 1.4))

    def wedge_matrix(count):
        grid = schmidt_grid(count, count, quantities, x=span["x"], alpha=span["alpha"])
        table = wedge_field(grid, *quantities)
        return table.rows[:, 2].reshape(count - 2, count - 2)

    coarse = wedge_matrix(11)
    fine = wedge_matrix(21)
    xs = np.linspace(*span["x"], 11)
    alphas = np.linspace(*span["alpha"], 11)
    exact = np.array(
        [[_analytic_wedge(x, a) for a in alphas[1:-1]] for x in xs[1:-1]]
    )
    # Halving h at the shared points shrinks the error by about h^2 -> 4x.
    fine_at_coarse = fine[1::2, 1::2]
    err_coarse = np.max(np.abs(coarse - exact))
    err_fine = np.max(np.abs(fine_at_coarse - exact))
    assert err_coarse / err_fine >= 3.5


def test_seam_flag_marks_clamp_boundary():
    grid = schmidt_grid(21, 21, ("concurrence_wootters", "purity"))
    table = wedge_field(grid, "concurrence_wootters", "purity")
    seam = table.rows[:, 3]
    assert set(np.unique(seam)) <= {0.0, 1.0}
    assert seam.any()  # the x sin(2a) - (1-x)/2 = 0 seam crosses this grid
    assert not seam.all()


def test_determinism_across_runs_and_threads(monkeypatch):
    grid = schmidt_grid(6, 6, ("d_measure", "concurrence_variant"))
    first = grid_sweep(grid)
    second = grid_sweep(grid)
    assert np.array_equal(first.rows, second.rows)
    monkeypatch.setenv("IOVT_THREADS", "4")
    threaded = grid_sweep(grid)
    assert np.array_equal(first.rows, threaded.rows)
    assert first.columns == threaded.columns


def test_csv_format(tmp_path):
    table = grid_sweep(werner_grid())
    path = tmp_path / "sweep.csv"
    write_csv(table, path)
    raw = path.read_bytes().decode()
    assert "\r" not in raw
    lines = raw.strip().split("\n")
    assert lines[0] == "x,concurrence_wootters"
    assert len(lines) == 4
    # 17 significant digits round-trip exactly
    for line, row in zip(lines[1:], table.rows):
        for field, value in zip(line.split(","), row):
            assert float(field) == value


def test_format_float_round_trip():
    rng = np.random.default_rng(51)
    for v in rng.standard_normal(50):
        assert float(format_float(v)) == v


def test_svg_emission(tmp_path):
    table = grid_sweep(schmidt_grid(5, 5, ("d_measure",)))
    path = tmp_path / "map.svg"
    write_svg(table, path)
    text = path.read_text()
    assert text.startswith("<svg")
    assert "min=" in text and "max=" in text
    line_table = grid_sweep(werner_grid(9, ("purity",)))
    path2 = tmp_path / "line.svg"
    write_svg(line_table, path2)
    assert "polyline" in path2.read_text()
