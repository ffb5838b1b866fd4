"""Acceptance checks: closed-form anchors and statistical property suites.

Each criterion is a standalone function returning (passed, detail); the
CLI ``selftest`` verb and the pytest acceptance module both run this
list.  Random suites use fixed seeds so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import generate_basis
from .entanglement import (
    SEPARABLE,
    classify,
    concurrence_variant,
    concurrence_wootters,
    octahedron_check,
    ppt_check,
    tr_rho_rhotilde,
    werner_ltilde_signature,
)
from .states import (
    DensityOperator,
    bloch_decode,
    fano_compose,
    fano_decompose,
    maximally_mixed,
    partial_trace,
    purity,
    random_density,
    random_pure,
    random_unitary,
    schmidt_mix,
    standard_form_state,
    werner,
)
from .sweep import AxisSpec, SweepGrid, grid_sweep, wedge_field
from .tensors import (
    defining_representation,
    product_representation,
    quadratic_invariant,
    split_sym_antisym,
    tensor_coefficients,
)

SEED = 20260808

TETRAHEDRON_VERTICES = np.array(
    [[1.0, -1.0, 1.0], [-1.0, 1.0, 1.0], [1.0, 1.0, -1.0], [-1.0, -1.0, -1.0]]
)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


# -- frozen closed forms -------------------------------------------------------

def werner_l_expected(x: float) -> np.ndarray:
    """6x6 symmetric coefficient matrix of the Werner family."""
    l = np.eye(6)
    l[0, 3] = l[3, 0] = x
    l[1, 4] = l[4, 1] = -x
    l[2, 5] = l[5, 2] = x
    return l


def f2_linear_closed(x: float) -> float:
    return 6.0 * (x * x + 1.0)


def f2_covariance_closed(x: float, a: float) -> float:
    return float(
        2.0 * np.cos(4 * a) * x**4
        + 0.5 * np.cos(8 * a) * x**4
        + 1.5 * x**4
        - 2.0 * np.cos(4 * a) * x**3
        - 2.0 * x**3
        - 2.0 * np.cos(4 * a) * x**2
        + 4.0 * x**2
        + 6.0
    )


def concurrence_werner_closed(x: float) -> float:
    return max(0.0, (3.0 * x - 1.0) / 2.0)


def concurrence_schmidt_closed(x: float, a: float) -> float:
    return max(0.0, x * np.sin(2.0 * a) - (1.0 - x) / 2.0)


def concurrence_variant_closed(x: float, a: float) -> float:
    inner = -(x**2) * (2.0 * np.cos(4 * a) * x**2 + (x - 2.0) * x - 1.0) * np.sin(2 * a) ** 2
    return max(-(x**2) / 8.0 + x / 4.0 + 0.5 * np.sqrt(max(inner, 0.0)) - 1.0 / 8.0, 0.0)


def sl_invariant_rhs(state) -> float:
    """(1 - sum m^2 - sum n^2 + sum C^2) / 4 from the Fano coefficients."""
    f = fano_decompose(state)
    return float(
        (1.0 - f.mvec @ f.mvec - f.nvec @ f.nvec + np.sum(f.C * f.C)) / 4.0
    )


def _grid(count: int = 21):
    return np.linspace(0.0, 1.0, count), np.linspace(0.0, np.pi / 2.0, count)


# -- criteria ------------------------------------------------------------------

def check_werner_threshold() -> tuple[bool, str]:
    worst_kf = 0.0
    ok = True
    for x in np.linspace(0.0, 1.0, 101):
        verdict = classify(werner(float(x)))
        want_sep = x <= 1.0 / 3.0 + 1e-9
        ok &= (verdict.status == SEPARABLE) == want_sep
        worst_kf = max(worst_kf, abs(verdict.witnesses["c_kyfan"] - 3.0 * x))
    ok &= worst_kf <= 1e-10
    return ok, f"threshold exact on 101 points; max |kyfan - 3x| = {worst_kf:.2e}"


def check_werner_l_matrix() -> tuple[bool, str]:
    rep = product_representation(2)
    worst = 0.0
    for x in (0.2, 0.7):
        l, _ = split_sym_antisym(tensor_coefficients(werner(x), rep, order=2))
        worst = max(worst, float(np.max(np.abs(l - werner_l_expected(x)))))
    return worst <= 1e-12, f"max entrywise deviation {worst:.2e} (tol 1e-12)"


def check_ltilde_spectrum() -> tuple[bool, str]:
    worst = 0.0
    for x in (0.0, 1.0 / 3.0, 0.5, 1.0):
        sig = werner_ltilde_signature(x)
        expected = np.sort(np.array([1.0 - 3.0 * x] * 3 + [1.0 - x] * 3))
        worst = max(worst, float(np.max(np.abs(sig.eigenvalues - expected))))
    return worst <= 1e-10, f"max eigenvalue deviation {worst:.2e} (tol 1e-10)"


def check_f2_linear_closed_form() -> tuple[bool, str]:
    xs, alphas = _grid()
    worst = 0.0
    for x in xs:
        worst = max(
            worst, abs(quadratic_invariant(werner(float(x)), "linear") - f2_linear_closed(x))
        )
    for x in xs:
        for a in alphas:
            v = quadratic_invariant(schmidt_mix(float(x), float(a)), "linear")
            worst = max(worst, abs(v - f2_linear_closed(x)))
    return worst <= 1e-10, f"max deviation from 6(x^2+1): {worst:.2e} (tol 1e-10)"


def check_f2_covariance_closed_form() -> tuple[bool, str]:
    xs, alphas = _grid()
    worst = 0.0
    for x in xs:
        for a in alphas:
            v = quadratic_invariant(schmidt_mix(float(x), float(a)), "covariance")
            worst = max(worst, abs(v - f2_covariance_closed(x, a)))
    bell_v = quadratic_invariant(schmidt_mix(1.0, np.pi / 4.0), "covariance")
    prod_v = quadratic_invariant(schmidt_mix(1.0, 0.0), "covariance")
    spots = max(abs(bell_v - 12.0), abs(prod_v - 8.0))
    ok = worst <= 1e-9 and spots <= 1e-9
    return ok, f"max grid deviation {worst:.2e}; spot deviations {spots:.2e} (tol 1e-9)"


def check_concurrence_wootters() -> tuple[bool, str]:
    xs, alphas = _grid()
    worst = 0.0
    for x in xs:
        worst = max(
            worst, abs(concurrence_wootters(werner(float(x))) - concurrence_werner_closed(x))
        )
    for x in xs:
        for a in alphas:
            v = concurrence_wootters(schmidt_mix(float(x), float(a)))
            worst = max(worst, abs(v - concurrence_schmidt_closed(x, a)))
    return worst <= 1e-9, f"max deviation from closed forms {worst:.2e} (tol 1e-9)"


def check_concurrence_variant() -> tuple[bool, str]:
    xs, alphas = _grid()
    worst = 0.0
    for x in xs:
        for a in alphas:
            v = concurrence_variant(schmidt_mix(float(x), float(a)))
            worst = max(worst, abs(v - concurrence_variant_closed(x, a)))
    return worst <= 1e-9, f"max deviation from closed form {worst:.2e} (tol 1e-9)"


def check_identity_suite() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED)
    rep = product_representation(2)
    worst_sl = worst_tangle = worst_fano = 0.0
    for _ in range(1000):
        rho = random_density(4, rng=rng)
        trt = tr_rho_rhotilde(rho)
        worst_sl = max(worst_sl, abs(4.0 * trt - 4.0 * sl_invariant_rhs(rho)))
        l, om = split_sym_antisym(tensor_coefficients(rho, rep, order=2))
        sl, so = float(np.sum(l * l)), float(np.sum(om * om))
        worst_tangle = max(worst_tangle, abs((sl + so) / 8.0 - 0.5 - purity(rho)))
        worst_tangle = max(worst_tangle, abs((sl - so) / 8.0 - 0.5 - trt))
        back = fano_compose(fano_decompose(rho))
        worst_fano = max(worst_fano, float(np.max(np.abs(back.matrix - rho.matrix))))
    worst = max(worst_sl, worst_tangle, worst_fano)
    ok = worst <= 1e-10
    return ok, (
        f"1000 states: flip-overlap id {worst_sl:.2e}, purity/overlap ids "
        f"{worst_tangle:.2e}, Fano round trip {worst_fano:.2e} (tol 1e-10)"
    )


def check_ppt_octahedron_agreement() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 9)
    tested = 0
    for _ in range(1000):
        d = rng.dirichlet((1.0, 1.0, 1.0, 1.0)) @ TETRAHEDRON_VERTICES
        octa = octahedron_check(d)
        if abs(octa.l1 - 1.0) < 1e-9:
            continue
        tested += 1
        ppt = ppt_check(standard_form_state(d))
        if octa.separable != ppt.separable:
            return False, f"disagreement at d={tuple(d)}"
    return True, f"exact agreement on {tested} of 1000 tetrahedron points"


def check_local_unitary_invariance() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 10)
    quantities = (
        lambda r: quadratic_invariant(r, "linear"),
        lambda r: quadratic_invariant(r, "covariance"),
        concurrence_wootters,
        concurrence_variant,
    )
    worst = 0.0
    for _ in range(100):
        rho = random_density(4, rng=rng)
        u = np.kron(random_unitary(2, rng=rng), random_unitary(2, rng=rng))
        rotated = DensityOperator.from_matrix(u @ rho.matrix @ u.conj().T)
        for q in quantities:
            worst = max(worst, abs(q(rho) - q(rotated)))
    return worst <= 1e-9, f"max |q(rho) - q(U rho U^H)| = {worst:.2e} (tol 1e-9)"


def check_bloch_norm_and_omega() -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 11)
    details = []
    ok = True
    for n in (2, 3, 4):
        bound = np.sqrt(n * (n - 1) / 2.0)
        basis = generate_basis(n)
        worst_pure = 0.0
        for _ in range(500):
            m = bloch_decode(random_pure(n, rng=rng)).m
            worst_pure = max(worst_pure, abs(float(np.linalg.norm(m)) - bound))
        ok &= worst_pure <= 1e-10
        min_margin = np.inf
        worst_id = 0.0
        omega_matches = True
        rep = defining_representation(n)
        for _ in range(500):
            rho = random_density(n, rank=int(rng.integers(2, n + 1)), rng=rng)
            m = bloch_decode(rho).m
            min_margin = min(min_margin, bound - float(np.linalg.norm(m)))
            _, om = split_sym_antisym(tensor_coefficients(rho, rep, order=2))
            predicted = (2.0 / n) * np.einsum("jkl,l->jk", basis.c, m)
            worst_id = max(worst_id, float(np.max(np.abs(om - predicted))))
            omega_matches &= (float(np.max(np.abs(om))) > 1e-9) == (
                float(np.linalg.norm(m)) > 1e-9
            )
        _, om_star = split_sym_antisym(
            tensor_coefficients(maximally_mixed(n), rep, order=2)
        )
        ok &= float(np.max(np.abs(om_star))) <= 1e-14
        ok &= min_margin > 1e-6 and worst_id <= 1e-10 and omega_matches
        # Bipartite reading: product-representation Omega vanishes exactly
        # when both reductions are maximally mixed.
        prep = product_representation(n)
        phi = np.zeros(n * n, dtype=complex)
        phi[:: n + 1] = 1.0 / np.sqrt(n)
        iso = np.outer(phi, phi.conj())
        for x in (0.0, 0.3, 0.7, 1.0):
            mixed = x * iso + (1.0 - x) * np.eye(n * n, dtype=complex) / (n * n)
            _, om = split_sym_antisym(
                tensor_coefficients(DensityOperator.from_matrix(mixed), prep, order=2)
            )
            ok &= float(np.max(np.abs(om))) <= 1e-12
        for _ in range(500):
            rho = random_density(n * n, rng=rng)
            _, om = split_sym_antisym(tensor_coefficients(rho, prep, order=2))
            na = float(np.linalg.norm(bloch_decode(partial_trace(rho, "A")).m))
            nb = float(np.linalg.norm(bloch_decode(partial_trace(rho, "B")).m))
            ok &= (float(np.max(np.abs(om))) > 1e-9) == (max(na, nb) > 1e-9)
        details.append(
            f"n={n}: pure-norm dev {worst_pure:.2e}, mixed margin {min_margin:.3f}, "
            f"omega id {worst_id:.2e}"
        )
    return ok, "; ".join(details)


def check_wedge_regions() -> tuple[bool, str]:
    count = 101
    grid = SweepGrid(
        family="schmidt",
        axes=(AxisSpec("x", 0.0, 1.0, count), AxisSpec("alpha", 0.0, np.pi / 2.0, count)),
        quantities=("concurrence_variant", "d_measure"),
    )
    table = grid_sweep(grid)
    wedge_table = wedge_field(grid, "concurrence_variant", "d_measure", table=table)
    c = table.rows[:, 2].reshape(count, count)
    wedge = wedge_table.rows[:, 2].reshape(count - 2, count - 2)
    zero_stencil = (
        (c[1:-1, 1:-1] == 0.0)
        & (c[2:, 1:-1] == 0.0)
        & (c[:-2, 1:-1] == 0.0)
        & (c[1:-1, 2:] == 0.0)
        & (c[1:-1, :-2] == 0.0)
    )
    if not zero_stencil.any():
        return False, "no interior region with vanishing concurrence found"
    zero_max = float(np.max(np.abs(wedge[zero_stencil])))
    global_max = float(np.max(np.abs(wedge)))
    ok = zero_max < 1e-6 and global_max > 1e-3
    return ok, (
        f"zero-region max |wedge| = {zero_max:.2e} over {int(zero_stencil.sum())} "
        f"points (tol 1e-6); global max |wedge| = {global_max:.3e} (> 1e-3)"
    )


CRITERIA = (
    (1, "werner-separability-threshold", check_werner_threshold),
    (2, "werner-symmetric-coefficients", check_werner_l_matrix),
    (3, "werner-signflip-spectrum", check_ltilde_spectrum),
    (4, "quadratic-invariant-linear", check_f2_linear_closed_form),
    (5, "quadratic-invariant-covariance", check_f2_covariance_closed_form),
    (6, "concurrence-wootters", check_concurrence_wootters),
    (7, "concurrence-variant", check_concurrence_variant),
    (8, "two-qubit-identity-suite", check_identity_suite),
    (9, "ppt-octahedron-agreement", check_ppt_octahedron_agreement),
    (10, "local-unitary-invariance", check_local_unitary_invariance),
    (11, "bloch-norm-and-antisymmetric-part", check_bloch_norm_and_omega),
    (12, "wedge-field-regions", check_wedge_regions),
)


def run_criterion(number: int) -> CriterionResult:
    for num, name, func in CRITERIA:
        if num == number:
            passed, detail = func()
            return CriterionResult(number=num, name=name, passed=passed, detail=detail)
    raise KeyError(f"no acceptance criterion numbered {number}")


def run_all(numbers=None) -> list[CriterionResult]:
    selected = set(numbers) if numbers else None
    results = []
    for num, name, func in CRITERIA:
        if selected is not None and num not in selected:
            continue
        passed, detail = func()
        results.append(CriterionResult(number=num, name=name, passed=passed, detail=detail))
    return results
