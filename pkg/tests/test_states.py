"""Density operators, Bloch/Fano codecs, partial operations, families."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entmoment.errors import (
    DimensionError,
    DomainError,
    FormatError,
    NormalizationError,
    PositivityError,
    ShapeError,
    SymmetryError,
)
from entmoment.states import (
    DensityOperator,
    bell_state,
    bloch_decode,
    bloch_encode,
    convex_combine,
    fano_compose,
    fano_decompose,
    load_state,
    maximally_mixed,
    partial_trace,
    partial_transpose,
    purity,
    random_density,
    random_pure,
    save_state,
    schmidt_mix,
    spin_flip,
    standard_form_state,
    state_from_dict,
    werner,
)
from entmoment.basis import generate_basis


# -- validation ---------------------------------------------------------------

def test_invariant_violations_are_named():
    with pytest.raises(SymmetryError):
        DensityOperator.from_matrix(np.array([[0.5, 0.1], [0.4, 0.5]], dtype=complex))
    with pytest.raises(NormalizationError):
        DensityOperator.from_matrix(np.eye(2, dtype=complex))
    with pytest.raises(PositivityError) as err:
        DensityOperator.from_matrix(np.diag([1.5, -0.5]).astype(complex))
    assert err.value.min_eigenvalue == pytest.approx(-0.5, abs=1e-12)


def test_boundary_positivity_accepted():
    DensityOperator.from_matrix(np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex))
    DensityOperator.from_matrix(
        np.diag([1.0 + 5e-11, -5e-11, 0.0, 0.0]).astype(complex)
    )


# -- Bloch codec --------------------------------------------------------------

def test_zero_bloch_vector_is_maximally_mixed():
    m = bloch_encode(2, np.zeros(3))
    assert np.allclose(m, np.eye(2) / 2)


def test_ground_state_bloch_vector():
    rho = DensityOperator.from_matrix(np.diag([1.0, 0.0]).astype(complex))
    vec = bloch_decode(rho)
    assert np.allclose(vec.m, [0.0, 0.0, 1.0], atol=1e-14)
    assert abs(np.linalg.norm(vec.m) - 1.0) < 1e-14


def test_random_pure_qutrit_norm():
    rng = np.random.default_rng(11)
    for _ in range(25):
        m = bloch_decode(random_pure(3, rng=rng)).m
        assert abs(np.linalg.norm(m) - np.sqrt(3.0)) < 1e-10


def test_purity_from_bloch_norm():
    rng = np.random.default_rng(12)
    for n in (2, 3, 4):
        bound = np.sqrt(n * (n - 1) / 2)
        for _ in range(20):
            rho = random_density(n, rng=rng)
            m = bloch_decode(rho).m
            assert purity(rho) == pytest.approx(
                (n + 2 * float(m @ m)) / n**2, abs=1e-12
            )
            assert np.linalg.norm(m) <= bound + 1e-10


def test_bloch_encode_shape_error():
    with pytest.raises(ShapeError):
        bloch_encode(2, np.zeros(8))


def test_bloch_encode_does_not_enforce_positivity():
    m = bloch_encode(2, np.array([2.0, 0.0, 0.0]))  # outside the Bloch ball
    assert abs(np.trace(m) - 1.0) < 1e-15
    assert np.allclose(m, m.conj().T)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-0.57, 0.57), min_size=3, max_size=3))
def test_bloch_round_trip_inside_ball(coords):
    m = np.array(coords)
    rho = DensityOperator.from_matrix(bloch_encode(2, m))
    assert np.allclose(bloch_decode(rho).m, m, atol=1e-12)


# -- Fano codec ---------------------------------------------------------------

def test_bell_fano_coefficients():
    f = fano_decompose(bell_state())
    assert np.allclose(f.nvec, 0.0, atol=1e-14)
    assert np.allclose(f.mvec, 0.0, atol=1e-14)
    assert np.allclose(f.C, np.diag([1.0, -1.0, 1.0]), atol=1e-14)


def test_maximally_mixed_fano_vanishes():
    f = fano_decompose(maximally_mixed(4))
    assert np.max(np.abs(f.nvec)) < 1e-15
    assert np.max(np.abs(f.mvec)) < 1e-15
    assert np.max(np.abs(f.C)) < 1e-15


@pytest.mark.parametrize("n", [2, 3])
def test_product_state_correlation_factorizes(n):
    rng = np.random.default_rng(13)
    a = random_density(n, rng=rng)
    b = random_density(n, rng=rng)
    rho = DensityOperator.from_matrix(np.kron(a.matrix, b.matrix))
    f = fano_decompose(rho)
    av = bloch_decode(a).m
    bv = bloch_decode(b).m
    assert np.allclose(f.nvec, av, atol=1e-12)
    assert np.allclose(f.mvec, bv, atol=1e-12)
    assert np.allclose(f.C, np.outer(av, bv), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3])
def test_fano_round_trip(n):
    rng = np.random.default_rng(14)
    for _ in range(50):
        rho = random_density(n * n, rng=rng)
        back = fano_compose(fano_decompose(rho))
        assert np.max(np.abs(back.matrix - rho.matrix)) < 1e-12


def test_fano_n2_matches_raw_traces():
    # For qubits the expansion coefficients equal the plain traces.
    rng = np.random.default_rng(15)
    rho = random_density(4, rng=rng)
    f = fano_decompose(rho)
    sigma = generate_basis(2).sigma
    for j in range(3):
        raw = np.trace(rho.matrix @ np.kron(sigma[j + 1], np.eye(2))).real
        assert f.nvec[j] == pytest.approx(raw, abs=1e-13)
        for k in range(3):
            raw = np.trace(rho.matrix @ np.kron(sigma[j + 1], sigma[k + 1])).real
            assert f.C[j, k] == pytest.approx(raw, abs=1e-13)


def test_fano_rejects_non_square_dim():
    with pytest.raises(ShapeError):
        fano_decompose(np.eye(6, dtype=complex) / 6)


# -- partial operations -------------------------------------------------------

def test_partial_trace_bell():
    for side in ("A", "B"):
        red = partial_trace(bell_state(), side)
        assert np.allclose(red.matrix, np.eye(2) / 2, atol=1e-14)


def test_partial_trace_product():
    rng = np.random.default_rng(16)
    a = random_density(2, rng=rng)
    b = random_density(2, rng=rng)
    rho = np.kron(a.matrix, b.matrix)
    assert np.allclose(partial_trace(rho, "A").matrix, a.matrix, atol=1e-14)
    assert np.allclose(partial_trace(rho, "B").matrix, b.matrix, atol=1e-14)


def test_partial_trace_werner_maximally_mixed():
    for x in (0.0, 0.4, 1.0):
        assert np.allclose(partial_trace(werner(x)).matrix, np.eye(2) / 2, atol=1e-14)


def test_spin_flip_fixed_points():
    mm = maximally_mixed(4)
    assert np.allclose(spin_flip(mm).matrix, mm.matrix, atol=1e-15)
    w = werner(0.6)
    assert np.allclose(spin_flip(w).matrix, w.matrix, atol=1e-14)


def test_spin_flip_swaps_computational_extremes():
    p00 = np.zeros((4, 4), dtype=complex)
    p00[0, 0] = 1.0
    p11 = np.zeros((4, 4), dtype=complex)
    p11[3, 3] = 1.0
    assert np.allclose(spin_flip(p00).matrix, p11, atol=1e-15)


def test_spin_flip_dimension_guard():
    with pytest.raises(DimensionError):
        spin_flip(maximally_mixed(9))


def test_partial_transpose_bell_minimum():
    w = np.linalg.eigvalsh(partial_transpose(bell_state()))
    assert w.min() == pytest.approx(-0.5, abs=1e-13)


def test_partial_transpose_product_state_positive():
    rng = np.random.default_rng(17)
    a = random_density(2, rng=rng)
    b = random_density(2, rng=rng)
    w = np.linalg.eigvalsh(partial_transpose(np.kron(a.matrix, b.matrix)))
    assert w.min() > -1e-12


def test_partial_transpose_reflects_standard_form():
    pt = partial_transpose(standard_form_state((1.0, -1.0, 1.0)))
    spec = np.sort(np.linalg.eigvalsh(pt))
    expected = np.sort(
        [(1 - 3) / 4, (1 + 1) / 4, (1 + 1) / 4, (1 + 1) / 4]
    )  # spectrum of d = (1, 1, 1)
    assert np.allclose(spec, expected, atol=1e-13)
    assert spec[0] == pytest.approx(-0.5, abs=1e-13)


def test_partial_transpose_is_hermitian_unit_trace():
    rng = np.random.default_rng(18)
    rho = random_density(9, rng=rng)
    pt = partial_transpose(rho)
    assert np.allclose(pt, pt.conj().T, atol=1e-14)
    assert np.trace(pt).real == pytest.approx(1.0, abs=1e-13)


# -- families -----------------------------------------------------------------

def test_werner_endpoints():
    assert np.allclose(werner(0.0).matrix, np.eye(4) / 4)
    assert np.allclose(werner(1.0).matrix, bell_state().matrix, atol=1e-15)


def test_schmidt_mix_contains_werner_line():
    assert np.allclose(
        schmidt_mix(1.0, np.pi / 4).matrix, werner(1.0).matrix, atol=1e-15
    )
    assert np.allclose(
        schmidt_mix(0.37, np.pi / 4).matrix, werner(0.37).matrix, atol=1e-15
    )


def test_standard_form_bell_vertex():
    rho = standard_form_state((1.0, -1.0, 1.0))
    assert np.allclose(rho.matrix, bell_state().matrix, atol=1e-15)


def test_standard_form_matches_werner_image():
    for x in (0.2, 0.9):
        assert np.allclose(
            standard_form_state((x, -x, x)).matrix, werner(x).matrix, atol=1e-14
        )


def test_family_domain_errors():
    with pytest.raises(DomainError):
        werner(1.2)
    with pytest.raises(DomainError):
        werner(-0.1)
    with pytest.raises(DomainError):
        schmidt_mix(1.5, 0.3)


def test_standard_form_outside_tetrahedron():
    with pytest.raises(PositivityError) as err:
        standard_form_state((1.0, 1.0, 1.0))
    assert err.value.min_eigenvalue == pytest.approx(-0.5, abs=1e-12)


# -- mixtures -----------------------------------------------------------------

def test_convex_combine_single_term():
    rho = werner(0.5)
    out = convex_combine([(1.0, rho)])
    assert np.allclose(out.matrix, rho.matrix)


def test_convex_combine_recovers_werner():
    out = convex_combine([(0.3, bell_state()), (0.7, maximally_mixed(4))])
    assert np.allclose(out.matrix, werner(0.3).matrix, atol=1e-15)


def test_convex_combine_product_states_correlation():
    rng = np.random.default_rng(19)
    pairs = [(random_pure(2, rng=rng), random_pure(2, rng=rng)) for _ in range(2)]
    rho = convex_combine(
        [(0.5, DensityOperator.from_matrix(np.kron(a.matrix, b.matrix))) for a, b in pairs]
    )
    f = fano_decompose(rho)
    expected = 0.5 * sum(
        np.outer(bloch_decode(a).m, bloch_decode(b).m) for a, b in pairs
    )
    assert np.allclose(f.C, expected, atol=1e-12)


def test_convex_combine_weight_errors():
    rho = maximally_mixed(4)
    with pytest.raises(NormalizationError):
        convex_combine([(0.6, rho), (0.6, rho)])
    with pytest.raises(NormalizationError):
        convex_combine([(-0.2, rho), (1.2, rho)])
    with pytest.raises(ShapeError):
        convex_combine([(0.5, rho), (0.5, maximally_mixed(9))])


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.floats(0.01, 1.0), min_size=2, max_size=4),
    st.integers(min_value=0, max_value=2**31 - 1),
)
def test_convex_combine_always_valid(raw_weights, seed):
    rng = np.random.default_rng(seed)
    weights = np.array(raw_weights) / np.sum(raw_weights)
    states = [random_density(4, rng=rng) for _ in raw_weights]
    out = convex_combine(list(zip(weights, states)))
    assert out.dim == 4  # construction itself re-validates all invariants


# -- state files --------------------------------------------------------------

def test_state_file_round_trip(tmp_path):
    rho = schmidt_mix(0.4, 0.7)
    path = tmp_path / "state.json"
    save_state(rho, path)
    loaded = load_state(path)
    assert np.array_equal(loaded.matrix, rho.matrix)


def test_state_file_structural_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dim": 2}))
    with pytest.raises(FormatError):
        load_state(path)
    with pytest.raises(FormatError):
        state_from_dict({"dim": 2, "matrix": [[1.0, 0.0], [0.0, 0.0]]})
    with pytest.raises(FormatError):
        state_from_dict({"dim": "2", "matrix": []})


def test_state_file_invariant_violation(tmp_path):
    doc = {
        "dim": 2,
        "matrix": [[[0.9, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
    }
    path = tmp_path / "trace.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(NormalizationError):
        load_state(path)
