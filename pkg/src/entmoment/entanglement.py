"""Entanglement monotones and separability criteria for bipartite states.

Necessary criteria flag entanglement when violated, sufficient criteria
certify separability when satisfied; for two qubits the partial-transpose
test decides every state (Peres, PRL 77, 1413 (1996); Horodecki x3, 1996).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, DomainError
from .linalg import hermitian_eigenvalues, psd_sqrt, singular_values
from .states import (
    as_matrix,
    bell_state,
    fano_decompose,
    local_dimension,
    maximally_mixed,
    partial_transpose,
    spin_flip,
    spin_flip_matrix,
    standard_form_state,
)
from .tensors import (
    covariance_coefficients,
    inner_product,
    product_representation,
    split_sym_antisym,
    tensor_coefficients,
)

SEPARABLE = "separable"
ENTANGLED = "entangled"
UNDECIDED = "undecided"

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class SeparabilityVerdict:
    """Outcome of the criterion cascade.

    ``status`` is separable/entangled/undecided; ``decided_by`` names the
    first criterion that settled it; ``witnesses`` records every scalar
    that was evaluated along the way.
    """

    status: str
    decided_by: str | None
    witnesses: dict


class NecessaryResult(NamedTuple):
    passes: bool
    value: float
    bound: float


class SufficientResult(NamedTuple):
    passes: bool
    value: float


class OmegaResult(NamedTuple):
    applicable: bool
    passes: bool


class PptResult(NamedTuple):
    separable: bool
    min_eigenvalue: float


class OctahedronResult(NamedTuple):
    separable: bool
    l1: float


class LtildeSignature(NamedTuple):
    eigenvalues: np.ndarray
    positive_definite: bool
    classification: str


def _require_two_qubits(state) -> np.ndarray:
    rho = as_matrix(state)
    if rho.shape != (4, 4):
        raise DimensionError(f"operation requires dimension 4, got {rho.shape[0]}")
    return rho


def kyfan_norm(c) -> float:
    """Ky Fan (trace) norm: sum of singular values.

    Computed as the square roots of the eigenvalues of C^H C; negative
    rounding noise in the Gram spectrum is clamped to zero.
    """
    c = np.asarray(c, dtype=float) if np.isrealobj(c) else np.asarray(c, dtype=complex)
    if c.ndim != 2:
        raise DomainError(f"expected a matrix, got shape {c.shape}")
    gram = c.conj().T @ c if np.iscomplexobj(c) else c.T @ c
    w = hermitian_eigenvalues(gram)
    w = np.clip(w, 0.0, None)
    return float(np.sum(np.sqrt(w)))


def tr_rho_rhotilde(state) -> float:
    """Overlap Tr(rho rho~) with the spin-flipped state."""
    rho = _require_two_qubits(state)
    return float(np.trace(rho @ spin_flip(rho).matrix).real)


def _flip_singular_values(state) -> np.ndarray:
    """Descending singular values of sqrt(rho) sqrt(rho~).

    These are exactly the square roots of the eigenvalues of
    sqrt(rho) rho~ sqrt(rho); the Hermitian block embedding keeps their
    absolute error at machine-epsilon level even for rank-deficient rho,
    where squaring-then-rooting would lose half the digits.
    """
    rho = _require_two_qubits(state)
    sq = psd_sqrt(rho)
    sq_tilde = spin_flip_matrix(sq)  # sqrt commutes with the flip map on PSD input
    return singular_values(sq @ sq_tilde)


def concurrence_wootters(state) -> float:
    """Two-qubit concurrence, Wootters convention (PRL 80, 2245 (1998)).

    max(0, l1 - l2 - l3 - l4) over the descending square-root eigenvalues
    of sqrt(rho) rho~ sqrt(rho).
    """
    lam = np.clip(_flip_singular_values(state), 0.0, None)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_variant(state) -> float:
    """No-square-root convention: eigenvalues of rho rho~ used directly.

    Same largest-minus-rest combination, applied to the eigenvalues of
    rho rho~ themselves (equal to those of sqrt(rho) rho~ sqrt(rho))
    rather than their square roots.
    """
    rho = _require_two_qubits(state)
    sq = psd_sqrt(rho)
    m = sq @ spin_flip_matrix(rho) @ sq
    ev = np.clip(hermitian_eigenvalues(m)[::-1], 0.0, None)
    return float(max(0.0, ev[0] - ev[1] - ev[2] - ev[3]))


def d_measure(state) -> float:
    """Covariance-invariant analogue of the purity: f/8 - 1/2.

    f is the quadratic covariance invariant; the value is 1/2 on pure
    product states and 1 on Bell states.
    """
    rho = _require_two_qubits(state)
    rep = product_representation(2)
    return inner_product(covariance_coefficients(rho, rep)) / 8.0 - 0.5


def correlation_block(state) -> np.ndarray:
    """A-B cross block of the symmetric order-2 coefficients.

    Entries are the raw traces Tr(rho sigma_j x sigma_k); for n=2 this is
    the Fano correlation matrix.
    """
    rho = as_matrix(state)
    n = local_dimension(rho.shape[0])
    rep = product_representation(n)
    l_sym, _ = split_sym_antisym(tensor_coefficients(rho, rep, order=2))
    count = n * n - 1
    return l_sym[:count, count:]


def devicente_necessary(state, tol: float = DEFAULT_TOL) -> NecessaryResult:
    """Necessary criterion ||C||_KF <= n(n-1)/2 (de Vicente, QIC 7, 624 (2007)).

    A violation certifies entanglement; passing decides nothing.
    """
    rho = as_matrix(state)
    n = local_dimension(rho.shape[0])
    value = kyfan_norm(correlation_block(rho))
    bound = n * (n - 1) / 2.0
    return NecessaryResult(passes=bool(value <= bound + tol), value=value, bound=bound)


def devicente_sufficient(state, tol: float = DEFAULT_TOL) -> SufficientResult:
    """Sufficient criterion sqrt(2(n-1)/n)(|n|+|m|) + (2(n-1)/n)||C||_KF <= 1.

    Satisfying the inequality certifies separability; failing it decides
    nothing.  Evaluated with the expansion-convention Fano coefficients.
    """
    rho = as_matrix(state)
    f = fano_decompose(rho)
    n = f.n
    lin = np.sqrt(2.0 * (n - 1) / n)
    quad = 2.0 * (n - 1) / n
    value = lin * (
        float(np.linalg.norm(f.nvec)) + float(np.linalg.norm(f.mvec))
    ) + quad * kyfan_norm(f.C)
    return SufficientResult(passes=bool(value <= 1.0 + tol), value=value)


def omega_max(state) -> float:
    """Largest antisymmetric order-2 coefficient magnitude."""
    rho = as_matrix(state)
    rep = product_representation(local_dimension(rho.shape[0]))
    _, omega = split_sym_antisym(tensor_coefficients(rho, rep, order=2))
    return float(np.max(np.abs(omega)))


def omega_sufficient(state, tol: float = DEFAULT_TOL) -> OmegaResult:
    """Sufficient criterion (2(n-1)/n)||C||_KF <= 1 for vanishing Omega.

    Applicable only when the antisymmetric coefficients vanish, which is
    equivalent to both reduced states being maximally mixed.
    """
    rho = as_matrix(state)
    n = local_dimension(rho.shape[0])
    applicable = omega_max(rho) < tol
    if not applicable:
        return OmegaResult(applicable=False, passes=False)
    value = (2.0 * (n - 1) / n) * kyfan_norm(correlation_block(rho))
    return OmegaResult(applicable=True, passes=bool(value <= 1.0 + tol))


def ppt_check(state, tol: float = DEFAULT_TOL) -> PptResult:
    """Positivity under partial transposition; decisive for two qubits."""
    rho = _require_two_qubits(state)
    w = hermitian_eigenvalues(partial_transpose(rho))
    return PptResult(separable=bool(w[0] >= -tol), min_eigenvalue=float(w[0]))


def octahedron_check(d, tol: float = DEFAULT_TOL) -> OctahedronResult:
    """Separability of the standard-form state: |d1| + |d2| + |d3| <= 1.

    The triple must lie inside the state tetrahedron.  The l1 value
    coincides with the Ky Fan norm of diag(d), which the implementation
    cross-checks.
    """
    d = np.asarray(d, dtype=float)
    standard_form_state(d)  # validates tetrahedron membership
    l1 = float(np.sum(np.abs(d)))
    assert abs(l1 - kyfan_norm(np.diag(d))) < 1e-12
    return OctahedronResult(separable=bool(l1 <= 1.0 + tol), l1=l1)


def werner_ltilde_signature(x: float) -> LtildeSignature:
    """Spectrum of the sign-flipped symmetric tensor for the Werner family.

    Built as -x L(bell) + (1-x) L(maximally mixed); its eigenvalues are
    1-3x (three-fold) and 1-x (three-fold), and positive definiteness of
    the combination is exactly the x < 1/3 separability condition, with
    x = 1/3 the positive-semidefinite boundary.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"parameter must lie in [0, 1], got {x}")
    rep = product_representation(2)
    l_bell, _ = split_sym_antisym(tensor_coefficients(bell_state(), rep, order=2))
    l_mixed, _ = split_sym_antisym(tensor_coefficients(maximally_mixed(4), rep, order=2))
    ltilde = -x * l_bell + (1.0 - x) * l_mixed
    w = hermitian_eigenvalues(ltilde)
    boundary = 1e-12
    if w[0] > boundary:
        cls = "positive definite"
    elif w[0] >= -boundary:
        cls = "positive semidefinite"
    else:
        cls = "indefinite"
    return LtildeSignature(
        eigenvalues=w, positive_definite=bool(w[0] > boundary), classification=cls
    )


def classify(state, tol: float = DEFAULT_TOL) -> SeparabilityVerdict:
    """Run the criterion cascade and return a three-valued verdict.

    Order: necessary criteria first (a violation settles Entangled), then
    sufficient ones (a pass settles Separable), then, for two qubits,
    the decisive partial-transpose test.
    """
    rho = as_matrix(state)
    n = local_dimension(rho.shape[0])
    f = fano_decompose(rho)
    necessary = devicente_necessary(rho, tol)
    sufficient = devicente_sufficient(rho, tol)
    omega = omega_sufficient(rho, tol)
    witnesses = {
        "c_kyfan": necessary.value,
        "necessary_bound": necessary.bound,
        "sufficient_value": sufficient.value,
        "bloch_norm_a": float(np.linalg.norm(f.nvec)),
        "bloch_norm_b": float(np.linalg.norm(f.mvec)),
        "omega_max": omega_max(rho),
        "tolerance": tol,
    }
    if not necessary.passes:
        return SeparabilityVerdict(ENTANGLED, "devicente_necessary", witnesses)
    if sufficient.passes:
        return SeparabilityVerdict(SEPARABLE, "devicente_sufficient", witnesses)
    if omega.applicable and omega.passes:
        return SeparabilityVerdict(SEPARABLE, "omega_sufficient", witnesses)
    if n == 2:
        ppt = ppt_check(rho, tol)
        witnesses["pt_min_eigenvalue"] = ppt.min_eigenvalue
        status = SEPARABLE if ppt.separable else ENTANGLED
        return SeparabilityVerdict(status, "ppt", witnesses)
    return SeparabilityVerdict(UNDECIDED, None, witnesses)
