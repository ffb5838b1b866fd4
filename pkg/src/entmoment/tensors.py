"""Moment tensors of Lie-algebra generators evaluated on quantum states.

The order-k coefficients are ``T_{i1..ik} = Tr(rho R_{i1} ... R_{ik})``
for stacked generator operators R.  For k=2 the real part is the halved
anticommutator expectation (symmetric, L) and the imaginary part the
halved commutator expectation (antisymmetric, Omega), so T = L + i Omega.
The covariance variant subtracts first moments:
``K_jk = T_jk - Tr(rho R_j) Tr(rho R_k)``; its antisymmetric part equals
Omega and its symmetric part is written G.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .basis import generate_basis
from .errors import DomainError, ShapeError
from .states import as_matrix, local_dimension

MAX_ORDER = 4


@dataclass(frozen=True)
class Representation:
    """Stacked Hermitian generator operators with provenance labels.

    ``labels[g]`` maps generator index g to ``(subsystem, basis_index)``
    where ``basis_index`` indexes the traceless part of the underlying
    u(n) basis (1-based into ``HermitianBasis.sigma``), and subsystem is
    'A'/'B' for the bipartite product representation or 'S' for the
    defining single-system one.
    """

    n: int
    ops: np.ndarray
    labels: tuple
    kind: str

    @property
    def count(self) -> int:
        return self.ops.shape[0]


@dataclass(frozen=True)
class TensorCoefficients:
    """Complex coefficient array of an order-k generator moment tensor."""

    order: int
    dim_index: int
    values: np.ndarray


@lru_cache(maxsize=None)
def product_representation(n: int) -> Representation:
    """Traceless generators sigma_j x 1 (subsystem A) then 1 x sigma_j (B)."""
    sigma = generate_basis(n).sigma
    eye = np.eye(n, dtype=complex)
    gens = sigma[1:]
    ops = np.stack(
        [np.kron(g, eye) for g in gens] + [np.kron(eye, g) for g in gens]
    )
    ops.setflags(write=False)
    count = n * n - 1
    labels = tuple(("A", j + 1) for j in range(count)) + tuple(
        ("B", j + 1) for j in range(count)
    )
    return Representation(n=n, ops=ops, labels=labels, kind="product")


@lru_cache(maxsize=None)
def defining_representation(n: int) -> Representation:
    """Traceless generators sigma_j acting on a single n-level system."""
    sigma = generate_basis(n).sigma
    ops = np.array(sigma[1:], dtype=complex)
    ops.setflags(write=False)
    labels = tuple(("S", j + 1) for j in range(n * n - 1))
    return Representation(n=n, ops=ops, labels=labels, kind="defining")


def representation_for(state) -> Representation:
    """Product representation matching a bipartite state's dimension."""
    return product_representation(local_dimension(as_matrix(state).shape[0]))


@lru_cache(maxsize=None)
def _pair_products(kind: str, n: int) -> np.ndarray:
    rep = product_representation(n) if kind == "product" else defining_representation(n)
    prod = np.einsum("jab,kbc->jkac", rep.ops, rep.ops)
    prod.setflags(write=False)
    return prod


def first_moments(state, rep: Representation) -> np.ndarray:
    """Expectation values Tr(rho R_j), real for Hermitian generators."""
    rho = as_matrix(state)
    return np.einsum("ab,jba->j", rho, rep.ops).real


def tensor_coefficients(state, rep: Representation, order: int = 2) -> TensorCoefficients:
    """Order-k coefficients Tr(rho R_{i1} ... R_{ik}), products in index order."""
    if not 1 <= order <= MAX_ORDER:
        raise DomainError(f"tensor order must be between 1 and {MAX_ORDER}, got {order}")
    rho = as_matrix(state)
    if rho.shape != rep.ops.shape[1:]:
        raise ShapeError(
            f"state dimension {rho.shape[0]} does not match representation "
            f"dimension {rep.ops.shape[1]}"
        )
    if order == 1:
        values = np.einsum("ab,jba->j", rho, rep.ops)
    elif order == 2:
        values = np.einsum("ab,jkba->jk", rho, _pair_products(rep.kind, rep.n))
    else:
        letters = "jklm"[:order]
        operands = []
        script = ["ab"]
        prev = "b"
        for i, letter in enumerate(letters):
            nxt = "a" if i == order - 1 else "cde"[i]
            script.append(f"{letter}{prev}{nxt}")
            operands.append(rep.ops)
            prev = nxt
        expr = ",".join(script) + "->" + letters
        values = np.einsum(expr, rho, *operands, optimize=True)
    return TensorCoefficients(order=order, dim_index=rep.count, values=values)


def split_sym_antisym(t: TensorCoefficients) -> tuple[np.ndarray, np.ndarray]:
    """Real symmetric L and real antisymmetric Omega with T = L + i Omega."""
    if t.order != 2:
        raise ShapeError(f"symmetric/antisymmetric split needs order 2, got {t.order}")
    v = t.values
    l_sym = (v.real + v.real.T) / 2.0
    omega = (v.imag - v.imag.T) / 2.0
    return l_sym, omega


def covariance_coefficients(state, rep: Representation) -> TensorCoefficients:
    """Second moments minus products of first moments, K_jk = <R_j R_k> - <R_j><R_k>."""
    t = tensor_coefficients(state, rep, order=2)
    mom = first_moments(state, rep)
    return TensorCoefficients(
        order=2, dim_index=t.dim_index, values=t.values - np.outer(mom, mom)
    )


def inner_product(t: TensorCoefficients) -> float:
    """Sum of squared moduli of all coefficients."""
    return float(np.sum(np.abs(t.values) ** 2))


def quadratic_invariant(state, mode: str = "linear") -> float:
    """Local-unitary invariant sum of squared order-2 coefficients.

    ``mode='linear'`` uses the plain second moments; ``mode='covariance'``
    subtracts first moments first.  Both are invariant under conjugation
    by local unitaries.
    """
    rep = representation_for(state)
    if mode == "linear":
        return inner_product(tensor_coefficients(state, rep, order=2))
    if mode == "covariance":
        return inner_product(covariance_coefficients(state, rep))
    raise DomainError(f"mode must be 'linear' or 'covariance', got {mode!r}")


def monotone_candidate(state, mode: str, order: int, coefficients) -> float:
    """Polynomial sum_i a_i * <T,T>^i in the order-k coefficient norm.

    ``coefficients`` is the sequence (a_0, a_1, ...); the plain quadratic
    invariant is recovered with ``mode='linear'``, ``order=2``,
    ``coefficients=(0, 1)``.
    """
    rep = representation_for(state)
    if mode == "linear":
        ip = inner_product(tensor_coefficients(state, rep, order=order))
    elif mode == "covariance":
        if order != 2:
            raise DomainError("covariance coefficients are defined for order 2 only")
        ip = inner_product(covariance_coefficients(state, rep))
    else:
        raise DomainError(f"mode must be 'linear' or 'covariance', got {mode!r}")
    return float(sum(a * ip**i for i, a in enumerate(coefficients)))
