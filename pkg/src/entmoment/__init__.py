"""Bipartite entanglement detection from generator moment matrices.

Core pieces: generalized Pauli bases with structure constants, validated
density operators with Bloch/Fano codecs, order-k generator moment
tensors (symmetric/antisymmetric and covariance variants), separability
criteria and concurrence monotones, and parameter-sweep tooling.
"""

from .basis import HermitianBasis, generate_basis, structure_constants
from .entanglement import (
    ENTANGLED,
    SEPARABLE,
    UNDECIDED,
    SeparabilityVerdict,
    classify,
    concurrence_variant,
    concurrence_wootters,
    d_measure,
    devicente_necessary,
    devicente_sufficient,
    kyfan_norm,
    octahedron_check,
    omega_sufficient,
    ppt_check,
    tr_rho_rhotilde,
    werner_ltilde_signature,
)
from .linalg import hermitian_eigensystem
from .states import (
    BlochVector,
    DensityOperator,
    FanoForm,
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
    random_unitary,
    save_state,
    schmidt_mix,
    spin_flip,
    standard_form_state,
    werner,
)
from .sweep import AxisSpec, SweepGrid, grid_sweep, wedge_field, write_csv, write_svg
from .tensors import (
    Representation,
    TensorCoefficients,
    covariance_coefficients,
    defining_representation,
    inner_product,
    monotone_candidate,
    product_representation,
    quadratic_invariant,
    split_sym_antisym,
    tensor_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "BlochVector",
    "DensityOperator",
    "ENTANGLED",
    "FanoForm",
    "HermitianBasis",
    "Representation",
    "SEPARABLE",
    "SeparabilityVerdict",
    "SweepGrid",
    "TensorCoefficients",
    "UNDECIDED",
    "bell_state",
    "bloch_decode",
    "bloch_encode",
    "classify",
    "concurrence_variant",
    "concurrence_wootters",
    "convex_combine",
    "covariance_coefficients",
    "d_measure",
    "defining_representation",
    "devicente_necessary",
    "devicente_sufficient",
    "fano_compose",
    "fano_decompose",
    "generate_basis",
    "grid_sweep",
    "hermitian_eigensystem",
    "inner_product",
    "kyfan_norm",
    "load_state",
    "maximally_mixed",
    "monotone_candidate",
    "octahedron_check",
    "omega_sufficient",
    "partial_trace",
    "partial_transpose",
    "ppt_check",
    "product_representation",
    "purity",
    "quadratic_invariant",
    "random_density",
    "random_pure",
    "random_unitary",
    "save_state",
    "schmidt_mix",
    "spin_flip",
    "split_sym_antisym",
    "standard_form_state",
    "structure_constants",
    "tensor_coefficients",
    "tr_rho_rhotilde",
    "wedge_field",
    "werner",
    "werner_ltilde_signature",
    "write_csv",
    "write_svg",
]
