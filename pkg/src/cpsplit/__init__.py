"""Unique B-weighted decompositions of generators of completely positive semigroups."""
from .casework import (
    BlochParams,
    bloch_gamma_hermitian,
    bloch_generator,
    bloch_reference_parts,
    bloch_spec,
    depolarizing_exclusion,
    depolarizing_map,
    dissipator_of,
    orthogonality_counterexample,
    transpose_criterion,
    transpose_decomposition,
)
from .decompose import (
    CptpDecomposition,
    Decomposition,
    Gksl,
    KWedge,
    RawSuperop,
    WedgeReport,
    build_generator,
    decompose,
    decompose_constructive,
    decompose_cptp,
    recompose,
    recompose_cptp,
    validate_cp_wedge,
)
from .errors import *  # noqa: F401,F403
from .linalg import (
    allclose,
    anticommutator,
    commutator,
    herm_eig,
    hs_inner,
    kron,
    unvec_mat,
    vec_mat,
)
from .superop import (
    Superoperator,
    anticommutator_part,
    apply,
    choi,
    choi_to_superop,
    dual_map,
    from_kraus,
    from_sandwich,
    hamiltonian_part,
    hs_adjoint,
    identity,
    is_cp,
    is_hermitian_preserving,
    is_trace_annihilating,
    kraus_from_choi,
    left_right,
    superop_trace,
    transpose_map,
    zero,
)
from .weighted import (
    WeightMatrix,
    b_inner,
    b_inner_closed_forms,
    entanglement_fidelity,
    in_cp_b,
    sandwich_trace,
    weighted_trace,
)

__version__ = "0.1.0"
