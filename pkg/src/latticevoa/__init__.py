"""Exact computations with lattice vertex algebras, their coset modules and tensor products."""

from .axioms import (
    NonScalarDefect,
    central_charge,
    check_component_jacobi,
    check_creation_property,
    check_grading_axioms,
    check_jacobi_box,
    check_l_minus_one_derivative,
    check_vacuum_property,
    check_virasoro,
    sample_triples,
)
from .characters import (
    CharacterSeries,
    character_convolution_check,
    character_series,
    colored_partition_count,
    graded_dimension,
)
from .fock import FockMonomial, StateVector, basis_of, double_degree, monomial, state, vacuum
from .lattice import (
    Degenerate,
    DualCoset,
    EpsilonCocycle,
    EvenLattice,
    LatticeError,
    NotEven,
    NotInDual,
    NotSymmetric,
    build_even_lattice,
    discriminant_group,
    orthogonal_sum,
    smith_normal_form,
)
from .modules import LatticeModule, build_coset_module, dual_lattice_module, lattice_algebra, zero_module
from .report import CheckReport
from .representations import (
    InsufficientSample,
    NotDecomposableAtWindow,
    OperatorSample,
    classify_irreducibles_tensor,
    commutant_dimension,
    decompose_completely,
    default_sample,
    h0_eigenspace_grading,
    irreducibility_check,
)
from .tensor import (
    TensorModule,
    check_residue_expansion,
    expand_tensor_mode,
    pure_tensor,
    tensor_algebra,
    tensor_mode_action,
    tensor_module,
)
from .vertex import (
    ModeOperator,
    TruncationWindow,
    WindowOverflow,
    conformal_vector,
    general_vertex_mode,
    lattice_field_mode,
    virasoro_mode,
)

__all__ = [name for name in dir() if not name.startswith("_")]
