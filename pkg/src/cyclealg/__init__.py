"""Function algebras over the directed n-cycle.

Exact polynomial elements, their finite-dimensional representations, point
derivations with inner/non-inner classification, boundary approximate
identities and reconstruction of global inner witnesses from boundary data.
"""

from .algebra import (
    CycleElement,
    diagonal,
    element_from_json,
    gen_e,
    gen_Z,
    generators,
    identity,
    monomial_elem,
    mul_elem,
    norm,
    parse_realized,
    random_element,
    zero,
)
from .derivations import (
    GenDerivation,
    InnerSolveResult,
    KernelVanishing,
    ZeroSplit,
    boundary_approx_identity,
    canonical_kernel_elements,
    check_leibniz,
    decompose_at_zero,
    decompose_experiment,
    delta_X,
    F_point_derivation,
    gen_derivation_from_json,
    inner_solve,
    kernel_vanishing_test,
)
from .errors import (
    CycleAlgebraError,
    DegreeOverflow,
    DimensionMismatch,
    NotInAlgebra,
    NotLocallyInner,
    RootMismatch,
)
from .poly import Poly, eval_at_unit_roots, interpolate_roots_of_unity, monomial
from .reconstruction import (
    BoundaryField,
    GlobalDerivation,
    VerifyReport,
    boundary_field_from_json,
    global_derivation_from_json,
    localize,
    reconstruct_witness,
    solve_boundary_field,
    verify_global_inner,
)
from .representations import (
    DiagZero,
    KernelSquareResult,
    Lambda,
    RepPoint,
    SemisimplicityVerdict,
    eval_rep,
    eval_rep_at_unit_roots,
    kernel_sample,
    kernel_square_witness,
    matc_from_json,
    matc_to_json,
    phi_generator_values,
    point_from_json,
    point_to_json,
    semisimplicity_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "CycleElement",
    "Poly",
    "GenDerivation",
    "GlobalDerivation",
    "BoundaryField",
    "InnerSolveResult",
    "KernelVanishing",
    "KernelSquareResult",
    "SemisimplicityVerdict",
    "VerifyReport",
    "ZeroSplit",
    "Lambda",
    "DiagZero",
    "RepPoint",
    "CycleAlgebraError",
    "DegreeOverflow",
    "DimensionMismatch",
    "NotInAlgebra",
    "NotLocallyInner",
    "RootMismatch",
    "boundary_approx_identity",
    "boundary_field_from_json",
    "canonical_kernel_elements",
    "check_leibniz",
    "decompose_at_zero",
    "decompose_experiment",
    "delta_X",
    "diagonal",
    "element_from_json",
    "eval_at_unit_roots",
    "eval_rep",
    "eval_rep_at_unit_roots",
    "F_point_derivation",
    "gen_derivation_from_json",
    "gen_e",
    "gen_Z",
    "generators",
    "global_derivation_from_json",
    "identity",
    "inner_solve",
    "interpolate_roots_of_unity",
    "kernel_sample",
    "kernel_square_witness",
    "kernel_vanishing_test",
    "localize",
    "matc_from_json",
    "matc_to_json",
    "monomial",
    "monomial_elem",
    "mul_elem",
    "norm",
    "parse_realized",
    "phi_generator_values",
    "point_from_json",
    "point_to_json",
    "random_element",
    "reconstruct_witness",
    "semisimplicity_certificate",
    "solve_boundary_field",
    "verify_global_inner",
    "zero",
]
