"""simplexalg: exact symmetry algebra of Jacobi polynomials on the simplex.

Everything is computed over arbitrary-precision rationals: the polynomial
family P_nu(x; gamma), the second-order differential generators L_{i,j} and
their Jucys-Murphy sums, the Racah-type difference operators that represent
them on the degree indices, and a verification layer that checks every
identity of the construction as an exact matrix or operator equality.
"""

from .diffops import (
    DiffOp,
    OperatorExpr,
    anticommutator,
    commutator,
    f_combination,
    jm_recovered_generators,
    l_operator,
    l_total,
    m_operator,
    op_algebra,
)
from .errors import (
    DegenerateParameter,
    DimensionMismatch,
    ExactAlgebraError,
    InvalidParameter,
    SingularSystem,
)
from .jacobi import BasisSet, a_param, jacobi1d, jacobi_simplex, graded_indices, level_indices
from .linalg import ExactMatrix, SpanBasis, exact_solve
from .moments import inner_product, simplex_moment
from .params import ParamVector, check_gamma, param_valid, require_valid
from .poly import MultiPoly
from .racah import (
    RacahOp,
    RacahParamVector,
    ZFraction,
    b12_operator,
    b123_operator,
    b134_operator,
    b23_operator,
    certificate_2d,
    explicit_3d_operator,
    parameter_maps,
    predicted_m_action,
    racah_coefficient,
    racah_kernel,
    racah_operator,
)
from .scalar import Rat, as_rat, pochhammer, rat_str
from .verify import (
    CheckResult,
    ModuleContext,
    VerificationReport,
    eigenvalue,
    generator_rank,
    irreducibility_check,
    matrix_of,
    orbit_closure_dimensions,
    run_suites,
    submodule_diagnostic,
    verify_difference_action,
    verify_f_relation,
    verify_kd,
    verify_matrix_commutation,
    verify_relations,
    verify_selfadjoint_orthogonal,
    verify_separation,
    verify_spectral,
)

__version__ = "0.1.0"
