"""LU factorization without pivoting for arbitrary square matrices.

A square matrix admits a permutation-free factorization ``A = L U`` iff,
for every leading index k, the nullity of the leading principal block is
at most the sum of the nullities of the leading column and row blocks.
This package decides that condition, constructs rank-revealing factors
when it holds (plus unit-triangular constrained variants and the
classical pivoted baselines), and certifies any claimed factorization
against the structural invariants the construction guarantees.
"""

from .analysis import (
    ConditionRow,
    ExistenceReport,
    condition_witness,
    existence_report,
    nullity,
    rank,
    sylvester_nullity_check,
)
from .certify import (
    Certificate,
    ObliqueProjector,
    Violation,
    certify_general,
    certify_pivoted,
    certify_unit,
    independent_rank,
    invert,
    oblique_projector,
    rank_by_minors,
    schur_oblique_state,
)
from .engine import (
    Factorization,
    NotFactorizable,
    PivotedFactorization,
    UnitFactorization,
    lu_full_pivot,
    lu_general,
    lu_partial_pivot,
    lu_unit_lower,
    lu_unit_upper,
)
from .errors import (
    BoundsError,
    FieldMismatchError,
    ParseError,
    PreconditionError,
    ShapeError,
    SingularityError,
    SpecError,
)
from .fields import RATIONAL, ScalarField, float64
from .generate import (
    ANTIDIAGONAL_TRAP,
    BLOCK_EMBED,
    FAMILIES,
    PRODUCT_LU,
    RANDOM,
    UNIT_LOWER_FEASIBLE,
    GenSpec,
    GeneratedMatrix,
    fixture_specs,
    gen,
    gen_detailed,
)
from .matrix import Matrix, matmul, submatrix, transpose

__version__ = "0.1.0"

__all__ = [
    "ANTIDIAGONAL_TRAP",
    "BLOCK_EMBED",
    "BoundsError",
    "Certificate",
    "ConditionRow",
    "ExistenceReport",
    "FAMILIES",
    "Factorization",
    "FieldMismatchError",
    "GenSpec",
    "GeneratedMatrix",
    "Matrix",
    "NotFactorizable",
    "ObliqueProjector",
    "PRODUCT_LU",
    "ParseError",
    "PivotedFactorization",
    "PreconditionError",
    "RANDOM",
    "RATIONAL",
    "ScalarField",
    "ShapeError",
    "SingularityError",
    "SpecError",
    "UNIT_LOWER_FEASIBLE",
    "UnitFactorization",
    "Violation",
    "certify_general",
    "certify_pivoted",
    "certify_unit",
    "condition_witness",
    "existence_report",
    "fixture_specs",
    "float64",
    "gen",
    "gen_detailed",
    "independent_rank",
    "invert",
    "lu_full_pivot",
    "lu_general",
    "lu_partial_pivot",
    "lu_unit_lower",
    "lu_unit_upper",
    "matmul",
    "nullity",
    "oblique_projector",
    "rank",
    "rank_by_minors",
    "schur_oblique_state",
    "submatrix",
    "sylvester_nullity_check",
    "transpose",
]
