"""schurlab: multiplicative Schur maps, certified, factored, enumerated, completed.

A Schur map B -> A o B (entrywise product) distributes over ordinary matrix
multiplication exactly when the coefficients factor as a_ij = f(i)/f(j) for
nonzero scalars f(i). This package decides that property numerically, extracts
the scaling, walks the group structure of such matrices, completes partially
specified instances, probes truncations of infinite coefficient matrices, and
ties everything together with seeded verification suites and a CLI.
"""

from .core import (
    DEFAULT_TOL,
    ComplexMatrix,
    Tolerance,
    all_ones,
    as_matrix,
    eigenvalues,
    identity,
    matrix_unit,
    multiset_distance,
    numerical_rank,
    operator_norm,
    schur_inverse,
    schur_product,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DocumentFormatError,
    NotMultiplicativeError,
    PreconditionError,
    ResourceLimitError,
    SchurError,
    ZeroEntryError,
)
from .multiplicative import (
    CocycleResult,
    ConditionResult,
    MultiplicativityCertificate,
    MULTIPLICATIVE_CONDITIONS,
    ScalingVector,
    build_from_scaling,
    certify_multiplicative,
    check_cocycle,
    factor_scaling,
    numerical_range_samples,
    schur_map_norm,
)
from .star import (
    STAR_CONDITIONS,
    StarCertificate,
    certify_star_multiplicative,
    is_positive_semidefinite,
    is_unimodular,
    projection_check,
)
from .groups import (
    ENUMERATION_LIMIT,
    SignMatrix,
    enumerate_real_positive,
    group_product,
    toeplitz_member,
    torus_param,
)
from .completion import (
    COMPLETED,
    INCONSISTENT,
    UNDERDETERMINED,
    CompletionReport,
    PartialMatrix,
    Violation,
    complete_partial,
    log_coordinates,
)
from .truncation import (
    CoefficientGenerator,
    L2FactorReport,
    WitnessResult,
    compact_bound_check,
    corner,
    l2_multiplier_factor_check,
    scaling_generator,
    table_generator,
    toeplitz_generator,
    unboundedness_witness,
)
from .extreme import CorrelationVerdict, IsometryResult, correlation_check, isometry_check
from .verify import SUITE_NAMES, VerifyFailure, VerifyReport, run_suite

__version__ = "0.1.0"
