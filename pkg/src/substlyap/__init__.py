"""Spectral analysis of constant-length substitution systems.

The library certifies the absence of an absolutely continuous diffraction
component via positivity of Lyapunov exponents of the Fourier-matrix
cocycle, in closed form through log-Mahler measures and independently by
numeric cocycle iteration.
"""

from .classify import (
    INCONCLUSIVE,
    NO_AC_COMPONENT,
    PERIODIC_DEGENERATE,
    PURE_POINT_BY_COINCIDENCE,
    SINGULAR_CONTINUOUS_BIJECTIVE,
    BlockReport,
    ScanResult,
    ScanRow,
    SpectralReport,
    classify,
    classify_nary,
    scan,
)
from .errors import (
    DegenerateSubstitution,
    LengthMismatch,
    NoSuchSymmetry,
    NotAFixedSeed,
    NotBinary,
    NotPrimitive,
    ResampleExhausted,
    RuleSyntaxError,
    SingularFamily,
    SubstLyapError,
    UnknownLetter,
    ZeroPolynomial,
)
from .fourier import (
    IdaDescription,
    TrigMatrix,
    algebra_dimension,
    digit_matrices,
    fourier_matrix,
    ida,
    ida_from_samples,
    kronecker_lift,
    symmetry_reduce,
)
from .lyapunov import (
    CocycleConfig,
    ExponentPair,
    birkhoff_mahler,
    closed_form_exponents,
    cocycle_exponents,
    cocycle_trace,
    inward_exponents,
    invariant_subspace_check,
)
from .mahler import (
    MahlerResult,
    PartitionPolynomials,
    circle_zeros,
    column_difference,
    kronecker_certify,
    mahler_quadrature,
    mahler_roots,
    norm_bounds,
    partition_polynomials,
)
from .polynomial import IntPolynomial
from .substitution import (
    BIJECTIVE,
    DEGENERATE,
    HAS_COINCIDENCE,
    ColumnPartition,
    CorrelationTable,
    Substitution,
    classify_columns,
    column_partition,
    correlation_estimate,
    find_legal_seed,
    fixed_point_prefix,
    is_primitive,
    parse,
    periodicity_hint,
)

__version__ = "0.1.0"
