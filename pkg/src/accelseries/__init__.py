"""Convergence acceleration for alternating series.

Weighted-average sequence transformations (Aitken, method S, the S_phi
family, Levin, Weniger) over pluggable arithmetic backends (binary64,
fixed-precision decimal, exact rationals), with convergence diagnostics
and a command-line front end.
"""

from .errors import (
    AccelSeriesError,
    AlternationError,
    DegenerateDenominatorError,
    DegenerateDiagnosticError,
    DegenerateDifferenceError,
    DegenerateTermError,
    DegenerateWeightError,
    ExactnessError,
    ParseError,
    PrecisionError,
    RangeError,
    ReferenceZeroError,
    RegistryError,
    TermError,
)
from .numeric import (
    Binary64Context,
    DecimalContext,
    RationalContext,
    context,
    context_for_digits,
    parse_decimal,
    rel_error,
)
from .series import (
    AlternatingSeries,
    beta,
    builtin,
    builtin_names,
    from_file,
    partial_sums,
    scale_terms,
    shift_first_term,
)
from .transforms import (
    MethodSpec,
    PhiFamily,
    PqState,
    TransformTable,
    aitken,
    aitken_alternating,
    custom_phi,
    levin_explicit,
    levin_tilde,
    levin_weniger_direct,
    levin_weniger_explicit,
    levin_weniger_pq,
    levin_weniger_pq_state,
    method_s,
    method_s_phi,
    phi_tilde,
    ratio_powers,
    transform,
    two_point_powers,
    weniger_tilde,
)
from .diagnostics import (
    AccuracyRow,
    DiagnosticTable,
    d_table,
    delta_s1_identity,
    digits_row,
    lemma2_residual,
    theorem1_scaling,
    theorem2_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "AccelSeriesError",
    "AlternationError",
    "DegenerateDenominatorError",
    "DegenerateDiagnosticError",
    "DegenerateDifferenceError",
    "DegenerateTermError",
    "DegenerateWeightError",
    "ExactnessError",
    "ParseError",
    "PrecisionError",
    "RangeError",
    "ReferenceZeroError",
    "RegistryError",
    "TermError",
    # numeric
    "Binary64Context",
    "DecimalContext",
    "RationalContext",
    "context",
    "context_for_digits",
    "parse_decimal",
    "rel_error",
    # series
    "AlternatingSeries",
    "beta",
    "builtin",
    "builtin_names",
    "from_file",
    "partial_sums",
    "scale_terms",
    "shift_first_term",
    # transforms
    "MethodSpec",
    "PhiFamily",
    "PqState",
    "TransformTable",
    "aitken",
    "aitken_alternating",
    "custom_phi",
    "levin_explicit",
    "levin_tilde",
    "levin_weniger_direct",
    "levin_weniger_explicit",
    "levin_weniger_pq",
    "levin_weniger_pq_state",
    "method_s",
    "method_s_phi",
    "phi_tilde",
    "ratio_powers",
    "transform",
    "two_point_powers",
    "weniger_tilde",
    # diagnostics
    "AccuracyRow",
    "DiagnosticTable",
    "d_table",
    "delta_s1_identity",
    "digits_row",
    "lemma2_residual",
    "theorem1_scaling",
    "theorem2_ratio",
]
