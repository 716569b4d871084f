"""float64 table kernels: compiled extension when available, else pure Python.

Both implementations execute the same operation sequence, so switching
between them never changes a single bit of output.  HAVE_SPEEDUPS reports
which one is active; the benchmark script exercises both.
"""

try:
    from . import _speedups as _impl

    HAVE_SPEEDUPS = True
except ImportError:
    from . import _fallback as _impl

    HAVE_SPEEDUPS = False

from . import _fallback

implementation = "compiled" if HAVE_SPEEDUPS else "fallback"

partial_sums = _impl.partial_sums
method_s_table = _impl.method_s_table
levin_weniger_table = _impl.levin_weniger_table

__all__ = [
    "HAVE_SPEEDUPS",
    "implementation",
    "partial_sums",
    "method_s_table",
    "levin_weniger_table",
]
