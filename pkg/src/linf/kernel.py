"""Kernel backend selection.

Prefers the compiled Cython kernel when it imported cleanly; falls back to
the pure-Python implementation.  Set LINF_PURE_PYTHON=1 to force the
fallback (the benchmark suite uses this to compare the two).
"""

import os

from ._kernel_py import TermBudgetExceeded  # canonical exception type

if os.environ.get("LINF_PURE_PYTHON"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

BACKEND = _impl.BACKEND
mono_degree = _impl.mono_degree
mono_word_length = _impl.mono_word_length
mono_mul = _impl.mono_mul
mono_normalize = _impl.mono_normalize
poly_add = _impl.poly_add
poly_scale = _impl.poly_scale
poly_mul = _impl.poly_mul
deriv_apply = _impl.deriv_apply


def max_terms() -> int:
    """Polynomial term cap, read from LINF_MAX_TERMS (default one million)."""
    try:
        return int(os.environ.get("LINF_MAX_TERMS", "1000000"))
    except ValueError:
        return 1000000
