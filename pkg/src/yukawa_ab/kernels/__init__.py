"""Eigensolver kernels with two interchangeable backends.

The compiled Cython extension is preferred when it was built; otherwise the
pure numpy/scipy implementation takes over. Set YUKAWA_AB_KERNEL=pure or
=compiled to force one (forcing "compiled" raises if the build is missing).
The active choice is exposed as `backend`.
"""
import os

from . import _pure

_requested = os.environ.get("YUKAWA_AB_KERNEL", "auto").lower()
if _requested == "pure":
    _impl = _pure
elif _requested == "compiled":
    from . import _core as _impl
elif _requested in ("auto", ""):
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _pure
else:
    raise ImportError(
        f"YUKAWA_AB_KERNEL must be 'pure', 'compiled', or 'auto', got {_requested!r}"
    )

backend = _impl.name
sturm_count = _impl.sturm_count
lowest_eigenvalues = _impl.lowest_eigenvalues
solve_shifted = _impl.solve_shifted

__all__ = ["backend", "sturm_count", "lowest_eigenvalues", "solve_shifted"]
