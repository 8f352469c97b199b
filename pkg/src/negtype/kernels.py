"""Backend selection for the numeric kernels.

Prefers the compiled extension; falls back to the pure-numpy implementation
when the extension is missing or ``NEGTYPE_PURE=1`` is set in the
environment. Both expose the same three callables and the same numerics, so
everything downstream is backend-agnostic.
"""

from __future__ import annotations

import os

if os.environ.get("NEGTYPE_PURE") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
jacobi_eigh = _impl.jacobi_eigh
minimize_cells = _impl.minimize_cells
quad_form_gaps = _impl.quad_form_gaps

__all__ = ["BACKEND", "jacobi_eigh", "minimize_cells", "quad_form_gaps"]
