"""Hot numeric kernels with a compiled core and a pure fallback.

The Cython extension (rankproj._kernels._native) is preferred when it
imported cleanly; set RANKPROJ_PURE=1 to force the fallback. Both
backends expose the same three functions.
"""

import os

if os.environ.get("RANKPROJ_PURE") == "1":
    from . import _pure as _backend
else:
    try:
        from . import _native as _backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _backend

BACKEND = _backend.NAME
tsne_gradient = _backend.tsne_gradient
polyline_project = _backend.polyline_project
triple_scan = _backend.triple_scan
BETWEEN_DESC = 0
BETWEEN_ASC = 1
