"""Select the kernel implementation at import time.

The compiled extension is preferred.  Setting ``IDEALTETRA_PURE=1`` forces the
pure-Python fallback, as does a missing or broken build.
"""

import os

from . import _fallback

BACKEND = "python"
kernels = _fallback

if not os.environ.get("IDEALTETRA_PURE"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        kernels = _kernels
        BACKEND = "cython"

lobachevsky = kernels.lobachevsky
lobachevsky_array = kernels.lobachevsky_array
ideal_volume = kernels.ideal_volume
ideal_volume_array = kernels.ideal_volume_array
