"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
module is the drop-in fallback. ``SWIIM_BACKEND=pure`` or
``SWIIM_BACKEND=compiled`` forces a choice (the latter raises if the
extension is missing, rather than silently degrading).

Both backends are contractually byte-identical; tests/test_kernels.py
holds them to it.
"""

import os

from . import _pure

_forced = os.environ.get("SWIIM_BACKEND", "").strip().lower()

if _forced == "pure":
    backend = _pure
elif _forced == "compiled":
    from . import _hot as backend
elif _forced:
    raise ValueError(f"SWIIM_BACKEND must be 'pure' or 'compiled', not {_forced!r}")
else:
    try:
        from . import _hot as backend
    except ImportError:
        backend = _pure

ACTIVE_BACKEND = backend.NAME

crop = backend.crop
rotate = backend.rotate
flip = backend.flip
apply_luts = backend.apply_luts
threshold = backend.threshold
channel_histograms = backend.channel_histograms
meld = backend.meld
hue_rotate = backend.hue_rotate
