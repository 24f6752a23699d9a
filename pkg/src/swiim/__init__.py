"""swiim: deterministic image editing with an append-only, replayable journal.

Edit images through a Session and every action lands in a journal —
line-oriented text that binds the edit history to the retained source
image with content hashes and can be re-executed bit-exactly, stepped
through, normalized, and verified against a claimed output.

The submodules are the API: ``swiim.ops`` (the editing operations),
``swiim.journal`` (format, parser, serializer), ``swiim.replay``
(replay/step/verify/normalize/diff), ``swiim.session``,
``swiim.codecs_io`` and ``swiim.service``. The most common types are
re-exported here.
"""

from . import codecs_io, journal, ops, replay, session  # noqa: F401
from .codecs_io import content_hash, export_image, import_image
from .errors import SwiimError
from .journal import Journal, JournalEntry
from .raster import ChannelGains, HueShift, MeldSpec, PixelRect, Raster, ToneParams
from .replay import DiffReport, ReplayReport
from .session import Session, open_session

__version__ = "0.1.0"

__all__ = [
    "SwiimError",
    "Journal", "JournalEntry",
    "Raster", "PixelRect", "ToneParams", "ChannelGains", "HueShift", "MeldSpec",
    "content_hash", "export_image", "import_image",
    "ReplayReport", "DiffReport",
    "Session", "open_session",
    "codecs_io", "journal", "ops", "replay", "session",
    "__version__",
]
