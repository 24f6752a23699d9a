"""Interactive editing state: current raster, snapshots, journal.

A Session is the single mutation path used by the CLI's serve mode, the
HTTP service and the browser UI. Every successful action appends exactly
one journal entry whose recorded hash is the state the action produced;
failed actions leave the session untouched.

Two views of history coexist:

* the undo stack (``SnapshotStack``), which new edits truncate above the
  cursor, exactly like any editor;
* the archive, which keeps every state ever visited. Abandoned branches
  stay inspectable even though they are no longer reachable via redo.

Decimal parameters are quantized to the journal's canonical 6-digit grid
*before* the op executes, so the value in the journal is the value that
ran, and replaying the journal reproduces the session bit for bit.
"""

from __future__ import annotations

import secrets
from typing import Any, Mapping

from . import codecs_io, journal, ops
from .errors import SchemaError
from .history import SnapshotStack
from .raster import Raster


class Session:
    def __init__(self, source: Raster, name: str, journal_path: str | None = None):
        self.id = secrets.token_hex(16)
        self.source = source
        self.source_name = name
        self.source_hash = codecs_io.content_hash(source)
        self.journal = journal.Journal.start(name, self.source_hash)
        self._stack: SnapshotStack[Raster] = SnapshotStack(source)
        self._archive: list[Raster] = [source]
        self.assets: dict[str, tuple[str, Raster]] = {}
        self.journal_path = journal_path
        self._flush()

    # --- read side --------------------------------------------------------

    @property
    def current(self) -> Raster:
        return self._stack.current

    @property
    def undo_depth(self) -> int:
        return self._stack.undo_depth

    @property
    def history_length(self) -> int:
        """Number of recorded states, the source included."""
        return len(self._archive)

    def history_state(self, index: int) -> Raster:
        return self._archive[index]

    def journal_text(self) -> str:
        return journal.serialize(self.journal)

    # --- mutations ----------------------------------------------------------

    def apply(self, op: str, params: Mapping[str, Any],
              insert: Raster | None = None) -> None:
        """Apply an image op given journal-shaped params.

        For MELD, ``insert`` is the image being placed; its own content
        hash is recorded in the entry (grouping stays explicit) and the
        raster is retained so the session's journal can be replayed.
        """
        if op not in journal.IMAGE_OPS:
            raise SchemaError(f"{op!r} is not an appliable image operation", op=op)
        clean = dict(params)
        ihash = None
        if op == journal.MELD:
            if insert is None:
                raise SchemaError("MELD requires the inserted image", op=op, key="ihash")
            ihash = codecs_io.content_hash(insert)
            clean["ihash"] = ihash
        clean = journal.validate_params(op, clean)  # also quantizes decimals

        # compute first, commit after: an erroring op must change nothing
        result = ops.apply_by_name(self.current, op, clean, insert=insert)
        post_hash = codecs_io.content_hash(result)
        new_journal = journal.append(self.journal, op, clean, post_hash)

        if ihash is not None:
            self.assets[ihash] = (clean.get("file", ""), insert)
        self.journal = new_journal
        self._stack.push(result)
        self._archive.append(result)
        self._flush()

    def undo(self) -> None:
        now = self._stack.undo()  # raises NothingToUndo without touching state
        self.journal = journal.append(
            self.journal, journal.UNDO, {}, codecs_io.content_hash(now))
        self._flush()

    def redo(self) -> None:
        now = self._stack.redo()
        self.journal = journal.append(
            self.journal, journal.REDO, {}, codecs_io.content_hash(now))
        self._flush()

    def export(self, file: str, format: str,
               quality: int = codecs_io.DEFAULT_JPEG_QUALITY) -> bytes:
        fmt = codecs_io.normalize_format(format)
        data = codecs_io.export_image(self.current, fmt, quality)
        self.journal = journal.append(
            self.journal, journal.EXPORT,
            {"file": file, "format": fmt, "quality": quality},
            codecs_io.content_hash(self.current))
        self._flush()
        return data

    # --- coherence ----------------------------------------------------------

    def check_invariant(self) -> None:
        """Replay the journal against the source and compare with current.

        This is the system's master invariant; tests call it after every
        action. Raises AssertionError on violation.
        """
        from . import replay  # late import: replay builds on session semantics

        final, report = replay.replay(self.journal, self.source,
                                      assets=self.replay_assets())
        assert report.passed, f"self-replay reported mismatch: {report.render_text()}"
        got = codecs_io.content_hash(final)
        want = codecs_io.content_hash(self.current)
        assert got == want, f"replayed hash {got[:8]} != current {want[:8]}"

    def replay_assets(self) -> dict[str, Raster]:
        return {h: raster for h, (_, raster) in self.assets.items()}

    def _flush(self) -> None:
        if self.journal_path:
            with open(self.journal_path, "w", encoding="utf-8") as fh:
                fh.write(journal.serialize(self.journal))


def open_session(source: Raster, name: str, journal_path: str | None = None) -> Session:
    return Session(source, name, journal_path)
