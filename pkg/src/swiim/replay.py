"""Re-execute journals: full replay, stepping, verification, normalization.

Replay is what turns a journal from documentation into evidence: run the
entries against the retained source raster, hash the state after each
one, and compare with the hash the journal recorded at edit time. A
mismatch pinpoints the first entry where the claimed history and the
actual computation diverge; execution continues past mismatches so the
report localizes *all* divergences rather than aborting at the first.

Journals that meld other images need those images to re-execute; pass
them in ``assets``, keyed by content hash (the MELD entry's ``ihash``).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Mapping

from . import codecs_io, journal, ops
from .errors import (
    EntryExecutionError,
    IndexOutOfRange,
    MissingAsset,
    SourceMismatch,
    SwiimError,
)
from .history import SnapshotStack
from .raster import Raster

PASS = "PASS"
FAIL = "FAIL"


@dataclass(frozen=True)
class EntryRecord:
    seq: int
    op: str
    computed_hash: str
    recorded_hash: str
    match: bool
    elapsed: float  # seconds spent executing this entry

    def render(self) -> str:
        status = "MATCH" if self.match else "MISMATCH"
        return (f"{self.seq} {self.op} computed={self.computed_hash[:8]} "
                f"recorded={self.recorded_hash[:8]} {status}")


@dataclass(frozen=True)
class ReplayReport:
    records: tuple[EntryRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.match for r in self.records)

    @property
    def verdict(self) -> str:
        return PASS if self.passed else FAIL

    @property
    def first_mismatch_seq(self) -> int | None:
        for r in self.records:
            if not r.match:
                return r.seq
        return None

    def render_text(self) -> str:
        return "\n".join(r.render() for r in self.records)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "first_mismatch_seq": self.first_mismatch_seq,
            "entries": [
                {"seq": r.seq, "op": r.op, "computed": r.computed_hash,
                 "recorded": r.recorded_hash, "match": r.match,
                 "elapsed_s": r.elapsed}
                for r in self.records
            ],
        }


@dataclass(frozen=True)
class DiffReport:
    dims_match: bool
    identical: bool
    differing_pixel_count: int = 0
    max_channel_delta: int = 0

    def render_text(self) -> str:
        if not self.dims_match:
            return "dimensions differ"
        if self.identical:
            return "identical"
        return (f"{self.differing_pixel_count} differing pixels, "
                f"max channel delta {self.max_channel_delta}")

    def to_dict(self) -> dict:
        return {
            "dims_match": self.dims_match,
            "identical": self.identical,
            "differing_pixel_count": self.differing_pixel_count,
            "max_channel_delta": self.max_channel_delta,
        }


class _Executor:
    """Shared entry-by-entry state machine for replay/step/normalize."""

    def __init__(self, j: journal.Journal, source: Raster,
                 assets: Mapping[str, Raster] | None):
        got = codecs_io.content_hash(source)
        if got != j.source_hash:
            raise SourceMismatch(
                f"journal is bound to source {j.source_hash[:8]}… "
                f"but the given image hashes to {got[:8]}…")
        self.journal = j
        self.assets = dict(assets or {})
        self.stack: SnapshotStack[Raster] = SnapshotStack(source)

    def execute(self, entry: journal.JournalEntry) -> Raster:
        """Advance state by one entry; returns the post-entry raster."""
        op = entry.op
        try:
            if op in journal.IMAGE_OPS:
                insert = None
                if op == journal.MELD:
                    insert = self._resolve_insert(entry)
                result = ops.apply_by_name(self.stack.current, op, entry.params,
                                           insert=insert)
                self.stack.push(result)
            elif op == journal.UNDO:
                self.stack.undo()
            elif op == journal.REDO:
                self.stack.redo()
            # IMPORT and EXPORT leave the pixel state untouched
        except SwiimError as exc:
            raise EntryExecutionError(entry.seq, op, exc) from exc
        return self.stack.current

    def _resolve_insert(self, entry: journal.JournalEntry) -> Raster:
        ihash = entry.params["ihash"]
        try:
            return self.assets[ihash]
        except KeyError:
            name = entry.params.get("file", "")
            raise MissingAsset(
                f"melded image {name!r} ({ihash[:8]}…) not supplied; "
                f"pass it via assets") from None


def replay(j: journal.Journal, source: Raster,
           assets: Mapping[str, Raster] | None = None) -> tuple[Raster, ReplayReport]:
    """Execute every entry, verifying each recorded post-state hash."""
    ex = _Executor(j, source, assets)
    records = []
    for entry in j.entries:
        t0 = time.perf_counter()
        state = ex.execute(entry)
        computed = codecs_io.content_hash(state)
        elapsed = time.perf_counter() - t0
        records.append(EntryRecord(entry.seq, entry.op, computed,
                                   entry.post_hash, computed == entry.post_hash,
                                   elapsed))
    return ex.stack.current, ReplayReport(tuple(records))


def step(j: journal.Journal, source: Raster, n: int,
         assets: Mapping[str, Raster] | None = None) -> Raster:
    """State after the first ``n`` entries (n=0 is the source itself)."""
    if not 0 <= n <= len(j.entries):
        raise IndexOutOfRange(
            f"step {n} outside [0, {len(j.entries)}]")
    ex = _Executor(j, source, assets)
    for entry in j.entries[:n]:
        ex.execute(entry)
    return ex.stack.current


def verify(j: journal.Journal, source: Raster, claimed: Raster,
           assets: Mapping[str, Raster] | None = None
           ) -> tuple[str, ReplayReport, DiffReport]:
    """Reviewer check: does replaying the journal produce ``claimed``?"""
    final, report = replay(j, source, assets)
    d = diff(final, claimed)
    verdict = PASS if report.passed and d.identical else FAIL
    return verdict, report, d


def diff(a: Raster, b: Raster) -> DiffReport:
    if a.width != b.width or a.height != b.height:
        return DiffReport(dims_match=False, identical=False)
    if a.pixels == b.pixels:
        return DiffReport(dims_match=True, identical=True)
    count = 0
    max_delta = 0
    pa, pb = a.pixels, b.pixels
    for i in range(0, len(pa), 4):
        px_differs = False
        for c in range(4):
            delta = pa[i + c] - pb[i + c]
            if delta:
                px_differs = True
                if delta < 0:
                    delta = -delta
                if delta > max_delta:
                    max_delta = delta
        if px_differs:
            count += 1
    return DiffReport(dims_match=True, identical=False,
                      differing_pixel_count=count, max_channel_delta=max_delta)


def normalize(j: journal.Journal, source: Raster,
              assets: Mapping[str, Raster] | None = None) -> journal.Journal:
    """Rewrite a journal into the minimal linear history with the same result.

    UNDO/REDO disappear; ops they cancelled disappear with them. EXPORT
    entries survive when the state they exported is on the surviving
    path. Post-state hashes are recomputed by executing the surviving
    ops, so the output is a valid journal in its own right.
    """
    # Walk the log with the session's own cursor semantics, tracking for
    # every state node the entry that created it and exports taken there.
    @dataclass
    class _Node:
        creator: journal.JournalEntry | None
        exports: list[journal.JournalEntry] = field(default_factory=list)

    ex = _Executor(j, source, assets)
    nodes: SnapshotStack[_Node] = SnapshotStack(_Node(None))
    for entry in j.entries:
        ex.execute(entry)  # validates the log as we go
        if entry.op in journal.IMAGE_OPS:
            nodes.push(_Node(entry))
        elif entry.op == journal.UNDO:
            nodes.undo()
        elif entry.op == journal.REDO:
            nodes.redo()
        elif entry.op == journal.EXPORT:
            nodes.current.exports.append(entry)

    surviving = nodes.linear()

    out = journal.Journal.start(j.source_name, j.source_hash)
    ex2 = _Executor(out, source, assets)
    state_hash = j.source_hash
    for node in surviving:
        if node.creator is not None:
            entry = node.creator
            state = ex2.execute(entry)
            state_hash = codecs_io.content_hash(state)
            out = journal.append(out, entry.op, entry.params, state_hash)
        for export in node.exports:
            out = journal.append(out, journal.EXPORT, export.params, state_hash)
    return out
