"""The executable edit journal: data model, parser, canonical serializer.

A journal is line-oriented text. The first line binds the log to its
source image; every following line is one recorded action::

    SWIIM/1 source="cells.png" hash=<64 hex digits>
    1 IMPORT file="cells.png" hash=<64 hex>
    2 CROP x=10 y=20 w=100 h=80 hash=<64 hex>
    3 EXPORT file="fig1.png" format="png" quality=95 hash=<64 hex>

Canonical form is bit-exact: fixed key order per op, decimals with
exactly six fractional digits, lowercase hex digests, LF line endings.
``parse`` accepts a slightly wider surface (comments introduced by ``#``,
blank lines, reordered keys); ``serialize`` always emits canonical text,
so ``serialize(parse(t)) == t`` for canonical ``t``.

Every entry records the content hash of the raster *after* the action
(``hash=``, the last key on each line), which is what makes journals
verifiable step by step rather than only end to end.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import (
    DuplicateImport,
    InvariantViolation,
    JournalSyntaxError,
    SchemaError,
    SequenceError,
)

FORMAT_VERSION = 1
_MAGIC = f"SWIIM/{FORMAT_VERSION}"

# op names
IMPORT = "IMPORT"
CROP = "CROP"
ROTATE = "ROTATE"
FLIP = "FLIP"
BRIGHTNESS_CONTRAST = "BRIGHTNESS_CONTRAST"
COLOR_BALANCE = "COLOR_BALANCE"
HUE = "HUE"
THRESHOLD = "THRESHOLD"
EQUALIZE = "EQUALIZE"
MELD = "MELD"
UNDO = "UNDO"
REDO = "REDO"
EXPORT = "EXPORT"

# value kinds
INT = "integer"
DEC = "decimal"
STR = "string"
HEX = "hex64"
COLOR = "color"  # 8 lowercase hex digits (rrggbbaa), written as a quoted string

# Canonical parameter schema per op: (key, kind) in serialization order.
# The post-state hash is appended as the final `hash=` key on every line
# and lives in JournalEntry.post_hash, not in params.
PARAM_SCHEMAS: dict[str, tuple[tuple[str, str], ...]] = {
    IMPORT: (("file", STR),),
    CROP: (("x", INT), ("y", INT), ("w", INT), ("h", INT)),
    ROTATE: (("turns", INT),),
    FLIP: (("axis", STR),),
    BRIGHTNESS_CONTRAST: (("b", DEC), ("c", DEC)),
    COLOR_BALANCE: (("r", DEC), ("g", DEC), ("b", DEC)),
    HUE: (("deg", DEC),),
    THRESHOLD: (("t", DEC),),
    EQUALIZE: (),
    MELD: (("file", STR), ("ihash", HEX), ("x", INT), ("y", INT),
           ("bw", INT), ("bcolor", COLOR)),
    UNDO: (),
    REDO: (),
    EXPORT: (("file", STR), ("format", STR), ("quality", INT)),
}

#: ops that transform pixels and take part in undo history
IMAGE_OPS = frozenset({CROP, ROTATE, FLIP, BRIGHTNESS_CONTRAST, COLOR_BALANCE,
                       HUE, THRESHOLD, EQUALIZE, MELD})

_HEX64_RE = re.compile(r"[0-9a-f]{64}\Z")
_COLOR_RE = re.compile(r"[0-9a-f]{8}\Z")
_INT_RE = re.compile(r"-?[0-9]+\Z")
_DEC_RE = re.compile(r"-?[0-9]+\.[0-9]{6}\Z")


def is_content_hash(s: str) -> bool:
    """True for the textual form of a content hash: 64 lowercase hex digits."""
    return isinstance(s, str) and bool(_HEX64_RE.match(s))


def canonical_decimal(value: float) -> float:
    """Quantize to the journal's 6-fractional-digit grid.

    The returned float parses back from its canonical rendering to itself,
    so executing an op with the quantized value and replaying the journal
    are guaranteed to agree.
    """
    return float(f"{float(value):.6f}")


def format_decimal(value: float) -> str:
    return f"{value:.6f}"


@dataclass(frozen=True)
class JournalEntry:
    seq: int
    op: str
    params: Mapping[str, Any]
    post_hash: str

    def render(self) -> str:
        """One canonical journal line, without the trailing newline."""
        parts = [str(self.seq), self.op]
        for key, kind in PARAM_SCHEMAS[self.op]:
            parts.append(f"{key}={_format_value(kind, self.params[key])}")
        parts.append(f"hash={self.post_hash}")
        return " ".join(parts)


@dataclass(frozen=True)
class Journal:
    source_name: str
    source_hash: str
    entries: tuple[JournalEntry, ...] = field(default_factory=tuple)
    version: int = FORMAT_VERSION

    @classmethod
    def start(cls, source_name: str, source_hash: str) -> "Journal":
        """A fresh journal whose only entry is the binding IMPORT."""
        j = cls(source_name, source_hash)
        return append(j, IMPORT, {"file": source_name}, source_hash)


def append(j: Journal, op: str, params: Mapping[str, Any], post_hash: str) -> Journal:
    """Return a new Journal with one more entry; never mutates ``j``."""
    if op not in PARAM_SCHEMAS:
        raise SchemaError(f"unknown op {op!r}", op=op)
    if op == IMPORT and any(e.op == IMPORT for e in j.entries):
        raise DuplicateImport("journal already has an IMPORT entry")
    if op != IMPORT and not j.entries:
        raise SequenceError(f"cannot append {op} before IMPORT")
    if not is_content_hash(post_hash):
        raise SchemaError(f"post_hash {post_hash!r} is not 64 lowercase hex digits",
                          op=op, key="hash")
    seq = len(j.entries) + 1
    clean = validate_params(op, params, seq=seq)
    entry = JournalEntry(seq, op, clean, post_hash)
    return Journal(j.source_name, j.source_hash, j.entries + (entry,), j.version)


def validate_params(op: str, params: Mapping[str, Any], *, seq: int | None = None,
                    line: int | None = None) -> dict[str, Any]:
    """Check params against the op's schema; returns the canonical dict
    (decimals quantized to the 6-digit grid). Raises SchemaError."""
    if op not in PARAM_SCHEMAS:
        raise SchemaError(f"unknown op {op!r}", seq=seq, op=op, line=line)
    schema = PARAM_SCHEMAS[op]
    expected = [key for key, _ in schema]
    missing = [k for k in expected if k not in params]
    extra = [k for k in params if k not in expected]
    if missing:
        raise SchemaError(f"{op} entry is missing key '{missing[0]}'",
                          seq=seq, op=op, key=missing[0], line=line)
    if extra:
        raise SchemaError(f"{op} entry has unexpected key '{extra[0]}'",
                          seq=seq, op=op, key=extra[0], line=line)
    clean: dict[str, Any] = {}
    for key, kind in schema:
        clean[key] = _coerce_value(seq, op, key, kind, params[key], line)
    return clean


def _coerce_value(seq: int, op: str, key: str, kind: str, value: Any,
                  line: int | None) -> Any:
    def bad(detail: str) -> SchemaError:
        return SchemaError(f"{op} {key}={value!r}: {detail}",
                           seq=seq, op=op, key=key, line=line)

    if kind == INT:
        if isinstance(value, bool) or not isinstance(value, int):
            raise bad("expected an integer")
        return value
    if kind == DEC:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise bad("expected a decimal")
        return canonical_decimal(value)
    if kind == STR:
        if not isinstance(value, str):
            raise bad("expected a string")
        if any(ord(c) < 0x20 for c in value):
            raise bad("control characters are not allowed in strings")
        return value
    if kind == HEX:
        if not is_content_hash(value):
            raise bad("expected 64 lowercase hex digits")
        return value
    if kind == COLOR:
        if not (isinstance(value, str) and _COLOR_RE.match(value)):
            raise bad("expected 8 lowercase hex digits (rrggbbaa)")
        return value
    raise AssertionError(f"unhandled kind {kind}")


# --- serialization --------------------------------------------------------


def serialize(j: Journal) -> str:
    """Canonical text; raises InvariantViolation on a malformed Journal."""
    _check_invariants(j)
    lines = [f'{_MAGIC} source={_quote(j.source_name)} hash={j.source_hash}']
    for entry in j.entries:
        lines.append(entry.render())
    return "\n".join(lines) + "\n"


def _check_invariants(j: Journal) -> None:
    if j.version != FORMAT_VERSION:
        raise InvariantViolation(f"unsupported journal version {j.version}")
    if not is_content_hash(j.source_hash):
        raise InvariantViolation("header hash is not 64 lowercase hex digits")
    if not j.entries:
        raise InvariantViolation("journal has no entries (IMPORT is required)")
    if j.entries[0].op != IMPORT:
        raise InvariantViolation("first entry must be IMPORT")
    if sum(1 for e in j.entries if e.op == IMPORT) > 1:
        raise InvariantViolation("journal has more than one IMPORT")
    if j.entries[0].post_hash != j.source_hash:
        raise InvariantViolation("IMPORT hash differs from header hash")
    for i, entry in enumerate(j.entries):
        if entry.seq != i + 1:
            raise InvariantViolation(
                f"entry {i + 1} has seq {entry.seq}; seq must be contiguous from 1")
        try:
            validate_params(entry.op, entry.params, seq=entry.seq)
        except SchemaError as exc:
            raise InvariantViolation(str(exc)) from exc
        if not is_content_hash(entry.post_hash):
            raise InvariantViolation(f"entry {entry.seq} post_hash is malformed")


def _format_value(kind: str, value: Any) -> str:
    if kind == INT:
        return str(value)
    if kind == DEC:
        return format_decimal(value)
    if kind in (STR,):
        return _quote(value)
    if kind == COLOR:
        return _quote(value)
    if kind == HEX:
        return value
    raise AssertionError(f"unhandled kind {kind}")


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


# --- parsing ---------------------------------------------------------------


def parse(text: str) -> Journal:
    """Parse journal text, validating grammar, schemas and sequencing."""
    header: tuple[str, str] | None = None
    entries: list[JournalEntry] = []
    import_seen = False

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = _strip_comment(raw.rstrip("\r"), lineno)
        if not line.strip():
            continue
        if header is None:
            header = _parse_header(line, lineno)
            continue
        seq, op, pairs = _parse_entry_line(line, lineno)
        if op not in PARAM_SCHEMAS:
            raise SchemaError(f"unknown op {op!r}", seq=seq, op=op, line=lineno)
        if seq != len(entries) + 1:
            raise SequenceError(
                f"line {lineno}: seq {seq} breaks contiguity (expected {len(entries) + 1})",
                line=lineno)
        if "hash" not in pairs:
            raise SchemaError(f"{op} entry is missing key 'hash'",
                              seq=seq, op=op, key="hash", line=lineno)
        post_hash = _parse_value(seq, op, "hash", HEX, pairs.pop("hash"), lineno)
        expected = {k for k, _ in PARAM_SCHEMAS[op]}
        for key in pairs:
            if key not in expected:
                raise SchemaError(f"{op} entry has unexpected key '{key}'",
                                  seq=seq, op=op, key=key, line=lineno)
        params = {key: _parse_value(seq, op, key, _kind_for(op, key), raw_value, lineno)
                  for key, raw_value in pairs.items()}
        params = validate_params(op, params, seq=seq, line=lineno)
        if not entries and op != IMPORT:
            raise SequenceError(f"line {lineno}: journal must start with IMPORT",
                                line=lineno)
        if op == IMPORT:
            if import_seen:
                raise SequenceError(f"line {lineno}: duplicate IMPORT", line=lineno)
            import_seen = True
            if post_hash != header[1]:
                raise SequenceError(
                    f"line {lineno}: IMPORT hash does not match header hash",
                    line=lineno)
        entries.append(JournalEntry(seq, op, params, post_hash))

    if header is None:
        raise JournalSyntaxError("missing header", 1, 1)
    if not entries:
        raise SequenceError("journal has no entries (IMPORT is required)", line=1)
    return Journal(header[0], header[1], tuple(entries))


def _kind_for(op: str, key: str) -> str:
    for k, kind in PARAM_SCHEMAS[op]:
        if k == key:
            return kind
    return STR  # unexpected key: typed as string, rejected by validate_params


def _strip_comment(raw: str, lineno: int) -> str:
    out = []
    in_quote = False
    escaped = False
    for ch in raw:
        if in_quote:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_quote = False
        elif ch == '"':
            in_quote = True
        elif ch == "#":
            break
        out.append(ch)
    return "".join(out)


def _parse_header(line: str, lineno: int) -> tuple[str, str]:
    prefix = f"{_MAGIC} source="
    if not line.startswith(prefix):
        if line.startswith("SWIIM/"):
            raise JournalSyntaxError(
                f"unsupported journal version (expected {_MAGIC})", lineno, 7)
        raise JournalSyntaxError(f"missing header (expected '{prefix}...')", lineno, 1)
    pos = len(prefix)
    name, pos = _scan_quoted(line, pos, lineno)
    hash_key = " hash="
    if not line.startswith(hash_key, pos):
        raise JournalSyntaxError("expected ' hash=' after source", lineno, pos + 1)
    pos += len(hash_key)
    digest = line[pos:pos + 64]
    if not is_content_hash(digest):
        raise JournalSyntaxError("header hash must be 64 lowercase hex digits",
                                 lineno, pos + 1)
    if line[pos + 64:].strip():
        raise JournalSyntaxError("trailing characters after header hash",
                                 lineno, pos + 65)
    return name, digest


def _parse_entry_line(line: str, lineno: int) -> tuple[int, str, dict[str, str]]:
    """Split an entry line into seq, opname, and raw key=value strings."""
    pos = 0
    end = len(line)

    def skip_spaces(p: int) -> int:
        while p < end and line[p] == " ":
            p += 1
        return p

    pos = skip_spaces(pos)
    m = re.compile(r"[0-9]+").match(line, pos)
    if not m:
        raise JournalSyntaxError("expected entry sequence number", lineno, pos + 1)
    seq = int(m.group())
    pos = m.end()
    pos = skip_spaces(pos)
    m = re.compile(r"[A-Z_]+").match(line, pos)
    if not m:
        raise JournalSyntaxError("expected op name", lineno, pos + 1)
    op = m.group()
    pos = m.end()

    pairs: dict[str, str] = {}
    while True:
        pos = skip_spaces(pos)
        if pos >= end:
            break
        m = re.compile(r"([a-z_]+)=").match(line, pos)
        if not m:
            raise JournalSyntaxError("expected key=value", lineno, pos + 1)
        key = m.group(1)
        if key in pairs:
            raise JournalSyntaxError(f"duplicate key '{key}'", lineno, pos + 1)
        pos = m.end()
        if pos < end and line[pos] == '"':
            value, pos = _scan_quoted(line, pos, lineno)
            # keep the quotes as a marker for the typed-value parser
            value = '"' + value
        else:
            m = re.compile(r"[^ ]+").match(line, pos)
            if not m:
                raise JournalSyntaxError(f"missing value for '{key}'", lineno, pos + 1)
            value = m.group()
            pos = m.end()
        pairs[key] = value
    return seq, op, pairs


def _scan_quoted(line: str, pos: int, lineno: int) -> tuple[str, int]:
    """Scan a quoted string starting at ``line[pos]``; returns (value, next_pos)."""
    if pos >= len(line) or line[pos] != '"':
        raise JournalSyntaxError("expected opening quote", lineno, pos + 1)
    start = pos
    pos += 1
    out: list[str] = []
    while pos < len(line):
        ch = line[pos]
        if ch == "\\":
            if pos + 1 >= len(line) or line[pos + 1] not in ('"', "\\"):
                raise JournalSyntaxError("invalid escape (only \\\" and \\\\ allowed)",
                                         lineno, pos + 1)
            out.append(line[pos + 1])
            pos += 2
        elif ch == '"':
            return "".join(out), pos + 1
        elif ord(ch) < 0x20:
            raise JournalSyntaxError("control character inside string", lineno, pos + 1)
        else:
            out.append(ch)
            pos += 1
    raise JournalSyntaxError("unterminated string", lineno, start + 1)


def _parse_value(seq: int, op: str, key: str, kind: str, raw: str, lineno: int) -> Any:
    def bad(detail: str) -> SchemaError:
        return SchemaError(f"{op} {key}={raw!r}: {detail}",
                           seq=seq, op=op, key=key, line=lineno)

    quoted = raw.startswith('"')
    body = raw[1:] if quoted else raw
    if kind == INT:
        if quoted or not _INT_RE.match(body):
            raise bad("expected an integer")
        return int(body)
    if kind == DEC:
        if quoted or not _DEC_RE.match(body):
            raise bad("expected a decimal with 6 fractional digits")
        return float(body)
    if kind == HEX:
        if quoted or not is_content_hash(body):
            raise bad("expected 64 lowercase hex digits")
        return body
    if kind in (STR, COLOR):
        if not quoted:
            raise bad("expected a quoted string")
        return body
    raise AssertionError(f"unhandled kind {kind}")

