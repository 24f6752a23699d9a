"""Command-line interface.

Exit codes are stable API:

    0  success (verify PASS, identical diff, ...)
    1  diff found differences
    2  usage or journal parse error
    3  source image does not match the journal header hash
    4  replay/verification mismatch
    5  I/O or codec failure

Diagnostics go to stderr; ``--json`` switches report output to JSON.
"""

from __future__ import annotations

import argparse
import json as json_lib
import os
import sys
from pathlib import Path

from . import codecs_io, journal, replay
from .errors import (
    CodecError,
    JournalError,
    ReplayError,
    SourceMismatch,
    SwiimError,
)
from .raster import Raster

EXIT_OK = 0
EXIT_DIFFERS = 1
EXIT_PARSE = 2
EXIT_SOURCE_MISMATCH = 3
EXIT_REPLAY_MISMATCH = 4
EXIT_IO = 5


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except JournalError as exc:
        print(f"journal error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SourceMismatch as exc:
        print(f"source mismatch: {exc}", file=sys.stderr)
        return EXIT_SOURCE_MISMATCH
    except ReplayError as exc:
        print(f"replay error: {exc}", file=sys.stderr)
        return EXIT_REPLAY_MISMATCH
    except (CodecError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SwiimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REPLAY_MISMATCH


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="swiim",
        description="Deterministic image editing with a replayable journal.")
    sub = p.add_subparsers(required=True, metavar="command")

    sp = sub.add_parser("apply", help="replay a journal and write the final image")
    sp.add_argument("journal")
    sp.add_argument("source")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--assets", help="directory of melded images", default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_apply)

    sp = sub.add_parser("verify", help="check that a claimed image comes from a source")
    sp.add_argument("journal")
    sp.add_argument("source")
    sp.add_argument("claimed")
    sp.add_argument("--assets", default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("step", help="materialize the state after the first N entries")
    sp.add_argument("journal")
    sp.add_argument("source")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--assets", default=None)
    sp.set_defaults(func=_cmd_step)

    sp = sub.add_parser("diff", help="pixel-compare two images")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_diff)

    sp = sub.add_parser("normalize", help="rewrite a journal without undo/redo")
    sp.add_argument("journal")
    sp.add_argument("source")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--assets", default=None)
    sp.set_defaults(func=_cmd_normalize)

    sp = sub.add_parser("log", help="pretty-print journal entries")
    sp.add_argument("journal")
    sp.set_defaults(func=_cmd_log)

    sp = sub.add_parser("serve", help="run the HTTP session service")
    sp.add_argument("--bind", default=os.environ.get("SWIIM_BIND", "127.0.0.1:8000"),
                    help="host:port (env SWIIM_BIND)")
    sp.add_argument("--max-upload", type=int,
                    default=int(os.environ.get("SWIIM_MAX_UPLOAD", 32 * 1024 * 1024)),
                    help="upload size cap in bytes (env SWIIM_MAX_UPLOAD)")
    sp.add_argument("--ttl", type=float,
                    default=float(os.environ.get("SWIIM_TTL", 3600)),
                    help="idle session lifetime in seconds (env SWIIM_TTL)")
    sp.add_argument("--ui", default=os.environ.get("SWIIM_UI_DIR"),
                    help="serve the browser UI from this directory (env SWIIM_UI_DIR)")
    sp.set_defaults(func=_cmd_serve)

    return p


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_image(path: str) -> Raster:
    raster, _, warnings = codecs_io.load_raster(path)
    for w in warnings:
        print(f"note: {path}: {w}", file=sys.stderr)
    return raster


def _load_assets(directory: str | None) -> dict[str, Raster]:
    assets: dict[str, Raster] = {}
    if not directory:
        return assets
    for entry in sorted(Path(directory).iterdir()):
        if not entry.is_file():
            continue
        try:
            raster, _, _ = codecs_io.load_raster(str(entry))
        except CodecError:
            continue  # non-image files in the directory are fine
        assets[codecs_io.content_hash(raster)] = raster
    return assets


def _write_image(path: str, raster: Raster) -> None:
    suffix = Path(path).suffix.lstrip(".") or "png"
    data = codecs_io.export_image(raster, codecs_io.normalize_format(suffix))
    Path(path).write_bytes(data)


def _cmd_apply(args) -> int:
    j = journal.parse(_read_text(args.journal))
    source = _load_image(args.source)
    final, report = replay.replay(j, source, assets=_load_assets(args.assets))
    if args.json:
        print(json_lib.dumps(report.to_dict(), indent=2))
    else:
        print(report.render_text())
    if not report.passed:
        print(f"replay mismatch first at seq {report.first_mismatch_seq}",
              file=sys.stderr)
        return EXIT_REPLAY_MISMATCH
    _write_image(args.output, final)
    return EXIT_OK


def _cmd_verify(args) -> int:
    j = journal.parse(_read_text(args.journal))
    source = _load_image(args.source)
    claimed = _load_image(args.claimed)
    verdict, report, d = replay.verify(j, source, claimed,
                                       assets=_load_assets(args.assets))
    if args.json:
        print(json_lib.dumps({"verdict": verdict, "replay": report.to_dict(),
                              "diff": d.to_dict()}, indent=2))
    else:
        print(report.render_text())
        print(f"claimed image: {d.render_text()}")
        print(verdict)
    if verdict != replay.PASS:
        if not report.passed:
            print(f"replay mismatch first at seq {report.first_mismatch_seq}",
                  file=sys.stderr)
        return EXIT_REPLAY_MISMATCH
    return EXIT_OK


def _cmd_step(args) -> int:
    j = journal.parse(_read_text(args.journal))
    source = _load_image(args.source)
    raster = replay.step(j, source, args.n, assets=_load_assets(args.assets))
    _write_image(args.output, raster)
    return EXIT_OK


def _cmd_diff(args) -> int:
    a = _load_image(args.a)
    b = _load_image(args.b)
    d = replay.diff(a, b)
    if args.json:
        print(json_lib.dumps(d.to_dict(), indent=2))
    else:
        print(d.render_text())
    return EXIT_OK if d.identical else EXIT_DIFFERS


def _cmd_normalize(args) -> int:
    j = journal.parse(_read_text(args.journal))
    source = _load_image(args.source)
    normalized = replay.normalize(j, source, assets=_load_assets(args.assets))
    Path(args.output).write_text(journal.serialize(normalized), encoding="utf-8")
    return EXIT_OK


def _cmd_log(args) -> int:
    j = journal.parse(_read_text(args.journal))
    print(f"source {j.source_name!r} hash {j.source_hash[:12]}…")
    for e in j.entries:
        params = " ".join(f"{k}={v}" for k, v in e.params.items())
        print(f"  {e.seq:>4}  {e.op:<20} {params}  -> {e.post_hash[:12]}…")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    host, _, port = args.bind.rpartition(":")
    app = create_app(ServiceConfig(
        max_upload_bytes=args.max_upload,
        session_ttl_seconds=args.ttl,
        static_dir=args.ui,
    ))
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
