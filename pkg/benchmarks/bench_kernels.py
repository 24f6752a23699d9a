#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--size 512] [--repeat 5]

Both backends produce byte-identical output (the test suite enforces
it); this script only reports how much time the compiled path saves.
"""

import argparse
import math
import random
import time

from swiim.kernels import _pure

try:
    from swiim.kernels import _hot
except ImportError:
    _hot = None


def build_cases(size: int):
    rng = random.Random(20260810)
    w = h = size
    buf = rng.randbytes(w * h * 4)
    lut = bytes((math.floor(min(1.0, v / 255.0 * 1.3) * 255.0 + 0.5))
                for v in range(256))
    iw, ih = w // 3, h // 3
    insert = rng.randbytes(iw * ih * 4)
    return [
        ("crop (center half)", lambda k: k.crop(buf, w, h, w // 4, h // 4, w // 2, h // 2)),
        ("rotate 90", lambda k: k.rotate(buf, w, h, 1)),
        ("rotate 180", lambda k: k.rotate(buf, w, h, 2)),
        ("flip horizontal", lambda k: k.flip(buf, w, h, True)),
        ("flip vertical", lambda k: k.flip(buf, w, h, False)),
        ("apply_luts (tone)", lambda k: k.apply_luts(buf, w, h, lut, lut, lut)),
        ("threshold", lambda k: k.threshold(buf, w, h, 127.5)),
        ("histograms", lambda k: k.channel_histograms(buf, w, h)),
        ("meld (third, border 2)", lambda k: k.meld(buf, w, h, insert, iw, ih,
                                                    w // 4, h // 4, 2, 0, 0, 0, 255)),
        ("hue_rotate 137deg", lambda k: k.hue_rotate(buf, w, h, 137.0)),
    ]


def best_of(fn, repeat: int) -> float:
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=512, help="square image side")
    ap.add_argument("--repeat", type=int, default=5, help="best-of repetitions")
    args = ap.parse_args()

    cases = build_cases(args.size)
    print(f"image: {args.size}x{args.size} RGBA, best of {args.repeat}")
    if _hot is None:
        print("compiled backend not built; timing pure backend only\n")
    header = f"{'kernel':<26}{'pure':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, call in cases:
        t_pure = best_of(lambda: call(_pure), args.repeat)
        if _hot is not None:
            t_hot = best_of(lambda: call(_hot), args.repeat)
            assert call(_pure) == call(_hot), f"backend mismatch in {name}"
            print(f"{name:<26}{t_pure * 1e3:>10.2f}ms{t_hot * 1e3:>10.2f}ms"
                  f"{t_pure / t_hot:>9.1f}x")
        else:
            print(f"{name:<26}{t_pure * 1e3:>10.2f}ms{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
