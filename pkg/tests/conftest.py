import random

import pytest

from swiim.raster import Raster


def random_raster(rng: random.Random, width: int | None = None,
                  height: int | None = None, max_side: int = 64) -> Raster:
    w = width if width is not None else rng.randint(1, max_side)
    h = height if height is not None else rng.randint(1, max_side)
    return Raster(w, h, rng.randbytes(w * h * 4))


def random_image_action(rng: random.Random, current: Raster):
    """A random valid image op for a raster of the given size.

    Returns (op, params, insert). Crops shave at most a quarter of each
    dimension so long action sequences keep workable rasters.
    """
    w, h = current.width, current.height
    hexd = "0123456789abcdef"
    choices = ["FLIP", "ROTATE", "BRIGHTNESS_CONTRAST", "COLOR_BALANCE",
               "HUE", "THRESHOLD", "EQUALIZE"]
    if w >= 2 and h >= 2:
        choices.append("CROP")
    if w >= 4 and h >= 4:
        choices.append("MELD")
    op = rng.choice(choices)
    if op == "FLIP":
        return op, {"axis": rng.choice(["horizontal", "vertical"])}, None
    if op == "ROTATE":
        return op, {"turns": rng.choice([1, 2, 3])}, None
    if op == "BRIGHTNESS_CONTRAST":
        return op, {"b": rng.uniform(-0.8, 0.8), "c": rng.uniform(-0.8, 0.8)}, None
    if op == "COLOR_BALANCE":
        return op, {"r": rng.uniform(0, 4), "g": rng.uniform(0, 4),
                    "b": rng.uniform(0, 4)}, None
    if op == "HUE":
        return op, {"deg": rng.uniform(-720, 720)}, None
    if op == "THRESHOLD":
        return op, {"t": rng.random()}, None
    if op == "EQUALIZE":
        return op, {}, None
    if op == "CROP":
        dx, dy = rng.randint(0, w // 8), rng.randint(0, h // 8)
        dw, dh = rng.randint(0, w // 8), rng.randint(0, h // 8)
        return op, {"x": dx, "y": dy, "w": w - dx - dw, "h": h - dy - dh}, None
    # MELD
    bw = rng.randint(0, 1)
    iw, ih = rng.randint(1, w // 2), rng.randint(1, h // 2)
    insert = random_raster(rng, iw, ih)
    x = rng.randint(bw, w - iw - bw)
    y = rng.randint(bw, h - ih - bw)
    color = "".join(rng.choice(hexd) for _ in range(8))
    return op, {"file": f"inset{rng.randint(0, 9)}.png", "x": x, "y": y,
                "bw": bw, "bcolor": color}, insert


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5117)
