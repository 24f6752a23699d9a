/**
 * Crop-by-drag geometry.
 *
 * The mouse works in displayed-element pixels; CROP entries want
 * integer image coordinates. Everything here is pure math so the exact
 * numbers that reach the journal are unit-testable.
 */

export interface DragRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

/**
 * Normalize a drag from (x0,y0) to (x1,y1) in *image* coordinates into
 * an integer rect clamped to the image bounds. Returns null for drags
 * that round to zero area (the submit control stays disabled).
 */
export function normalizeDrag(
  x0: number, y0: number, x1: number, y1: number,
  imageW: number, imageH: number,
): DragRect | null {
  let left = Math.min(x0, x1);
  let top = Math.min(y0, y1);
  let right = Math.max(x0, x1);
  let bottom = Math.max(y0, y1);

  left = Math.max(0, Math.round(left));
  top = Math.max(0, Math.round(top));
  right = Math.min(imageW, Math.round(right));
  bottom = Math.min(imageH, Math.round(bottom));

  const w = right - left;
  const h = bottom - top;
  if (w < 1 || h < 1) {
    return null;
  }
  return { x: left, y: top, w, h };
}

/** Displayed-element coordinates into image coordinates. */
export function toImageCoords(
  elementX: number, elementY: number,
  displayedW: number, displayedH: number,
  imageW: number, imageH: number,
): { x: number; y: number } {
  return {
    x: elementX * (imageW / displayedW),
    y: elementY * (imageH / displayedH),
  };
}
