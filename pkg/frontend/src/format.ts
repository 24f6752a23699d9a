/**
 * Canonical readout formatting.
 *
 * Control readouts must match the journal's canonical serialization
 * character for character: decimals carry exactly six fractional
 * digits, colors are lowercase rrggbbaa hex.
 */

export function canonicalDecimal(value: number): string {
  return value.toFixed(6);
}

export function clampInt(value: number, min: number, max: number): number {
  const v = Math.round(value);
  return Math.min(max, Math.max(min, v));
}

/** "#rrggbb" + alpha 0-255 into the journal's rrggbbaa form. */
export function colorToHex8(cssHex: string, alpha: number): string {
  const rgb = cssHex.replace(/^#/, "").toLowerCase();
  if (!/^[0-9a-f]{6}$/.test(rgb)) {
    throw new Error(`not a #rrggbb color: ${cssHex}`);
  }
  const a = clampInt(alpha, 0, 255).toString(16).padStart(2, "0");
  return rgb + a;
}

/** Short hash prefix for display next to journal entries. */
export function hashPrefix(hex64: string, n = 8): string {
  return hex64.slice(0, n);
}
