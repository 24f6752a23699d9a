import { describe, expect, it } from "vitest";

import { currentPosition, deriveHistory, parseEntryLines } from "../src/state.js";

const H = "a".repeat(64);

function journalOf(ops: string[]): string {
  const lines = [`SWIIM/1 source="a.png" hash=${H}`, `1 IMPORT file="a.png" hash=${H}`];
  ops.forEach((op, i) => lines.push(`${i + 2} ${op} hash=${H}`));
  return lines.join("\n") + "\n";
}

describe("parseEntryLines", () => {
  it("reads seq and op from every entry line", () => {
    const entries = parseEntryLines(journalOf(["EQUALIZE", "UNDO"]));
    expect(entries.map((e) => [e.seq, e.op])).toEqual(
      [[1, "IMPORT"], [2, "EQUALIZE"], [3, "UNDO"]]);
  });

  it("keeps the raw line verbatim", () => {
    const text = `SWIIM/1 source="a.png" hash=${H}\n1 IMPORT file="a.png" hash=${H}\n`;
    expect(parseEntryLines(text)[0].raw).toBe(`1 IMPORT file="a.png" hash=${H}`);
  });
});

describe("deriveHistory", () => {
  it("starts at the source", () => {
    const h = deriveHistory(parseEntryLines(journalOf([])));
    expect(h.states).toEqual([0]);
    expect(h.currentStep).toBe(0);
    expect(h.canUndo).toBe(false);
    expect(h.canRedo).toBe(false);
  });

  it("each image op adds a scrubber position", () => {
    const h = deriveHistory(parseEntryLines(journalOf(["EQUALIZE", "ROTATE"])));
    expect(h.states).toEqual([0, 2, 3]);
    expect(h.currentStep).toBe(3);
  });

  it("undo moves the view back without changing the scrubber range", () => {
    const before = deriveHistory(parseEntryLines(journalOf(["EQUALIZE"])));
    const after = deriveHistory(parseEntryLines(journalOf(["EQUALIZE", "UNDO"])));
    expect(after.states).toEqual(before.states); // max unchanged
    expect(after.currentStep).toBe(0);            // displayed state = source
    expect(after.canRedo).toBe(true);
    expect(currentPosition(after)).toBe(0);
  });

  it("redo restores the undone state", () => {
    const h = deriveHistory(parseEntryLines(journalOf(["EQUALIZE", "UNDO", "REDO"])));
    expect(h.currentStep).toBe(2);
    expect(h.canRedo).toBe(false);
  });

  it("a new op after undo drops the redo branch but keeps the record", () => {
    const h = deriveHistory(parseEntryLines(
      journalOf(["EQUALIZE", "ROTATE", "UNDO", "FLIP"])));
    // all three produced states stay scrubbable (every version is recorded)
    expect(h.states).toEqual([0, 2, 3, 5]);
    expect(h.currentStep).toBe(5);
    expect(h.canRedo).toBe(false);
    expect(h.canUndo).toBe(true);
  });

  it("EXPORT entries do not move the cursor or add states", () => {
    const h = deriveHistory(parseEntryLines(journalOf(["EQUALIZE", "EXPORT"])));
    expect(h.states).toEqual([0, 2]);
    expect(h.currentStep).toBe(2);
  });
});
