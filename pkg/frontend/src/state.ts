/**
 * Client-side view of the session, derived from server responses only.
 *
 * The journal text is kept verbatim for the panel; for navigation we
 * read just each line's sequence number and op name and re-enact the
 * cursor rules (image ops push a state, UNDO/REDO move the cursor, a
 * push while undone drops the redo branch). That gives the history
 * scrubber its positions without ever touching pixels: every state is
 * fetched from the server as the post-state of the entry that created
 * it.
 */

export interface SessionResource {
  id: string;
  width: number;
  height: number;
  journal: string;
  history_length: number;
  undo_depth: number;
}

export interface EntryLine {
  seq: number;
  op: string;
  raw: string;
}

const IMAGE_OPS = new Set([
  "CROP", "ROTATE", "FLIP", "BRIGHTNESS_CONTRAST", "COLOR_BALANCE",
  "HUE", "THRESHOLD", "EQUALIZE", "MELD",
]);

export function parseEntryLines(journalText: string): EntryLine[] {
  const lines = journalText.split("\n");
  const entries: EntryLine[] = [];
  for (const raw of lines.slice(1)) { // line 0 is the header
    if (!raw.trim()) continue;
    const m = /^(\d+) ([A-Z_]+)/.exec(raw);
    if (!m) continue; // tolerate comments; the panel still shows them verbatim
    entries.push({ seq: Number(m[1]), op: m[2], raw });
  }
  return entries;
}

export interface History {
  /** journal step that renders each recorded state, in creation order;
   *  index 0 is the source image (step 0). */
  states: number[];
  /** journal step of the state currently shown as "current". */
  currentStep: number;
  canUndo: boolean;
  canRedo: boolean;
}

export function deriveHistory(entries: EntryLine[]): History {
  const archive: number[] = [0];
  const stack: number[] = [0];
  let cursor = 0;
  for (const e of entries) {
    if (IMAGE_OPS.has(e.op)) {
      stack.length = cursor + 1; // drop the redo branch
      stack.push(e.seq);
      cursor = stack.length - 1;
      archive.push(e.seq);
    } else if (e.op === "UNDO") {
      cursor = Math.max(0, cursor - 1);
    } else if (e.op === "REDO") {
      cursor = Math.min(stack.length - 1, cursor + 1);
    }
    // IMPORT/EXPORT do not move the cursor
  }
  return {
    states: archive,
    currentStep: stack[cursor],
    canUndo: cursor > 0,
    canRedo: cursor < stack.length - 1,
  };
}

/** Scrubber position of the current state (archive order). */
export function currentPosition(h: History): number {
  return h.states.indexOf(h.currentStep);
}
