/**
 * DOM wiring for the editing client.
 *
 * Ground rules, enforced by construction:
 *  - pixels come only from GET image?state=n; nothing is computed here;
 *  - one committed gesture = one POST; sliders commit on release;
 *  - the journal panel shows the GET /journal response verbatim;
 *  - the UI repaints only from server responses (no optimistic state).
 */

import { SessionApi, decodeBase64, encodeBase64 } from "./api.js";
import type { ApiError } from "./api.js";
import { normalizeDrag, toImageCoords } from "./crop.js";
import type { DragRect } from "./crop.js";
import { canonicalDecimal, clampInt, colorToHex8 } from "./format.js";
import { currentPosition, deriveHistory, parseEntryLines } from "./state.js";
import type { History } from "./state.js";

const api = new SessionApi("");

interface Ui {
  sessionId: string | null;
  imageW: number;
  imageH: number;
  journal: string;
  history: History;
  viewStep: number | null; // non-null while scrubbing a past state
  pendingCrop: DragRect | null;
  meldFile: { name: string; b64: string } | null;
}

const ui: Ui = {
  sessionId: null,
  imageW: 0,
  imageH: 0,
  journal: "",
  history: { states: [0], currentStep: 0, canUndo: false, canRedo: false },
  viewStep: null,
  pendingCrop: null,
  meldFile: null,
};

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
};

const imageEl = $<HTMLImageElement>("image");
const stageEl = $<HTMLDivElement>("stage");
const selectionEl = $<HTMLDivElement>("selection");
const journalEl = $<HTMLPreElement>("journal");
const bannerEl = $<HTMLDivElement>("banner");
const scrubberEl = $<HTMLInputElement>("scrubber");
const scrubberLabel = $<HTMLSpanElement>("scrubber-label");
const cropReadout = $<HTMLSpanElement>("crop-readout");
const cropApply = $<HTMLButtonElement>("crop-apply");

function showError(err: unknown): void {
  const e = err as ApiError;
  const text = e && e.code
    ? `${e.code}: ${e.message}${e.seq != null ? ` (entry ${e.seq})` : ""}`
    : `connection error: ${String(err)}`;
  bannerEl.textContent = text;
  bannerEl.classList.remove("hidden");
}

function clearError(): void {
  bannerEl.classList.add("hidden");
}

/** Refresh journal + history + displayed image from the server. */
async function refresh(): Promise<void> {
  if (!ui.sessionId) return;
  ui.journal = await api.journalText(ui.sessionId); // panel shows this verbatim
  journalEl.textContent = ui.journal;
  ui.history = deriveHistory(parseEntryLines(ui.journal));
  ui.viewStep = null;
  const maxPos = ui.history.states.length - 1;
  scrubberEl.max = String(maxPos);
  scrubberEl.value = String(currentPosition(ui.history));
  scrubberLabel.textContent = `${currentPosition(ui.history)}/${maxPos}`;
  ($<HTMLButtonElement>("undo")).disabled = !ui.history.canUndo;
  ($<HTMLButtonElement>("redo")).disabled = !ui.history.canRedo;
  showStep(ui.history.currentStep);
}

function showStep(step: number): void {
  if (!ui.sessionId) return;
  imageEl.src = api.imageUrl(ui.sessionId, step);
}

async function mutate(action: () => Promise<unknown>): Promise<void> {
  if (!ui.sessionId) return;
  clearError();
  try {
    await action();
    clearSelection(); // state changed; any selection is stale
    await refresh();
  } catch (err) {
    // op errors keep the selection so the user can correct and resubmit
    showError(err);
    const e = err as ApiError;
    if (!e || !e.status) {
      return; // connection error: leave the view as-is
    }
    await refresh().catch(showError);
  }
}

function applyOp(op: string, params: Record<string, string | number>): Promise<void> {
  return mutate(() => api.applyOp(ui.sessionId!, { op, params }));
}

// --- session open -----------------------------------------------------------

$<HTMLInputElement>("file-input").addEventListener("change", async (ev) => {
  const input = ev.target as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  clearError();
  try {
    const resource = await api.createSession(file, file.name);
    ui.sessionId = resource.id;
    ui.imageW = resource.width;
    ui.imageH = resource.height;
    $<HTMLDivElement>("editor").classList.remove("hidden");
    await refresh();
  } catch (err) {
    showError(err);
  }
});

// --- track image dimensions (ops can change them) -----------------------------

imageEl.addEventListener("load", () => {
  ui.imageW = imageEl.naturalWidth;
  ui.imageH = imageEl.naturalHeight;
});

// --- crop by drag -------------------------------------------------------------

let dragStart: { x: number; y: number } | null = null;

function eventImagePoint(ev: MouseEvent): { x: number; y: number } {
  const rect = imageEl.getBoundingClientRect();
  return toImageCoords(
    ev.clientX - rect.left, ev.clientY - rect.top,
    rect.width, rect.height, ui.imageW, ui.imageH);
}

stageEl.addEventListener("mousedown", (ev) => {
  if (!ui.sessionId || ui.viewStep !== null) return;
  dragStart = eventImagePoint(ev);
  ev.preventDefault();
});

window.addEventListener("mousemove", (ev) => {
  if (!dragStart) return;
  const here = eventImagePoint(ev);
  updateSelection(normalizeDrag(dragStart.x, dragStart.y, here.x, here.y,
                                ui.imageW, ui.imageH));
});

window.addEventListener("mouseup", (ev) => {
  if (!dragStart) return;
  const here = eventImagePoint(ev);
  updateSelection(normalizeDrag(dragStart.x, dragStart.y, here.x, here.y,
                                ui.imageW, ui.imageH));
  dragStart = null;
});

function updateSelection(rect: DragRect | null): void {
  ui.pendingCrop = rect;
  cropApply.disabled = rect === null; // zero-area drags cannot be submitted
  if (!rect) {
    selectionEl.classList.add("hidden");
    cropReadout.textContent = "drag on the image";
    return;
  }
  cropReadout.textContent = `x=${rect.x} y=${rect.y} w=${rect.w} h=${rect.h}`;
  const disp = imageEl.getBoundingClientRect();
  const sx = disp.width / ui.imageW;
  const sy = disp.height / ui.imageH;
  selectionEl.style.left = `${rect.x * sx}px`;
  selectionEl.style.top = `${rect.y * sy}px`;
  selectionEl.style.width = `${rect.w * sx}px`;
  selectionEl.style.height = `${rect.h * sy}px`;
  selectionEl.classList.remove("hidden");
}

function clearSelection(): void {
  updateSelection(null);
}

cropApply.addEventListener("click", () => {
  const r = ui.pendingCrop;
  if (!r) return;
  void applyOp("CROP", { x: r.x, y: r.y, w: r.w, h: r.h });
});

// --- transform buttons -----------------------------------------------------------

for (const turns of [1, 2, 3]) {
  $<HTMLButtonElement>(`rotate-${turns}`).addEventListener(
    "click", () => void applyOp("ROTATE", { turns }));
}
$<HTMLButtonElement>("flip-h").addEventListener(
  "click", () => void applyOp("FLIP", { axis: "horizontal" }));
$<HTMLButtonElement>("flip-v").addEventListener(
  "click", () => void applyOp("FLIP", { axis: "vertical" }));
$<HTMLButtonElement>("equalize").addEventListener(
  "click", () => void applyOp("EQUALIZE", {}));

// --- sliders: live readout, commit on release --------------------------------------

interface SliderSpec {
  id: string;
  readout: (v: number) => string;
  commit: () => void;
}

function sliderValue(id: string): number {
  return Number($<HTMLInputElement>(id).value);
}

const sliders: SliderSpec[] = [
  {
    id: "brightness",
    readout: canonicalDecimal,
    commit: () => void applyOp("BRIGHTNESS_CONTRAST", {
      b: sliderValue("brightness"), c: sliderValue("contrast"),
    }),
  },
  {
    id: "contrast",
    readout: canonicalDecimal,
    commit: () => void applyOp("BRIGHTNESS_CONTRAST", {
      b: sliderValue("brightness"), c: sliderValue("contrast"),
    }),
  },
  {
    id: "gain-r",
    readout: canonicalDecimal,
    commit: () => void applyOp("COLOR_BALANCE", {
      r: sliderValue("gain-r"), g: sliderValue("gain-g"), b: sliderValue("gain-b"),
    }),
  },
  {
    id: "gain-g",
    readout: canonicalDecimal,
    commit: () => void applyOp("COLOR_BALANCE", {
      r: sliderValue("gain-r"), g: sliderValue("gain-g"), b: sliderValue("gain-b"),
    }),
  },
  {
    id: "gain-b",
    readout: canonicalDecimal,
    commit: () => void applyOp("COLOR_BALANCE", {
      r: sliderValue("gain-r"), g: sliderValue("gain-g"), b: sliderValue("gain-b"),
    }),
  },
  {
    id: "hue",
    readout: canonicalDecimal,
    commit: () => void applyOp("HUE", { deg: sliderValue("hue") }),
  },
  {
    id: "threshold-t",
    readout: canonicalDecimal,
    commit: () => void applyOp("THRESHOLD", { t: sliderValue("threshold-t") }),
  },
  {
    id: "quality",
    readout: (v) => String(clampInt(v, 1, 100)),
    commit: () => { /* quality only parameterizes the next export */ },
  },
];

for (const spec of sliders) {
  const input = $<HTMLInputElement>(spec.id);
  const label = $<HTMLSpanElement>(`${spec.id}-value`);
  label.textContent = spec.readout(Number(input.value));
  input.addEventListener("input", () => {
    label.textContent = spec.readout(Number(input.value));
  });
  input.addEventListener("change", () => spec.commit()); // one gesture, one POST
}

// --- undo / redo -----------------------------------------------------------------

$<HTMLButtonElement>("undo").addEventListener(
  "click", () => void mutate(() => api.undo(ui.sessionId!)));
$<HTMLButtonElement>("redo").addEventListener(
  "click", () => void mutate(() => api.redo(ui.sessionId!)));

// --- history scrubber ---------------------------------------------------------------

scrubberEl.addEventListener("input", () => {
  const pos = Number(scrubberEl.value);
  const step = ui.history.states[pos];
  if (step === undefined) return;
  ui.viewStep = step === ui.history.currentStep ? null : step;
  scrubberLabel.textContent = `${pos}/${ui.history.states.length - 1}`;
  showStep(step);
});

// --- meld ---------------------------------------------------------------------------

$<HTMLInputElement>("meld-file").addEventListener("change", async (ev) => {
  const file = (ev.target as HTMLInputElement).files?.[0];
  if (!file) {
    ui.meldFile = null;
    return;
  }
  const data = new Uint8Array(await file.arrayBuffer());
  ui.meldFile = { name: file.name, b64: encodeBase64(data) };
});

stageEl.addEventListener("click", (ev) => {
  // place the meld origin with a click when placement mode is on
  if (!$<HTMLInputElement>("meld-place").checked) return;
  const p = eventImagePoint(ev);
  $<HTMLInputElement>("meld-x").value = String(clampInt(p.x, 0, Math.max(0, ui.imageW - 1)));
  $<HTMLInputElement>("meld-y").value = String(clampInt(p.y, 0, Math.max(0, ui.imageH - 1)));
});

$<HTMLButtonElement>("meld-apply").addEventListener("click", () => {
  if (!ui.meldFile) {
    showError({ status: 0, code: "NoImage", message: "choose an image to insert" });
    return;
  }
  const bcolor = colorToHex8(
    $<HTMLInputElement>("meld-color").value,
    Number($<HTMLInputElement>("meld-alpha").value));
  void applyOp("MELD", {
    file: ui.meldFile.name,
    x: Number($<HTMLInputElement>("meld-x").value),
    y: Number($<HTMLInputElement>("meld-y").value),
    bw: Number($<HTMLInputElement>("meld-bw").value),
    bcolor,
    image_b64: ui.meldFile.b64,
  });
});

// --- export ---------------------------------------------------------------------------

$<HTMLButtonElement>("export").addEventListener("click", async () => {
  if (!ui.sessionId) return;
  clearError();
  const format = $<HTMLSelectElement>("export-format").value;
  const quality = clampInt(sliderValue("quality"), 1, 100);
  const name = `export.${format === "jpeg" ? "jpg" : format}`;
  try {
    const result = await api.exportImage(ui.sessionId, format, quality, name);
    const bytes = decodeBase64(result.data_b64);
    const blob = new Blob([bytes.buffer as ArrayBuffer]);
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = result.file;
    a.click();
    URL.revokeObjectURL(a.href);
    await refresh(); // the EXPORT entry is part of the record
  } catch (err) {
    showError(err);
  }
});
