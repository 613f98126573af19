/** Draft state for the three elicitation interfaces and its translation to
 * and from the wire payload schema. All updates are pure: each returns a new
 * draft, which keeps undo and optimistic submits simple. */

import { applyBrush, pixelKey, type SparseField } from "./brush.js";
import type { InsightPayload, InterfaceTag } from "./types.js";

export interface PrecisionDraft {
  kind: "precision";
  objectId: string;
  points: Array<{ x: number; y: number; slider: number }>;
}

export interface PaintDraft {
  kind: "paint";
  objectId: string;
  field: SparseField;
}

export interface RankDraft {
  kind: "rank";
  objectId: string;
  points: Array<{ x: number; y: number }>;
}

export type Draft = PrecisionDraft | PaintDraft | RankDraft;

export function emptyDraft(tag: InterfaceTag, objectId: string): Draft {
  switch (tag) {
    case "precision":
      return { kind: "precision", objectId, points: [] };
    case "paint":
      return { kind: "paint", objectId, field: new Map() };
    case "rank":
      return { kind: "rank", objectId, points: [] };
  }
}

function onMap(x: number, y: number, width: number, height: number): boolean {
  return x >= 0 && x <= width && y >= 0 && y <= height;
}

/** Precision: click adds a point with a default half slider. Off-map clicks
 * are ignored (the draft is returned unchanged). */
export function addPrecisionPoint(
  draft: PrecisionDraft,
  x: number,
  y: number,
  width: number,
  height: number,
): PrecisionDraft {
  if (!onMap(x, y, width, height)) return draft;
  return { ...draft, points: [...draft.points, { x, y, slider: 0.5 }] };
}

export function setSlider(draft: PrecisionDraft, index: number, slider: number): PrecisionDraft {
  if (index < 0 || index >= draft.points.length || !(slider >= 0 && slider <= 1)) return draft;
  const points = draft.points.slice();
  points[index] = { ...points[index], slider };
  return { ...draft, points };
}

export function removePoint<T extends PrecisionDraft | RankDraft>(draft: T, index: number): T {
  if (index < 0 || index >= draft.points.length) return draft;
  return { ...draft, points: draft.points.filter((_, k) => k !== index) };
}

/** Total slider mass; when it exceeds 1 the UI shows a passive note that the
 * service will normalize, without changing the entered values. */
export function sliderSum(draft: PrecisionDraft): number {
  return draft.points.reduce((acc, p) => acc + p.slider, 0);
}

/** Paint: one dwell/drag step of `ticks` ticks at the pointer position.
 * Off-map strokes are ignored. */
export function paintAt(
  draft: PaintDraft,
  x: number,
  y: number,
  ticks: number,
  width: number,
  height: number,
): PaintDraft {
  if (!onMap(x, y, width, height)) return draft;
  return { ...draft, field: applyBrush(draft.field, x, y, ticks, width, height) };
}

export function clearPaint(draft: PaintDraft): PaintDraft {
  return { ...draft, field: new Map() };
}

/** Rank: click appends to the ordered list (index 0 = most likely). */
export function addRankPoint(
  draft: RankDraft,
  x: number,
  y: number,
  width: number,
  height: number,
): RankDraft {
  if (!onMap(x, y, width, height)) return draft;
  return { ...draft, points: [...draft.points, { x, y }] };
}

/** Drag row `from` to position `to`, shifting the rows in between. */
export function reorderRank(draft: RankDraft, from: number, to: number): RankDraft {
  const n = draft.points.length;
  if (from < 0 || from >= n || to < 0 || to >= n || from === to) return draft;
  const points = draft.points.slice();
  const [moved] = points.splice(from, 1);
  points.splice(to, 0, moved);
  return { ...draft, points };
}

/** A draft is submittable once it carries any input at all; the service
 * rejects empty insight, so the submit button stays disabled until then. */
export function hasInput(draft: Draft): boolean {
  switch (draft.kind) {
    case "precision":
    case "rank":
      return draft.points.length > 0;
    case "paint":
      for (const b of draft.field.values()) if (b > 0) return true;
      return false;
  }
}

export function draftToPayload(draft: Draft): InsightPayload {
  switch (draft.kind) {
    case "precision":
      return {
        object_id: draft.objectId,
        interface: "precision",
        points: draft.points.map((p) => ({ x: p.x, y: p.y, slider: p.slider })),
      };
    case "rank":
      return {
        object_id: draft.objectId,
        interface: "rank",
        points: draft.points.map((p) => ({ x: p.x, y: p.y })),
      };
    case "paint": {
      const cells = [...draft.field.entries()]
        .filter(([, b]) => b > 0)
        .map(([key, b]) => {
          const [i, j] = key.split(",").map(Number);
          return { x: i, y: j, b };
        })
        .sort((a, c) => a.x - c.x || a.y - c.y);
      return { object_id: draft.objectId, interface: "paint", paint: cells };
    }
  }
}

export function payloadToDraft(payload: InsightPayload): Draft {
  switch (payload.interface) {
    case "precision":
      return {
        kind: "precision",
        objectId: payload.object_id,
        points: (payload.points ?? []).map((p) => ({
          x: p.x,
          y: p.y,
          slider: "slider" in p && typeof p.slider === "number" ? p.slider : 0,
        })),
      };
    case "rank":
      return {
        kind: "rank",
        objectId: payload.object_id,
        points: (payload.points ?? []).map((p) => ({ x: p.x, y: p.y })),
      };
    case "paint": {
      const field: SparseField = new Map();
      for (const cell of payload.paint ?? []) {
        if (cell.b > 0) field.set(pixelKey(cell.x, cell.y), cell.b);
      }
      return { kind: "paint", objectId: payload.object_id, field };
    }
  }
}
