/** Scene rendering against an abstract 2-D context (a structural subset of
 * CanvasRenderingContext2D) so tests can record draw calls without a DOM.
 *
 * Regions are light grey, surfaces dark grey; waypoints are never drawn.
 * Point markers are red circles clipped to the union of walkable areas, so
 * circles that do not fit on an area are cropped.
 */

import { heatCss } from "./colormap.js";
import type { Draft } from "./interactions.js";
import type { SceneDoc } from "./types.js";
import { mapToScreen, type ViewState } from "./viewstate.js";

export const REGION_FILL = "#d9d9d9"; // light grey
export const SURFACE_FILL = "#8c8c8c"; // dark grey
export const MARKER_FILL = "rgba(220, 38, 38, 0.85)"; // red circles
export const MARKER_RADIUS = 14; // screen pixels pre-zoom

export interface Draw2D {
  save(): void;
  restore(): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  rect(x: number, y: number, w: number, h: number): void;
  fill(): void;
  clip(): void;
  fillText(text: string, x: number, y: number): void;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillStyle: string | CanvasGradient | CanvasPattern;
  font: string;
}

function tracePolygon(ctx: Draw2D, view: ViewState, polygon: Array<[number, number]>): void {
  polygon.forEach(([x, y], k) => {
    const p = mapToScreen(view, x, y);
    if (k === 0) ctx.moveTo(p.x, p.y);
    else ctx.lineTo(p.x, p.y);
  });
  ctx.closePath();
}

function fillAreas(ctx: Draw2D, scene: SceneDoc, view: ViewState, kind: string, fill: string): void {
  for (const area of scene.areas) {
    if (area.kind !== kind) continue;
    ctx.beginPath();
    tracePolygon(ctx, view, area.polygon);
    ctx.fillStyle = fill;
    ctx.fill();
  }
}

/** Clip subsequent drawing to the union of all areas. */
function clipToAreas(ctx: Draw2D, scene: SceneDoc, view: ViewState): void {
  ctx.beginPath();
  for (const area of scene.areas) tracePolygon(ctx, view, area.polygon);
  ctx.clip();
}

function drawMarker(ctx: Draw2D, view: ViewState, x: number, y: number): void {
  const p = mapToScreen(view, x, y);
  ctx.beginPath();
  ctx.arc(p.x, p.y, MARKER_RADIUS, 0, 2 * Math.PI);
  ctx.fillStyle = MARKER_FILL;
  ctx.fill();
}

export function renderScene(
  ctx: Draw2D,
  scene: SceneDoc,
  view: ViewState,
  overlay: Draft | null,
  screenWidth: number,
  screenHeight: number,
): void {
  ctx.clearRect(0, 0, screenWidth, screenHeight);
  fillAreas(ctx, scene, view, "region", REGION_FILL);
  fillAreas(ctx, scene, view, "surface", SURFACE_FILL);
  if (overlay === null) return;

  if (overlay.kind === "paint") {
    ctx.save();
    clipToAreas(ctx, scene, view);
    for (const [key, b] of overlay.field) {
      if (b <= 0) continue;
      const [i, j] = key.split(",").map(Number);
      const p = mapToScreen(view, i, j);
      ctx.fillStyle = heatCss(b, 0.8);
      ctx.beginPath();
      ctx.rect(p.x, p.y, view.zoom, view.zoom);
      ctx.fill();
    }
    ctx.restore();
    return;
  }

  ctx.save();
  clipToAreas(ctx, scene, view);
  overlay.points.forEach((point, k) => {
    drawMarker(ctx, view, point.x, point.y);
    if (overlay.kind === "rank") {
      const p = mapToScreen(view, point.x, point.y);
      ctx.fillStyle = "#ffffff";
      ctx.font = "12px sans-serif";
      ctx.fillText(String(k + 1), p.x - 4, p.y + 4);
    }
  });
  ctx.restore();
}
