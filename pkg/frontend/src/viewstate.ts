/** Pan/zoom camera over the map plus the active interface and object tab. */

import type { InterfaceTag, ObjectId } from "./types.js";

export const ZOOM_MIN = 0.25;
export const ZOOM_MAX = 8;

export interface ViewState {
  panX: number; // screen pixels
  panY: number;
  zoom: number;
  activeInterface: InterfaceTag;
  activeObject: ObjectId;
}

export function initialView(tag: InterfaceTag): ViewState {
  return { panX: 0, panY: 0, zoom: 1, activeInterface: tag, activeObject: "umbrella" };
}

export function clampZoom(zoom: number): number {
  if (Number.isNaN(zoom)) return ZOOM_MIN;
  return Math.min(ZOOM_MAX, Math.max(ZOOM_MIN, zoom));
}

/** Zoom about a fixed screen point so the map position under the cursor
 * stays put; result is clamped to the legal zoom range. */
export function zoomAt(view: ViewState, factor: number, sx: number, sy: number): ViewState {
  const zoom = clampZoom(view.zoom * factor);
  const scale = zoom / view.zoom;
  return {
    ...view,
    zoom,
    panX: sx - (sx - view.panX) * scale,
    panY: sy - (sy - view.panY) * scale,
  };
}

/** Keep at least a sliver of the map on screen. */
export function clampPan(
  view: ViewState,
  mapWidth: number,
  mapHeight: number,
  screenWidth: number,
  screenHeight: number,
  margin = 24,
): ViewState {
  const w = mapWidth * view.zoom;
  const h = mapHeight * view.zoom;
  return {
    ...view,
    panX: Math.min(screenWidth - margin, Math.max(margin - w, view.panX)),
    panY: Math.min(screenHeight - margin, Math.max(margin - h, view.panY)),
  };
}

export function screenToMap(view: ViewState, sx: number, sy: number): { x: number; y: number } {
  return { x: (sx - view.panX) / view.zoom, y: (sy - view.panY) / view.zoom };
}

export function mapToScreen(view: ViewState, x: number, y: number): { x: number; y: number } {
  return { x: x * view.zoom + view.panX, y: y * view.zoom + view.panY };
}
