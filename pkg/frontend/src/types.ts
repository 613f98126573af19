/** Shared payload and scene document types, mirroring the service's JSON
 * schemas. The UI talks to the service exclusively through these shapes. */

export type InterfaceTag = "precision" | "paint" | "rank";
export type ObjectId = "umbrella" | "bag";

export interface PrecisionPoint {
  x: number;
  y: number;
  slider: number;
}

export interface RankPoint {
  x: number;
  y: number;
}

export interface PaintCell {
  x: number;
  y: number;
  b: number;
}

export interface InsightPayload {
  object_id: string;
  interface: InterfaceTag;
  points?: Array<PrecisionPoint | RankPoint>;
  paint?: PaintCell[];
}

export interface SceneArea {
  id: string;
  kind: "region" | "surface";
  polygon: Array<[number, number]>;
}

export interface SceneDoc {
  map: { width: number; height: number; resolution: number };
  areas: SceneArea[];
  waypoints: Array<{ id: string; x: number; y: number }>;
  nav_edges: Array<[string, string]>;
}

export interface SessionDoc {
  id: string;
  scene_id: string;
  interface: InterfaceTag;
  state: "open" | "submitted";
}

export interface ReportRow {
  session_id: string;
  truth_id: string;
  interface: InterfaceTag;
  mean_trace_length: number;
  accuracy: number | null;
  rank_discrepancy: number;
  duration_s: number;
  n_sims: number;
  seed: number;
}

export interface ServiceError {
  code: string;
  message: string;
}

export function isReportRow(doc: unknown): doc is ReportRow {
  if (typeof doc !== "object" || doc === null) return false;
  const row = doc as Record<string, unknown>;
  return (
    typeof row.session_id === "string" &&
    typeof row.interface === "string" &&
    typeof row.mean_trace_length === "number" &&
    (row.accuracy === null || typeof row.accuracy === "number") &&
    typeof row.rank_discrepancy === "number" &&
    Number.isInteger(row.rank_discrepancy) &&
    typeof row.duration_s === "number"
  );
}
