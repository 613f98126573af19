/** Scripted end-to-end session against a live service process.
 *
 * Boots the real HTTP server, then drives one precision, one paint, and one
 * rank submission through the same client and draft code the browser uses;
 * each submission is simulated against a seeded ground truth and must yield
 * a valid report row.
 */

import { execFile, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import {
  addPrecisionPoint,
  addRankPoint,
  draftToPayload,
  emptyDraft,
  paintAt,
  type PaintDraft,
  type PrecisionDraft,
  type RankDraft,
} from "../src/interactions.js";
import { isReportRow } from "../src/types.js";

const execFileAsync = promisify(execFile);
const PORT = 18950 + Math.floor(Math.random() * 1000);
const BASE = `http://127.0.0.1:${PORT}`;
const TRUTH_ID = "e2e-truth";

let server: ChildProcess;
let storeDir: string;
const api = new ApiClient(BASE);

async function waitForServer(timeoutMs = 30_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const scenes = await api.listScenes();
      if (scenes.length > 0) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("service did not come up in time");
}

beforeAll(async () => {
  storeDir = mkdtempSync(join(tmpdir(), "scenebelief-e2e-"));
  server = spawn(
    "python3",
    ["-m", "scenebelief.cli", "serve", "--port", String(PORT), "--store", storeDir],
    { stdio: "ignore" },
  );
  await waitForServer();
  // seed a ground truth into the live store via the batch CLI
  await execFileAsync("python3", [
    "-m", "scenebelief.cli", "gen-truth", "study_map",
    "--store", storeDir, "--seed", "11", "--id", TRUTH_ID,
  ]);
}, 60_000);

afterAll(() => {
  server?.kill();
  if (storeDir) rmSync(storeDir, { recursive: true, force: true });
});

describe("end-to-end elicitation sessions", () => {
  let mapW = 0;
  let mapH = 0;

  it("exposes the bundled scene", async () => {
    const scenes = await api.listScenes();
    expect(scenes.map((s) => s.id)).toContain("study_map");
    const scene = await api.getScene("study_map");
    mapW = scene.map.width;
    mapH = scene.map.height;
    expect(mapW).toBeGreaterThan(0);
    expect(mapH).toBeGreaterThan(0);
  });

  it("precision session yields a valid report row", async () => {
    const session = await api.createSession("study_map", "precision");
    for (const obj of ["umbrella", "bag"]) {
      let draft = emptyDraft("precision", obj) as PrecisionDraft;
      draft = addPrecisionPoint(draft, obj === "umbrella" ? 16 : 96, obj === "umbrella" ? 74 : 62, mapW, mapH);
      draft.points[0].slider = 0.8;
      await api.putInsight(session.id, obj, draftToPayload(draft));
    }
    const submitted = await api.submit(session.id);
    expect(submitted.state).toBe("submitted");
    const row = await api.simulate(session.id, TRUTH_ID, 50, 0);
    expect(isReportRow(row)).toBe(true);
    expect(row.interface).toBe("precision");
    expect(row.mean_trace_length).toBeGreaterThan(0);
    expect(row.accuracy).not.toBeNull();
  });

  it("paint session yields a valid report row", async () => {
    const session = await api.createSession("study_map", "paint");
    for (const obj of ["umbrella", "bag"]) {
      let draft = emptyDraft("paint", obj) as PaintDraft;
      draft = paintAt(draft, obj === "umbrella" ? 20 : 100, obj === "umbrella" ? 70 : 60, 6, mapW, mapH);
      draft = paintAt(draft, obj === "umbrella" ? 60 : 110, obj === "umbrella" ? 70 : 58, 3, mapW, mapH);
      await api.putInsight(session.id, obj, draftToPayload(draft));
    }
    await api.submit(session.id);
    const row = await api.simulate(session.id, TRUTH_ID, 50, 0);
    expect(isReportRow(row)).toBe(true);
    expect(row.interface).toBe("paint");
  });

  it("rank session yields a valid report row", async () => {
    const session = await api.createSession("study_map", "rank");
    for (const obj of ["umbrella", "bag"]) {
      let draft = emptyDraft("rank", obj) as RankDraft;
      draft = addRankPoint(draft, 16, 74, mapW, mapH);
      draft = addRankPoint(draft, 96, 62, mapW, mapH);
      await api.putInsight(session.id, obj, draftToPayload(draft));
    }
    await api.submit(session.id);
    const row = await api.simulate(session.id, TRUTH_ID, 50, 0);
    expect(isReportRow(row)).toBe(true);
    expect(row.interface).toBe("rank");
    expect(row.accuracy).toBeNull(); // rankings carry no magnitudes
  });

  it("all three rows are listed in the report feed", async () => {
    const rows = await api.getReports();
    const tags = rows.map((r) => r.interface).sort();
    expect(tags).toEqual(["paint", "precision", "rank"]);
    for (const row of rows) expect(isReportRow(row)).toBe(true);
  });

  it("service errors surface as {code, message}", async () => {
    await expect(api.getScene("nope")).rejects.toMatchObject({
      status: 404,
      code: "unknown_scene",
    });
  });
});
