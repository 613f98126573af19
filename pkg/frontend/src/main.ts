/** Browser entry point: wires the canvas, side panel, and service client
 * into one elicitation session. The interface kind is chosen from the query
 * string (?interface=precision|paint|rank), defaulting to precision. */

import { ApiClient, ApiError } from "./api.js";
import {
  addPrecisionPoint,
  addRankPoint,
  clearPaint,
  draftToPayload,
  emptyDraft,
  hasInput,
  paintAt,
  removePoint,
  reorderRank,
  setSlider,
  sliderSum,
  type Draft,
} from "./interactions.js";
import { renderScene } from "./render.js";
import type { InterfaceTag, ObjectId, SceneDoc } from "./types.js";
import {
  clampPan,
  initialView,
  screenToMap,
  zoomAt,
  type ViewState,
} from "./viewstate.js";

const OBJECTS: ObjectId[] = ["umbrella", "bag"];
const PAINT_TICK_MS = 50;

interface AppState {
  scene: SceneDoc;
  sessionId: string;
  view: ViewState;
  drafts: Map<ObjectId, Draft>;
  locked: boolean;
  status: string;
}

function interfaceFromQuery(): InterfaceTag {
  const tag = new URLSearchParams(window.location.search).get("interface");
  return tag === "paint" || tag === "rank" ? tag : "precision";
}

async function boot(): Promise<void> {
  const canvas = document.getElementById("map") as HTMLCanvasElement;
  const panel = document.getElementById("panel") as HTMLElement;
  const status = document.getElementById("status") as HTMLElement;
  const submitBtn = document.getElementById("submit") as HTMLButtonElement;
  const tabs = document.getElementById("tabs") as HTMLElement;
  const ctx = canvas.getContext("2d") as CanvasRenderingContext2D;

  const api = new ApiClient("");
  const tag = interfaceFromQuery();
  const scenes = await api.listScenes();
  if (scenes.length === 0) throw new Error("service has no scenes");
  const sceneId = scenes[0].id;
  const scene = await api.getScene(sceneId);
  const session = await api.createSession(sceneId, tag);

  const state: AppState = {
    scene,
    sessionId: session.id,
    view: initialView(tag),
    drafts: new Map(OBJECTS.map((obj) => [obj, emptyDraft(tag, obj)])),
    locked: false,
    status: `session ${session.id} (${tag})`,
  };

  const draft = (): Draft => state.drafts.get(state.view.activeObject) as Draft;
  const setDraft = (d: Draft): void => {
    if (!state.locked) state.drafts.set(state.view.activeObject, d);
  };
  const mapW = scene.map.width;
  const mapH = scene.map.height;

  function redraw(): void {
    state.view = clampPan(state.view, mapW, mapH, canvas.width, canvas.height);
    renderScene(ctx, scene, state.view, draft(), canvas.width, canvas.height);
    status.textContent = state.status;
    submitBtn.disabled =
      state.locked || ![...state.drafts.values()].every((d) => hasInput(d));
    renderPanel();
    renderTabs();
  }

  function renderTabs(): void {
    tabs.replaceChildren(
      ...OBJECTS.map((obj) => {
        const btn = document.createElement("button");
        btn.textContent = obj;
        btn.className = obj === state.view.activeObject ? "tab active" : "tab";
        btn.onclick = () => {
          state.view = { ...state.view, activeObject: obj };
          redraw();
        };
        return btn;
      }),
    );
  }

  function renderPanel(): void {
    const d = draft();
    panel.replaceChildren();
    if (d.kind === "precision") {
      d.points.forEach((p, k) => {
        const row = document.createElement("div");
        row.className = "row";
        const slider = document.createElement("input");
        slider.type = "range";
        slider.min = "0";
        slider.max = "1";
        slider.step = "0.01";
        slider.value = String(p.slider);
        slider.oninput = () => {
          setDraft(setSlider(d, k, Number(slider.value)));
          redraw();
        };
        const label = document.createElement("span");
        label.textContent = `(${p.x.toFixed(1)}, ${p.y.toFixed(1)}) s=${p.slider.toFixed(2)}`;
        const del = document.createElement("button");
        del.textContent = "delete";
        del.onclick = () => {
          setDraft(removePoint(d, k));
          redraw();
        };
        row.append(label, slider, del);
        panel.append(row);
      });
      if (sliderSum(d) > 1) {
        const note = document.createElement("p");
        note.className = "note";
        note.textContent = "Slider values sum to more than 1 and will be normalized.";
        panel.append(note);
      }
    } else if (d.kind === "rank") {
      d.points.forEach((p, k) => {
        const row = document.createElement("div");
        row.className = "row";
        row.draggable = true;
        row.dataset.index = String(k);
        row.textContent = `${k + 1}. (${p.x.toFixed(1)}, ${p.y.toFixed(1)})`;
        row.ondragstart = (ev) => ev.dataTransfer?.setData("text/plain", String(k));
        row.ondragover = (ev) => ev.preventDefault();
        row.ondrop = (ev) => {
          ev.preventDefault();
          const from = Number(ev.dataTransfer?.getData("text/plain"));
          setDraft(reorderRank(d, from, k));
          redraw();
        };
        const del = document.createElement("button");
        del.textContent = "delete";
        del.onclick = () => {
          setDraft(removePoint(d, k));
          redraw();
        };
        row.append(del);
        panel.append(row);
      });
    } else {
      const clear = document.createElement("button");
      clear.textContent = "clear all";
      clear.onclick = () => {
        setDraft(clearPaint(d));
        redraw();
      };
      panel.append(clear);
    }
  }

  // --- pointer handling: left click/drag edits, wheel zooms, right-drag pans
  let painting: number | null = null;
  let panFrom: { x: number; y: number } | null = null;

  canvas.addEventListener("pointerdown", (ev) => {
    if (state.locked) return;
    if (ev.button === 2) {
      panFrom = { x: ev.offsetX - state.view.panX, y: ev.offsetY - state.view.panY };
      return;
    }
    const { x, y } = screenToMap(state.view, ev.offsetX, ev.offsetY);
    const d = draft();
    if (d.kind === "precision") setDraft(addPrecisionPoint(d, x, y, mapW, mapH));
    else if (d.kind === "rank") setDraft(addRankPoint(d, x, y, mapW, mapH));
    else {
      let at = { x: ev.offsetX, y: ev.offsetY };
      canvas.onpointermove = (mv) => {
        at = { x: mv.offsetX, y: mv.offsetY };
      };
      painting = window.setInterval(() => {
        const pos = screenToMap(state.view, at.x, at.y);
        const cur = draft();
        if (cur.kind === "paint") setDraft(paintAt(cur, pos.x, pos.y, 1, mapW, mapH));
        redraw();
      }, PAINT_TICK_MS);
    }
    redraw();
  });

  canvas.addEventListener("pointermove", (ev) => {
    if (panFrom !== null) {
      state.view = { ...state.view, panX: ev.offsetX - panFrom.x, panY: ev.offsetY - panFrom.y };
      redraw();
    }
  });

  const stopStroke = (): void => {
    if (painting !== null) {
      window.clearInterval(painting);
      painting = null;
      canvas.onpointermove = null;
    }
    panFrom = null;
  };
  canvas.addEventListener("pointerup", stopStroke);
  canvas.addEventListener("pointerleave", stopStroke);
  canvas.addEventListener("contextmenu", (ev) => ev.preventDefault());

  canvas.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    state.view = zoomAt(state.view, ev.deltaY < 0 ? 1.1 : 1 / 1.1, ev.offsetX, ev.offsetY);
    redraw();
  });

  // --- submit: PUT every payload, then POST submit; one in-flight at a time
  submitBtn.addEventListener("click", () => {
    void (async () => {
      submitBtn.disabled = true;
      try {
        for (const obj of OBJECTS) {
          await api.putInsight(state.sessionId, obj, draftToPayload(state.drafts.get(obj) as Draft));
        }
        await api.submit(state.sessionId);
        state.locked = true;
        state.status = "submitted — session locked";
      } catch (err) {
        state.status =
          err instanceof ApiError
            ? `submit failed (${err.code}): ${err.message} — drafts kept, retry`
            : `submit failed: ${String(err)} — drafts kept, retry`;
      }
      redraw();
    })();
  });

  redraw();
}

void boot();
