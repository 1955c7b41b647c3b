/**
 * DOM-level tests of the coordinated views against frozen engine fixtures
 * (see fixtures/generate.py).  The fixture graph: nodes a/b/c move over the
 * full [0, 10] extent and are the default locked trio; d lives only on
 * [0, 3]; the trio's one guidance interval is exactly [4, 6].
 */
import { beforeEach, describe, expect, it, vi } from "vitest";

import { App } from "../src/app";
import { LOCKED_IN_WINDOW, LOCKED_OUT_OF_WINDOW } from "../src/colors";

import densityFull from "./fixtures/density_full.json";
import densityWin from "./fixtures/density_win.json";
import edgesA from "./fixtures/edges_a.json";
import guidanceFix from "./fixtures/guidance.json";
import metaFix from "./fixtures/meta.json";
import mobilityFull from "./fixtures/mobility_full.json";
import mobilityWin from "./fixtures/mobility_win.json";
import sessionFix from "./fixtures/session.json";
import timelineFix from "./fixtures/timeline.json";
import trajFull from "./fixtures/trajectories_full.json";
import trajLocked from "./fixtures/trajectories_locked.json";
import trajWin from "./fixtures/trajectories_win.json";

interface RecordedCall {
  path: string;
  params: URLSearchParams;
  method: string;
  body?: unknown;
}

function installFetchMock() {
  const calls: RecordedCall[] = [];
  let session = JSON.parse(JSON.stringify(sessionFix));

  const reply = (payload: unknown) => ({
    ok: true,
    status: 200,
    json: async () => JSON.parse(JSON.stringify(payload)),
    text: async () => JSON.stringify(payload),
  });

  const isWin = (p: URLSearchParams) =>
    Number(p.get("from")) === 4 && Number(p.get("to")) === 6;

  vi.stubGlobal(
    "fetch",
    vi.fn(async (input: string | URL, init?: { method?: string; body?: string }) => {
      const url = new URL(String(input), "http://fixture");
      const params = url.searchParams;
      const method = init?.method ?? "GET";
      calls.push({
        path: url.pathname,
        params,
        method,
        body: init?.body ? JSON.parse(init.body) : undefined,
      });
      switch (url.pathname) {
        case "/api/meta":
          return reply(metaFix);
        case "/api/session":
          if (method === "PUT") {
            const update = init?.body ? JSON.parse(init.body) : {};
            session = { ...session, ...update, version: session.version + 1 };
          }
          return reply(session);
        case "/api/timeline":
          return reply(timelineFix);
        case "/api/trajectories":
          if (params.get("ids")) return reply(trajLocked);
          return reply(isWin(params) ? trajWin : trajFull);
        case "/api/mobility":
          return reply(isWin(params) ? mobilityWin : mobilityFull);
        case "/api/density":
          return reply(isWin(params) ? densityWin : densityFull);
        case "/api/guidance":
          return reply(guidanceFix);
        case "/api/edges":
          return reply(edgesA);
        default:
          return { ok: false, status: 404, json: async () => ({}), text: async () => "404" };
      }
    }),
  );
  return calls;
}

async function flush(times = 6): Promise<void> {
  for (let i = 0; i < times; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

function containers() {
  document.body.innerHTML =
    '<div id="tb"></div><div id="sb"></div><div id="mv"></div><div id="tl"></div>';
  return {
    toolbar: document.getElementById("tb")!,
    sidebar: document.getElementById("sb")!,
    main: document.getElementById("mv")!,
    timeline: document.getElementById("tl")!,
  };
}

async function bootApp() {
  const calls = installFetchMock();
  const app = new App(containers(), undefined, {
    mainSize: { width: 800, height: 500 },
    timelineSize: { width: 800, height: 100 },
  });
  await app.init();
  await flush();
  return { app, calls };
}

beforeEach(() => {
  vi.unstubAllGlobals();
});

describe("fresh load", () => {
  it("shows exactly three locked trajectories", async () => {
    const { app } = await bootApp();
    const locked = app.mainView.root.querySelectorAll("g.trajectory.locked");
    expect(locked).toHaveLength(3);
    expect(
      [...locked].map((g) => g.getAttribute("data-node-id")).sort(),
    ).toEqual(["a", "b", "c"]);
    // The window subgraph contributes the remaining, unlocked node.
    const all = app.mainView.root.querySelectorAll("g.trajectory");
    expect(all).toHaveLength(4);
  });

  it("pre-locks the top three in the sidebar with proportional bars", async () => {
    const { app } = await bootApp();
    const checked = document.querySelectorAll(".lock-toggle:checked");
    expect(checked).toHaveLength(3);
    const bars = [...document.querySelectorAll<HTMLElement>(".mobility-bar")];
    const widths = bars.map((b) => parseFloat(b.style.width));
    // Descending ranking: bar widths are non-increasing, best is 100%.
    expect(widths[0]).toBe(100);
    for (let i = 1; i < widths.length; i++) {
      expect(widths[i]).toBeLessThanOrEqual(widths[i - 1]);
    }
    expect(app.store.state.locked).toEqual(["a", "b", "c"]);
  });

  it("draws density contours under the trajectories", async () => {
    const { app } = await bootApp();
    expect(
      app.mainView.root.querySelectorAll(".density-layer path.contour").length,
    ).toBeGreaterThan(0);
  });
});

describe("guidance snapping", () => {
  it("clicking a guidance rectangle sets the window to that interval exactly", async () => {
    const { app, calls } = await bootApp();
    const rect = app.timeline.root.querySelector<SVGRectElement>(".guidance-interval");
    expect(rect).not.toBeNull();
    expect(rect!.getAttribute("data-start")).toBe("4");
    expect(rect!.getAttribute("data-end")).toBe("6");

    calls.length = 0;
    rect!.dispatchEvent(new MouseEvent("click"));
    await flush();

    expect(app.store.state.window).toEqual({ start: 4, end: 6 });
    const refetch = calls.find((c) => c.path === "/api/trajectories" && !c.params.get("ids"));
    expect(refetch).toBeDefined();
    expect(Number(refetch!.params.get("from"))).toBe(4);
    expect(Number(refetch!.params.get("to"))).toBe(6);
    const put = calls.find((c) => c.path === "/api/session" && c.method === "PUT");
    expect(put?.body).toMatchObject({ window: { start: 4, end: 6 } });
  });

  it("brushing updates the main view to the clipped subgraph plus locked trajectories", async () => {
    const { app } = await bootApp();
    // Before: d (alive only on [0,3]) is rendered from the full window.
    expect(
      app.mainView.root.querySelector('g.trajectory[data-node-id="d"]'),
    ).not.toBeNull();

    const rect = app.timeline.root.querySelector<SVGRectElement>(".guidance-interval")!;
    rect.dispatchEvent(new MouseEvent("click"));
    await flush();

    // After: only the clipped subgraph (a, b, c) remains, all locked, still
    // drawn at full extent.
    expect(
      app.mainView.root.querySelector('g.trajectory[data-node-id="d"]'),
    ).toBeNull();
    const locked = app.mainView.root.querySelectorAll("g.trajectory.locked");
    expect(locked).toHaveLength(3);
    const all = app.mainView.root.querySelectorAll("g.trajectory");
    expect(all).toHaveLength(3);
  });

  it("locked nodes are bright red inside the selection and desaturated outside", async () => {
    const { app } = await bootApp();
    const rect = app.timeline.root.querySelector<SVGRectElement>(".guidance-interval")!;
    rect.dispatchEvent(new MouseEvent("click"));
    await flush();

    const circles = [
      ...app.mainView.root.querySelectorAll<SVGCircleElement>("g.trajectory.locked circle"),
    ];
    expect(circles.length).toBeGreaterThan(0);
    for (const circle of circles) {
      const t = Number(circle.getAttribute("data-t"));
      const fill = circle.getAttribute("fill");
      if (t >= 4 && t <= 6) expect(fill).toBe(LOCKED_IN_WINDOW);
      else expect(fill).toBe(LOCKED_OUT_OF_WINDOW);
    }
    const bright = circles.filter((c) => c.getAttribute("fill") === LOCKED_IN_WINDOW);
    const faded = circles.filter((c) => c.getAttribute("fill") === LOCKED_OUT_OF_WINDOW);
    expect(bright.length).toBeGreaterThan(0);
    expect(faded.length).toBeGreaterThan(0);
  });
});

describe("brushing by drag", () => {
  it("commits the dragged range and resets on a zero-width brush", async () => {
    const { app } = await bootApp();
    const surface = app.timeline.root.querySelector<SVGRectElement>(".brush-surface")!;

    // 800px wide over [0, 10]: x=160 -> t=2, x=480 -> t=6.
    surface.dispatchEvent(new MouseEvent("mousedown", { clientX: 160 }));
    surface.dispatchEvent(new MouseEvent("mousemove", { clientX: 480 }));
    surface.dispatchEvent(new MouseEvent("mouseup", { clientX: 480 }));
    await flush();
    expect(app.store.state.window).toEqual({ start: 2, end: 6 });

    surface.dispatchEvent(new MouseEvent("mousedown", { clientX: 240 }));
    surface.dispatchEvent(new MouseEvent("mouseup", { clientX: 240 }));
    await flush();
    expect(app.store.state.window).toEqual({ start: 0, end: 10 });
  });
});

describe("hover", () => {
  it("edges mode shows only the hovered node's incident edges", async () => {
    const { app, calls } = await bootApp();
    const circle = app.mainView.root.querySelector<SVGCircleElement>(
      'circle[data-node-id="a"]',
    )!;
    calls.length = 0;
    circle.dispatchEvent(new MouseEvent("mouseenter"));
    await flush();

    const fetched = calls.find((c) => c.path === "/api/edges");
    expect(fetched?.params.get("node")).toBe("a");

    const lines = [
      ...app.mainView.root.querySelectorAll<SVGLineElement>(".overlay-layer line.edge"),
    ];
    expect(lines.length).toBeGreaterThan(0);
    const edgeIds = new Set(lines.map((l) => l.getAttribute("data-edge-id")));
    expect([...edgeIds].sort()).toEqual(["a--b", "a--c"]); // incident only
    expect(app.mainView.root.querySelectorAll(".overlay-layer line.movement")).toHaveLength(0);

    // Yellow bar marks the hovered point's time coordinate.
    const bar = app.timeline.root.querySelector<SVGLineElement>(".hover-bar")!;
    expect(bar.getAttribute("visibility")).toBe("visible");

    circle.dispatchEvent(new MouseEvent("mouseleave"));
    await flush();
    expect(app.mainView.root.querySelectorAll(".overlay-layer *")).toHaveLength(0);
    expect(bar.getAttribute("visibility")).toBe("hidden");
  });

  it("movement mode draws the polyline without fetching edges", async () => {
    const { app, calls } = await bootApp();
    const select = document.querySelector<HTMLSelectElement>(".mode-select")!;
    select.value = "movement";
    select.dispatchEvent(new Event("change"));

    const circle = app.mainView.root.querySelector<SVGCircleElement>(
      'circle[data-node-id="a"]',
    )!;
    calls.length = 0;
    circle.dispatchEvent(new MouseEvent("mouseenter"));
    await flush();

    expect(calls.find((c) => c.path === "/api/edges")).toBeUndefined();
    const movement = app.mainView.root.querySelectorAll(".overlay-layer line.movement");
    expect(movement.length).toBeGreaterThan(0);
    expect(app.mainView.root.querySelectorAll(".overlay-layer line.edge")).toHaveLength(0);
  });
});

describe("lock toggling", () => {
  it("unlocking a node updates the view and the session", async () => {
    const { app, calls } = await bootApp();
    const row = document.querySelector<HTMLElement>('[data-node-id="a"].ranking-row')!;
    const toggle = row.querySelector<HTMLInputElement>(".lock-toggle")!;
    calls.length = 0;
    toggle.checked = false;
    toggle.dispatchEvent(new Event("change"));
    await flush();

    expect(app.store.state.locked).toEqual(["b", "c"]);
    const put = calls.find((c) => c.path === "/api/session" && c.method === "PUT");
    expect(put?.body).toMatchObject({ locked: ["b", "c"] });
    const guidance = calls.find((c) => c.path === "/api/guidance");
    expect(guidance?.params.get("locked")).toBe("b,c");
  });
});

describe("view params sync", () => {
  it("sampling frequency changes round-trip through the session", async () => {
    const { app, calls } = await bootApp();
    const input = document.querySelector<HTMLInputElement>(".samples-input")!;
    calls.length = 0;
    input.value = "5";
    input.dispatchEvent(new Event("change"));
    await flush();

    expect(app.store.state.samplesPerSegment).toBe(5);
    const put = calls.find((c) => c.path === "/api/session" && c.method === "PUT");
    expect(put?.body).toMatchObject({ params: { samples_per_segment: 5 } });
    const refetch = calls.find(
      (c) => c.path === "/api/trajectories" && !c.params.get("ids"),
    );
    expect(refetch?.params.get("k")).toBe("5");
  });
});

describe("empty scene", () => {
  it("shows a notice when nothing is in the selection", async () => {
    installFetchMock();
    const { MainView } = await import("../src/mainView");
    const { initialState } = await import("../src/state");
    const host = document.createElement("div");
    const view = new MainView(host, { width: 400, height: 300 });
    view.setData([], [], null, null);
    view.render(initialState());
    expect(host.querySelector(".empty-notice")?.textContent).toContain("no data");
  });
});

describe("zoom and pan", () => {
  it("wheel zoom changes only the transform, never refetches", async () => {
    const { app, calls } = await bootApp();
    calls.length = 0;
    app.mainView.root.dispatchEvent(new WheelEvent("wheel", { deltaY: -120 }));
    await flush();
    expect(app.store.state.transform.scale).toBeGreaterThan(1);
    expect(calls).toHaveLength(0);
    const world = app.mainView.root.querySelector("g.world")!;
    expect(world.getAttribute("transform")).toContain("scale");
  });
});
