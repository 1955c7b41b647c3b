import { ApiClient } from "./api";
import { MainView } from "./mainView";
import { Sidebar } from "./sidebar";
import { Timeline } from "./timeline";
import { Toolbar } from "./toolbar";
import { Store, sameWindow } from "./state";
import type { HoverMode } from "./state";
import type {
  DensityResponse,
  GuidanceResponse,
  MobilityResponse,
  TimeWindow,
  TrajectoriesResponse,
  ViewParams,
} from "./types";

export interface AppContainers {
  toolbar: HTMLElement;
  sidebar: HTMLElement;
  main: HTMLElement;
  timeline: HTMLElement;
}

export interface AppOptions {
  mainSize?: { width: number; height: number };
  timelineSize?: { width: number; height: number };
}

/**
 * Wires the three coordinated views over the HTTP API.  All positions,
 * opacities, and rankings come from engine responses; the client only maps
 * them to screen space.  Stale responses are discarded via sequence numbers.
 */
export class App {
  readonly store = new Store();
  readonly mainView: MainView;
  readonly timeline: Timeline;
  readonly sidebar: Sidebar;
  readonly toolbar: Toolbar;

  private windowSeq = 0;
  private lockedSeq = 0;
  private hoverSeq = 0;

  private windowData: TrajectoriesResponse | null = null;
  private lockedData: TrajectoriesResponse | null = null;
  private density: DensityResponse | null = null;
  private mobility: MobilityResponse | null = null;
  private guidance: GuidanceResponse | null = null;
  private sessionParams: ViewParams | null = null;

  constructor(
    containers: AppContainers,
    private readonly api: ApiClient = new ApiClient(),
    options: AppOptions = {},
  ) {
    this.mainView = new MainView(containers.main, options.mainSize);
    this.timeline = new Timeline(containers.timeline, options.timelineSize);
    this.sidebar = new Sidebar(containers.sidebar);
    const state = this.store.state;
    this.toolbar = new Toolbar(
      containers.toolbar,
      {
        mode: state.mode,
        samplesPerSegment: state.samplesPerSegment,
        bandwidth: state.bandwidth,
        densityOn: state.densityOn,
        mobilityColorOn: state.mobilityColorOn,
      },
      {
        onMode: (mode) => this.setMode(mode),
        onSamples: (k) => {
          this.store.update({ samplesPerSegment: k });
          this.syncParams({ samples_per_segment: k });
          void this.refreshWindowData(false);
          void this.refreshLockedData();
        },
        onBandwidth: (bandwidth) => {
          this.store.update({ bandwidth });
          this.syncParams({ bandwidth });
          void this.refreshWindowData(false);
        },
        onDensityToggle: (on) => {
          this.store.update({ densityOn: on });
          if (on && !this.density) void this.refreshWindowData(false);
          else this.renderMain();
        },
        onMobilityColorToggle: (on) => {
          this.store.update({ mobilityColorOn: on });
          this.renderMain();
        },
        onReset: () => {
          const extent = this.store.state.extent;
          if (extent) void this.commitWindow({ ...extent }, false);
        },
      },
    );

    this.timeline.onWindowChange = (win, live) => void this.commitWindow(win, live);
    this.sidebar.onToggleLock = (nodeId, locked) => void this.toggleLock(nodeId, locked);
    this.mainView.onHoverPoint = (nodeId, t) => void this.hover(nodeId, t);
    this.mainView.onUnhover = () => this.unhover();
    this.mainView.onTransformChange = (transform) => {
      this.store.update({ transform });
      this.mainView.applyTransform(this.store.state);
    };
  }

  async init(): Promise<void> {
    const meta = await this.api.meta();
    const session = await this.api.getSession();
    this.sessionParams = session.params;
    this.store.update({
      extent: meta.extent,
      window: session.window,
      locked: session.locked,
      samplesPerSegment: session.params.samples_per_segment,
      bandwidth: session.params.bandwidth,
    });

    const state = this.store.state;
    const [timelineResp] = await Promise.all([
      this.api.timeline(session.params.timeline_bins),
      this.refreshWindowData(false),
      this.refreshLockedData(),
    ]);
    // Fix the projection on full-extent data so brushing never rescales.
    if (state.extent) {
      const full = sameWindow(state.window, state.extent)
        ? this.windowData
        : await this.api.trajectories(state.extent, state.samplesPerSegment);
      if (full) this.mainView.setProjectionFrom(full.trajectories);
    }
    this.timeline.setData(timelineResp);
    this.timeline.setGuidance(this.guidance);
    this.timeline.setWindow(state.window);
    this.renderMain();
    this.renderSidebar();
  }

  private currentWindow(): TimeWindow | null {
    return this.store.state.window ?? this.store.state.extent;
  }

  private async refreshWindowData(live: boolean): Promise<void> {
    const win = this.currentWindow();
    if (!win) return;
    const state = this.store.state;
    const seq = ++this.windowSeq;
    const k = state.samplesPerSegment;
    const grid = 128;
    const [trajectories, mobility, density] = await Promise.all([
      this.api.trajectories(win, k),
      this.api.mobility(win),
      state.densityOn
        ? this.api.density(win, k, state.bandwidth, grid, grid).catch(() => null)
        : Promise.resolve(null),
    ]);
    if (seq !== this.windowSeq) return; // stale
    this.windowData = trajectories;
    this.mobility = mobility;
    this.density = density;
    this.renderMain();
    if (!live) this.renderSidebar();
  }

  private async refreshLockedData(): Promise<void> {
    const state = this.store.state;
    const seq = ++this.lockedSeq;
    const extent = state.extent;
    if (!extent || !state.locked.length) {
      this.lockedData = null;
      this.guidance = { locked: [], padding: 0, intervals: [] };
      if (seq === this.lockedSeq) {
        this.timeline.setGuidance(this.guidance);
        this.renderMain();
      }
      return;
    }
    const [locked, guidance] = await Promise.all([
      this.api.trajectories(extent, state.samplesPerSegment, state.locked),
      this.api.guidance(state.locked),
    ]);
    if (seq !== this.lockedSeq) return;
    this.lockedData = locked;
    this.guidance = guidance;
    this.timeline.setGuidance(guidance);
    this.renderMain();
  }

  private async commitWindow(win: TimeWindow, live: boolean): Promise<void> {
    this.store.update({ window: win });
    this.timeline.setWindow(win);
    if (!live) {
      void this.api.putSession({ window: win }).catch(() => undefined);
    }
    await this.refreshWindowData(live);
  }

  private async toggleLock(nodeId: string, locked: boolean): Promise<void> {
    const current = new Set(this.store.state.locked);
    if (locked) current.add(nodeId);
    else current.delete(nodeId);
    const ids = [...current].sort();
    this.store.update({ locked: ids });
    void this.api.putSession({ locked: ids }).catch(() => undefined);
    this.renderSidebar();
    await this.refreshLockedData();
  }

  /** Keep the server-side session's view params in step with the toolbar. */
  private syncParams(partial: Partial<ViewParams>): void {
    if (!this.sessionParams) return;
    this.sessionParams = { ...this.sessionParams, ...partial };
    void this.api.putSession({ params: this.sessionParams }).catch(() => undefined);
  }

  private setMode(mode: HoverMode): void {
    this.store.update({ mode, hover: null });
    this.mainView.clearOverlay();
    this.timeline.setHoverBar(null);
  }

  private async hover(nodeId: string, t: number): Promise<void> {
    const state = this.store.state;
    this.store.update({ hover: { nodeId, t } });
    this.timeline.setHoverBar(t);
    const seq = ++this.hoverSeq;
    if (state.mode === "edges") {
      const win = this.currentWindow();
      if (!win) return;
      const resp = await this.api.edges(nodeId, win, state.samplesPerSegment);
      if (seq !== this.hoverSeq || this.store.state.hover?.nodeId !== nodeId) return;
      this.mainView.showEdges(resp.edges, { nodeId, t });
    } else {
      const traj =
        this.lockedData?.trajectories.find((tr) => tr.node_id === nodeId) ??
        this.windowData?.trajectories.find((tr) => tr.node_id === nodeId);
      if (traj) this.mainView.showMovement(traj, { nodeId, t });
    }
  }

  private unhover(): void {
    this.hoverSeq++;
    this.store.update({ hover: null });
    this.mainView.clearOverlay();
    this.timeline.setHoverBar(null);
  }

  private renderMain(): void {
    this.mainView.setData(
      this.windowData?.trajectories ?? [],
      this.lockedData?.trajectories.filter((t) =>
        this.store.state.locked.includes(t.node_id),
      ) ?? [],
      this.density,
      this.mobility,
    );
    this.mainView.render(this.store.state);
    this.mainView.applyTransform(this.store.state);
  }

  private renderSidebar(): void {
    if (this.mobility) {
      this.sidebar.setData(this.mobility, this.store.state.locked);
    }
  }
}
