import type { HoverMode } from "./state";

export interface ToolbarCallbacks {
  onMode(mode: HoverMode): void;
  onSamples(k: number): void;
  onBandwidth(bandwidth: number): void;
  onDensityToggle(on: boolean): void;
  onMobilityColorToggle(on: boolean): void;
  onReset(): void;
}

/** Top bar: hover mode, sampling frequency, bandwidth, layer toggles, reset. */
export class Toolbar {
  readonly root: HTMLElement;

  constructor(container: HTMLElement, initial: {
    mode: HoverMode;
    samplesPerSegment: number;
    bandwidth: number;
    densityOn: boolean;
    mobilityColorOn: boolean;
  }, callbacks: ToolbarCallbacks) {
    this.root = document.createElement("div");
    this.root.className = "toolbar";

    const modeSelect = document.createElement("select");
    modeSelect.className = "mode-select";
    for (const mode of ["edges", "movement"] as const) {
      const option = document.createElement("option");
      option.value = mode;
      option.textContent = `hover: ${mode}`;
      modeSelect.appendChild(option);
    }
    modeSelect.value = initial.mode;
    modeSelect.addEventListener("change", () => {
      callbacks.onMode(modeSelect.value as HoverMode);
    });

    const samples = document.createElement("input");
    samples.type = "number";
    samples.min = "0";
    samples.max = "12";
    samples.value = String(initial.samplesPerSegment);
    samples.className = "samples-input";
    samples.title = "interpolated points per movement segment";
    samples.addEventListener("change", () => {
      callbacks.onSamples(Math.max(0, Number(samples.value) || 0));
    });

    const bandwidth = document.createElement("input");
    bandwidth.type = "number";
    bandwidth.step = "0.1";
    bandwidth.min = "0.1";
    bandwidth.value = String(initial.bandwidth);
    bandwidth.className = "bandwidth-input";
    bandwidth.title = "density kernel bandwidth";
    bandwidth.addEventListener("change", () => {
      callbacks.onBandwidth(Math.max(0.1, Number(bandwidth.value) || 1));
    });

    const density = document.createElement("input");
    density.type = "checkbox";
    density.checked = initial.densityOn;
    density.className = "density-toggle";
    density.addEventListener("change", () => callbacks.onDensityToggle(density.checked));

    const mobilityColor = document.createElement("input");
    mobilityColor.type = "checkbox";
    mobilityColor.checked = initial.mobilityColorOn;
    mobilityColor.className = "mobility-color-toggle";
    mobilityColor.addEventListener("change", () => {
      callbacks.onMobilityColorToggle(mobilityColor.checked);
    });

    const reset = document.createElement("button");
    reset.textContent = "reset selection";
    reset.className = "reset-button";
    reset.addEventListener("click", () => callbacks.onReset());

    const labelled = (text: string, control: HTMLElement): HTMLElement => {
      const wrap = document.createElement("label");
      wrap.append(control, document.createTextNode(` ${text}`));
      return wrap;
    };

    this.root.append(
      modeSelect,
      labelled("samples", samples),
      labelled("bandwidth", bandwidth),
      labelled("density", density),
      labelled("mobility colors", mobilityColor),
      reset,
    );
    container.appendChild(this.root);
  }
}
