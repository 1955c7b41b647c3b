import type { MobilityResponse } from "./types";

/**
 * Mobility ranking list: one row per node, descending, with a proportional
 * bar and a lock toggle.  The top three arrive pre-locked from the session.
 */
export class Sidebar {
  readonly root: HTMLElement;
  private list: HTMLUListElement;

  onToggleLock: (nodeId: string, locked: boolean) => void = () => {};

  constructor(container: HTMLElement) {
    this.root = document.createElement("div");
    this.root.className = "sidebar";
    const heading = document.createElement("h2");
    heading.textContent = "Mobility";
    this.list = document.createElement("ul");
    this.list.className = "ranking";
    this.root.append(heading, this.list);
    container.appendChild(this.root);
  }

  setData(mobility: MobilityResponse, locked: string[]): void {
    this.list.replaceChildren();
    const lockedSet = new Set(locked);
    const max = Math.max(1e-12, ...mobility.ranking.map((e) => e.length));

    for (const entry of mobility.ranking) {
      const row = document.createElement("li");
      row.className = "ranking-row";
      row.dataset.nodeId = entry.node_id;

      const toggle = document.createElement("input");
      toggle.type = "checkbox";
      toggle.className = "lock-toggle";
      toggle.checked = lockedSet.has(entry.node_id);
      toggle.addEventListener("change", () => {
        this.onToggleLock(entry.node_id, toggle.checked);
      });

      const label = document.createElement("span");
      label.className = "row-label";
      label.textContent = entry.label;

      const bar = document.createElement("div");
      bar.className = "mobility-bar";
      bar.style.width = `${((entry.length / max) * 100).toFixed(2)}%`;
      bar.dataset.length = String(entry.length);

      const barTrack = document.createElement("div");
      barTrack.className = "mobility-bar-track";
      barTrack.appendChild(bar);

      row.append(toggle, label, barTrack);
      this.list.appendChild(row);
    }
  }
}
