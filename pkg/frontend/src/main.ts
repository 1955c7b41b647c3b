import { App } from "./app";
import "./style.css";

function measure(el: HTMLElement, fallbackW: number, fallbackH: number) {
  const rect = el.getBoundingClientRect();
  return {
    width: rect.width > 0 ? Math.floor(rect.width) : fallbackW,
    height: rect.height > 0 ? Math.floor(rect.height) : fallbackH,
  };
}

window.addEventListener("DOMContentLoaded", () => {
  const byId = (id: string) => {
    const el = document.getElementById(id);
    if (!el) throw new Error(`missing #${id}`);
    return el;
  };
  const main = byId("main-view");
  const timeline = byId("timeline");

  const app = new App(
    {
      toolbar: byId("toolbar"),
      sidebar: byId("sidebar"),
      main,
      timeline,
    },
    undefined,
    {
      mainSize: measure(main, 900, 560),
      timelineSize: measure(timeline, 900, 120),
    },
  );
  app.init().catch((error) => {
    main.textContent = `failed to load: ${error}`;
  });
});
