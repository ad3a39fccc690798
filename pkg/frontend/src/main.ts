/** Browser entry point: wires the controller to the DOM. */

import { ReviewApi } from "./api.js";
import { actionForKey } from "./keyboard.js";
import { renderQueue } from "./render.js";
import { QueueController } from "./state.js";

function scopeFor(root: Element): "global" | "occurrence" {
  const box = root.querySelector<HTMLInputElement>(".scope-occurrence");
  return box && box.checked ? "occurrence" : "global";
}

export function mount(root: HTMLElement, controller: QueueController): void {
  controller.subscribe(() => {
    root.innerHTML = renderQueue(
      controller.items,
      controller.totalPending,
      controller.progress,
      controller.error,
    );
  });

  root.addEventListener("click", (event) => {
    const button = (event.target as Element).closest("button.candidate");
    if (!button) return;
    const li = button.closest("li.item");
    if (!li) return;
    const doc = li.getAttribute("data-doc");
    const offset = Number(li.getAttribute("data-offset"));
    const item = controller.items.find(
      (i) => i.doc_id === doc && i.char_offset === offset,
    );
    if (!item) return;
    const index = Number(button.getAttribute("data-index"));
    const scope = scopeFor(li);
    if (index < item.candidates.length) {
      void controller.decide(item, item.candidates[index], scope);
    } else {
      void controller.keepAsIs(item, scope);
    }
  });

  document.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLInputElement) return;
    const first = controller.items[0];
    const action = actionForKey(event.key, first);
    if (action.kind === "none") return;
    event.preventDefault();
    const li = root.querySelector("li.item");
    const scope = li ? scopeFor(li) : "global";
    if (action.kind === "rerun") void controller.rerun();
    else if (action.kind === "choose" && first)
      void controller.decide(first, first.candidates[action.index], scope);
    else if (action.kind === "keep" && first)
      void controller.keepAsIs(first, scope);
    else if (action.kind === "toggle-scope" && li) {
      const box = li.querySelector<HTMLInputElement>(".scope-occurrence");
      if (box) box.checked = !box.checked;
    }
  });

  void controller.load();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const api = new ReviewApi((url, init) => fetch(url, init));
  mount(document.getElementById("app")!, new QueueController(api));
}
