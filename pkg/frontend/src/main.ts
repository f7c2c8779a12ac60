/** Application entry: fetch the bundle, wire state to the views. */

import { findEdge, renderRelationshipView } from "./render.js";
import {
  adjustFilter,
  initialState,
  selectNode,
  setTransition,
  ViewState,
} from "./state.js";
import { createTransition, TransitionController } from "./transition.js";
import { Bundle } from "./types.js";

async function fetchBundle(): Promise<Bundle> {
  const resp = await fetch("/bundle");
  if (!resp.ok) throw new Error(`bundle fetch failed: ${resp.status}`);
  return (await resp.json()) as Bundle;
}

function setup(bundle: Bundle) {
  const viewEl = document.getElementById("relationship-view")!;
  const transitionEl = document.getElementById("transition-view")!;
  const filterInput = document.getElementById("filter") as HTMLInputElement;
  const filterLabel = document.getElementById("filter-value")!;
  const scrubber = document.getElementById("scrubber") as HTMLInputElement;
  const playButton = document.getElementById("play")!;

  let state: ViewState = initialState(bundle);
  let controller: TransitionController | null = null;
  filterInput.value = String(state.filterThreshold);

  function redraw() {
    filterLabel.textContent = state.filterThreshold.toFixed(2);
    renderRelationshipView(bundle, state, viewEl as HTMLElement, {
      onSelect: (id) => {
        state = selectNode(bundle, state, state.selectedId === id ? null : id);
        redraw();
      },
      onPlay: (edgeKey) => {
        const edge = findEdge(bundle, edgeKey);
        if (!edge) return;
        state = setTransition(state, { edgeId: edgeKey, t: 0, playing: true });
        controller?.stop();
        controller = createTransition(bundle, edge, transitionEl as HTMLElement, (t) => {
          scrubber.value = String(t);
        });
        controller.play();
      },
    });
  }

  filterInput.addEventListener("input", () => {
    state = adjustFilter(bundle, state, Number(filterInput.value));
    redraw();
  });
  scrubber.addEventListener("input", () => {
    controller?.setT(Number(scrubber.value));
  });
  playButton.addEventListener("click", () => {
    controller?.play();
  });

  redraw();
}

const loading = document.getElementById("loading");
fetchBundle()
  .then((bundle) => {
    loading?.remove();
    setup(bundle);
  })
  .catch((err) => {
    if (loading) loading.textContent = `Failed to load bundle: ${err}`;
  });
