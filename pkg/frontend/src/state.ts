/** View state and its pure transition functions. */

import { Bundle, Edge } from "./types.js";

export interface TransitionState {
  edgeId: string;
  t: number;
  playing: boolean;
}

export interface ViewState {
  selectedId: string | null;
  filterThreshold: number;
  hoverId: string | null;
  transition: TransitionState | null;
  colorBy: "labels" | "single";
}

export function initialState(bundle: Bundle): ViewState {
  return {
    selectedId: null,
    filterThreshold: bundle.config.evidence_filter,
    hoverId: null,
    transition: null,
    colorBy: bundle.dataset.labels ? "labels" : "single",
  };
}

export function clamp01(t: number): number {
  return Math.min(1, Math.max(0, t));
}

/** Evidence contribution used for filtering: evid of the axis node times
 *  the per-edge mass (matches the engine's filtered flag at the bundle's
 *  own threshold). */
export function edgeScore(bundle: Bundle, edge: Edge): number {
  const axis = bundle.axis_nodes.find((n) => n.id === edge.axis_id);
  if (!axis) throw new Error(`edge references unknown axis node ${edge.axis_id}`);
  return axis.evid * edge.mass;
}

export function visibleEdges(bundle: Bundle, state: ViewState): Edge[] {
  return bundle.edges.filter(
    (e) => edgeScore(bundle, e) >= state.filterThreshold
  );
}

/** Node ids that keep at least one visible incident edge. */
export function visibleNodeIds(bundle: Bundle, state: ViewState): Set<string> {
  const ids = new Set<string>();
  for (const edge of visibleEdges(bundle, state)) {
    ids.add(edge.linear_id);
    ids.add(edge.axis_id);
  }
  return ids;
}

export function adjustFilter(
  bundle: Bundle,
  state: ViewState,
  threshold: number
): ViewState {
  if (threshold < 0 || threshold > 1) {
    throw new Error(`filter threshold ${threshold} outside [0, 1]`);
  }
  const next: ViewState = { ...state, filterThreshold: threshold };
  if (next.selectedId && !visibleNodeIds(bundle, next).has(next.selectedId)) {
    next.selectedId = null;
  }
  return next;
}

export function selectNode(
  bundle: Bundle,
  state: ViewState,
  id: string | null
): ViewState {
  if (id !== null) {
    const known =
      bundle.linear_nodes.some((n) => n.id === id) ||
      bundle.axis_nodes.some((n) => n.id === id);
    if (!known) throw new Error(`unknown node id ${id}`);
  }
  return { ...state, selectedId: id };
}

export function setTransition(
  state: ViewState,
  transition: TransitionState | null
): ViewState {
  if (transition) {
    transition = { ...transition, t: clamp01(transition.t) };
  }
  return { ...state, transition };
}
