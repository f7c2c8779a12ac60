/** DOM rendering of the bipartite relationship view. */

import { edgeScore, visibleEdges, visibleNodeIds, ViewState } from "./state.js";
import { AxisNode, Bundle, Edge, edgeId, HistogramData, LinearNode } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export const NODE_WIDTH = 150;
export const NODE_HEIGHT = 130;
export const NODE_GAP = 16;
export const COLUMN_GAP = 260;
export const THUMB_SIZE = 96;
export const SELECTED_FILL = "#ffd9d9"; // light red
export const EDGE_COLOR = "#9a9a9a";
export const HIGHLIGHT_COLOR = "#d62728";

const PALETTE = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#7f7f7f",
];

/** Stroke width as a strictly increasing function of per-edge mass. */
export function edgeWidth(mass: number): number {
  return 1 + 7 * mass;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K
): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function colorFor(bundle: Bundle, index: number, colorBy: string): string {
  if (colorBy !== "labels" || !bundle.dataset.labels) return PALETTE[0];
  const label = bundle.dataset.labels[index];
  const classes = [...new Set(bundle.dataset.labels)].sort();
  return PALETTE[classes.indexOf(label) % PALETTE.length];
}

function thumbnail(
  bundle: Bundle,
  coords: number[][],
  colorBy: string
): SVGGElement {
  const g = svgEl("g");
  g.setAttribute("class", "thumbnail");
  const xs = coords.map((c) => c[0]);
  const ys = coords.map((c) => c[1]);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys);
  const yMax = Math.max(...ys);
  const span = Math.max(xMax - xMin, yMax - yMin, 1e-12);
  coords.forEach((c, i) => {
    const dot = svgEl("circle");
    dot.setAttribute("cx", String(((c[0] - xMin) / span) * THUMB_SIZE));
    dot.setAttribute("cy", String(THUMB_SIZE - ((c[1] - yMin) / span) * THUMB_SIZE));
    dot.setAttribute("r", "1.5");
    dot.setAttribute("fill", colorFor(bundle, i, colorBy));
    g.appendChild(dot);
  });
  return g;
}

function histogram(hist: HistogramData): SVGGElement {
  const g = svgEl("g");
  g.setAttribute("class", "histogram");
  const total = Math.max(
    hist.counts.reduce((a, b) => a + b, 0),
    1
  );
  const barWidth = THUMB_SIZE / hist.counts.length;
  hist.counts.forEach((count, i) => {
    const bar = svgEl("rect");
    const h = (count / total) * 24;
    bar.setAttribute("x", String(i * barWidth));
    bar.setAttribute("y", String(24 - h));
    bar.setAttribute("width", String(barWidth));
    bar.setAttribute("height", String(h));
    bar.setAttribute("fill", "#777");
    g.appendChild(bar);
  });
  return g;
}

function loadingTooltip(node: LinearNode, dimNames: string[]): string {
  const lines: string[] = [];
  for (let col = 0; col < 2; col++) {
    const ranked = node.basis
      .map((row, i) => ({ name: dimNames[i], value: row[col] }))
      .sort((a, b) => Math.abs(b.value) - Math.abs(a.value))
      .slice(0, 5)
      .map((e) => `${e.name}: ${e.value.toFixed(3)}`);
    lines.push(`component ${col + 1}: ${ranked.join(", ")}`);
  }
  return lines.join("\n");
}

interface NodeLayout {
  id: string;
  x: number;
  y: number;
}

function nodeGroup(
  bundle: Bundle,
  state: ViewState,
  id: string,
  x: number,
  y: number,
  coords: number[][],
  hist: HistogramData,
  title: string,
  onSelect: (id: string) => void
): SVGGElement {
  const g = svgEl("g");
  g.setAttribute("class", "node");
  g.setAttribute("data-node-id", id);
  g.setAttribute("transform", `translate(${x},${y})`);
  const frame = svgEl("rect");
  frame.setAttribute("width", String(NODE_WIDTH));
  frame.setAttribute("height", String(NODE_HEIGHT));
  frame.setAttribute("fill", state.selectedId === id ? SELECTED_FILL : "#ffffff");
  frame.setAttribute("stroke", "#444");
  g.appendChild(frame);
  const label = svgEl("text");
  label.setAttribute("x", "4");
  label.setAttribute("y", "12");
  label.setAttribute("font-size", "9");
  label.textContent = title;
  g.appendChild(label);

  const thumb = thumbnail(bundle, coords, state.colorBy);
  thumb.setAttribute("transform", "translate(27, 16)");
  g.appendChild(thumb);
  const bars = histogram(hist);
  bars.setAttribute("transform", "translate(27, 104)");
  g.appendChild(bars);
  g.addEventListener("click", () => onSelect(id));
  return g;
}

export interface RenderCallbacks {
  onSelect: (id: string) => void;
  onPlay: (edgeKey: string) => void;
}

/** Render the bipartite view into the container. Returns the SVG root. */
export function renderRelationshipView(
  bundle: Bundle,
  state: ViewState,
  container: HTMLElement,
  callbacks: RenderCallbacks
): SVGSVGElement {
  container.textContent = "";
  const svg = svgEl("svg");
  svg.setAttribute("class", "relationship-view");

  const edges = visibleEdges(bundle, state);
  const keepIds = visibleNodeIds(bundle, state);

  if (edges.length === 0) {
    const notice = document.createElement("p");
    notice.setAttribute("class", "empty-notice");
    notice.textContent =
      "No edges pass the current evidence filter. Lower the threshold to see more.";
    container.appendChild(notice);
    container.appendChild(svg);
    return svg;
  }

  const linear = bundle.linear_nodes.filter((n) => keepIds.has(n.id));
  const axes = bundle.axis_nodes
    .filter((n) => keepIds.has(n.id))
    .slice()
    .sort((a, b) => b.evid - a.evid);

  const layout = new Map<string, NodeLayout>();
  linear.forEach((n, i) => {
    layout.set(n.id, { id: n.id, x: 10, y: 10 + i * (NODE_HEIGHT + NODE_GAP) });
  });
  axes.forEach((n, i) => {
    layout.set(n.id, {
      id: n.id,
      x: 10 + NODE_WIDTH + COLUMN_GAP,
      y: 10 + i * (NODE_HEIGHT + NODE_GAP),
    });
  });

  const rows = Math.max(linear.length, axes.length);
  svg.setAttribute("width", String(20 + 2 * NODE_WIDTH + COLUMN_GAP));
  svg.setAttribute("height", String(20 + rows * (NODE_HEIGHT + NODE_GAP)));

  const edgeLayer = svgEl("g");
  edgeLayer.setAttribute("class", "edges");
  for (const edge of edges) {
    const from = layout.get(edge.linear_id)!;
    const to = layout.get(edge.axis_id)!;
    const line = svgEl("line");
    line.setAttribute("data-edge-id", edgeId(edge));
    line.setAttribute("data-mass", String(edge.mass));
    line.setAttribute("x1", String(from.x + NODE_WIDTH));
    line.setAttribute("y1", String(from.y + NODE_HEIGHT / 2));
    line.setAttribute("x2", String(to.x));
    line.setAttribute("y2", String(to.y + NODE_HEIGHT / 2));
    line.setAttribute("stroke-width", String(edgeWidth(edge.mass)));
    const incident =
      state.selectedId !== null &&
      (edge.linear_id === state.selectedId || edge.axis_id === state.selectedId);
    line.setAttribute("stroke", incident ? HIGHLIGHT_COLOR : EDGE_COLOR);
    if (incident) line.setAttribute("data-highlighted", "true");
    line.addEventListener("dblclick", () => callbacks.onPlay(edgeId(edge)));
    edgeLayer.appendChild(line);
  }
  svg.appendChild(edgeLayer);

  const nodeLayer = svgEl("g");
  nodeLayer.setAttribute("class", "nodes");
  for (const node of linear) {
    const pos = layout.get(node.id)!;
    const g = nodeGroup(
      bundle,
      state,
      node.id,
      pos.x,
      pos.y,
      node.coords,
      node.fidelity_histogram,
      `${node.id} (component 1/2)`,
      callbacks.onSelect
    );
    const tip = svgEl("title");
    tip.textContent = loadingTooltip(node as LinearNode, bundle.dataset.dim_names);
    g.appendChild(tip);
    nodeLayer.appendChild(g);
  }
  for (const node of axes) {
    const pos = layout.get(node.id)!;
    nodeLayer.appendChild(
      nodeGroup(
        bundle,
        state,
        node.id,
        pos.x,
        pos.y,
        node.coords,
        node.fidelity_histogram,
        `${(node as AxisNode).dim_names.join(" vs ")} (evid ${node.evid.toFixed(2)})`,
        callbacks.onSelect
      )
    );
  }
  svg.appendChild(nodeLayer);
  container.appendChild(svg);
  return svg;
}

export function findEdge(bundle: Bundle, key: string): Edge | undefined {
  return bundle.edges.find((e) => edgeId(e) === key);
}

export { edgeScore };
