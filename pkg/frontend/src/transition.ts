/** Animated linear-to-axis transition rendering. */

import { displayFrame, project } from "./geometry.js";
import { Bundle, Edge } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const VIEW = 320;
const DURATION_MS = 2500;

export interface TransitionController {
  setT(t: number): void;
  play(): void;
  stop(): void;
  readonly t: number;
}

function axisDims(bundle: Bundle, edge: Edge): number[] {
  const node = bundle.axis_nodes.find((n) => n.id === edge.axis_id);
  if (!node) throw new Error(`unknown axis node ${edge.axis_id}`);
  return node.dims;
}

/** Fixed scale from the full-dimensional norms so no frame overflows:
 *  every orthonormal projection of x has norm at most |x|. */
function plotScale(samples: number[][]): number {
  let worst = 1e-12;
  for (const row of samples) {
    worst = Math.max(worst, Math.hypot(...row));
  }
  return VIEW / (2 * worst);
}

export function createTransition(
  bundle: Bundle,
  edge: Edge,
  container: HTMLElement,
  onTick?: (t: number) => void
): TransitionController {
  container.textContent = "";
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "transition-view");
  svg.setAttribute("width", String(VIEW));
  svg.setAttribute("height", String(VIEW));
  container.appendChild(svg);

  const samples = bundle.dataset.samples;
  const dims = axisDims(bundle, edge);
  const scale = plotScale(samples);
  const dots = samples.map(() => {
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("r", "2");
    dot.setAttribute("fill", "#1f77b4");
    svg.appendChild(dot);
    return dot;
  });

  let current = 0;
  let handle: number | null = null;

  function draw(t: number) {
    current = Math.min(1, Math.max(0, t));
    const coords = project(samples, displayFrame(edge, dims, current));
    coords.forEach((c, i) => {
      dots[i].setAttribute("cx", String(VIEW / 2 + c[0] * scale));
      dots[i].setAttribute("cy", String(VIEW / 2 - c[1] * scale));
    });
    svg.setAttribute("data-t", String(current));
    onTick?.(current);
  }

  function stop() {
    if (handle !== null) {
      cancelAnimationFrame(handle);
      handle = null;
    }
  }

  function play() {
    stop();
    const start = performance.now() - current * DURATION_MS;
    const step = (now: number) => {
      const t = (now - start) / DURATION_MS;
      draw(t);
      if (t < 1) {
        handle = requestAnimationFrame(step);
      } else {
        handle = null;
      }
    };
    handle = requestAnimationFrame(step);
  }

  draw(0);
  return {
    setT: (t) => {
      stop();
      draw(t);
    },
    play,
    stop,
    get t() {
      return current;
    },
  };
}
