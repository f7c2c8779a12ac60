/** Geodesic frame evaluation and 2D alignment helpers.
 *
 * All numerical analysis stays in the engine; this module only evaluates
 * the bundled geodesic parameters and small 2D transforms.
 */

import { Edge, GeodesicParams } from "./types.js";

export type Mat2 = [[number, number], [number, number]];

/** frame(t) = start * cos(t * theta_k) + direction * sin(t * theta_k), per column. */
export function evalGeodesicFrame(geo: GeodesicParams, t: number): number[][] {
  const d = geo.start_frame.length;
  const out: number[][] = [];
  for (let i = 0; i < d; i++) {
    const row: number[] = [];
    for (let k = 0; k < 2; k++) {
      const th = geo.angles[k] * t;
      row.push(
        geo.start_frame[i][k] * Math.cos(th) +
          geo.direction_frame[i][k] * Math.sin(th)
      );
    }
    out.push(row);
  }
  return out;
}

/** samples (n x d) through an orthonormal frame (d x 2) -> n x 2 coords. */
export function project(samples: number[][], frame: number[][]): number[][] {
  return samples.map((row) => {
    let x = 0;
    let y = 0;
    for (let i = 0; i < row.length; i++) {
      x += row[i] * frame[i][0];
      y += row[i] * frame[i][1];
    }
    return [x, y];
  });
}

export function rotation(theta: number): Mat2 {
  const c = Math.cos(theta);
  const s = Math.sin(theta);
  return [
    [c, -s],
    [s, c],
  ];
}

export function applyMat2(frame: number[][], m: Mat2): number[][] {
  return frame.map((row) => [
    row[0] * m[0][0] + row[1] * m[1][0],
    row[0] * m[0][1] + row[1] * m[1][1],
  ]);
}

/** In-plane map from the geodesic's final frame onto the canonical axis
 *  frame (e_p, e_q): a 2x2 orthogonal matrix. */
export function finalAlignment(geo: GeodesicParams, dims: number[]): Mat2 {
  const end = evalGeodesicFrame(geo, 1);
  const [p, q] = dims;
  // end^T Z where Z has columns e_p, e_q
  return [
    [end[p][0], end[q][0]],
    [end[p][1], end[q][1]],
  ];
}

export function det2(m: Mat2): number {
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

const ALIGN_PHASE_START = 0.9;

/** Frame shown at animation time t: the geodesic over the first 90%, then
 *  an appended in-plane rotation onto the canonical axis frame over the
 *  last 10%. An orientation-reversing alignment applies its mirror at the
 *  start of the final phase, since no rotation path can reach it. */
export function displayFrame(edge: Edge, dims: number[], t: number): number[][] {
  if (t <= ALIGN_PHASE_START) {
    return evalGeodesicFrame(edge.geodesic, t / ALIGN_PHASE_START);
  }
  const s = (t - ALIGN_PHASE_START) / (1 - ALIGN_PHASE_START);
  const end = evalGeodesicFrame(edge.geodesic, 1);
  let m = finalAlignment(edge.geodesic, dims);
  let base = end;
  if (det2(m) < 0) {
    const mirror: Mat2 = [
      [1, 0],
      [0, -1],
    ];
    base = applyMat2(end, mirror);
    m = [
      [m[0][0], m[0][1]],
      [-m[1][0], -m[1][1]],
    ];
  }
  const theta = Math.atan2(m[1][0], m[0][0]);
  return applyMat2(base, rotation(s * theta));
}

/** Best-fit pure rotation R minimizing ||A R - B||_F over 2D point sets. */
export function optimalRotation(a: number[][], b: number[][]): Mat2 {
  let sxx = 0;
  let sxy = 0;
  let syx = 0;
  let syy = 0;
  for (let i = 0; i < a.length; i++) {
    sxx += a[i][0] * b[i][0];
    sxy += a[i][0] * b[i][1];
    syx += a[i][1] * b[i][0];
    syy += a[i][1] * b[i][1];
  }
  const theta = Math.atan2(syx - sxy, sxx + syy);
  return rotation(theta);
}

export function maxPointDistance(a: number[][], b: number[][]): number {
  let worst = 0;
  for (let i = 0; i < a.length; i++) {
    const dx = a[i][0] - b[i][0];
    const dy = a[i][1] - b[i][1];
    worst = Math.max(worst, Math.hypot(dx, dy));
  }
  return worst;
}

/** Residual after the best rotation, optionally trying a mirror too. */
export function alignedResidual(
  a: number[][],
  b: number[][],
  allowReflection = false
): number {
  const candidates: number[][][] = [a];
  if (allowReflection) {
    candidates.push(a.map((row) => [row[0], -row[1]]));
  }
  let best = Infinity;
  for (const cand of candidates) {
    const rot = optimalRotation(cand, b);
    const mapped = cand.map((row) => [
      row[0] * rot[0][0] + row[1] * rot[1][0],
      row[0] * rot[0][1] + row[1] * rot[1][1],
    ]);
    best = Math.min(best, maxPointDistance(mapped, b));
  }
  return best;
}
