/** Shapes of the analysis bundle served at GET /bundle. */

export interface HistogramData {
  bin_edges: number[];
  counts: number[];
}

export interface LinearNode {
  id: string;
  basis: number[][];
  coords: number[][];
  fidelity_histogram: HistogramData;
  mean_fidelity: number;
}

export interface AxisNode {
  id: string;
  dims: number[];
  dim_names: string[];
  coords: number[][];
  fidelity_histogram: HistogramData;
  mean_fidelity: number;
  evid: number;
}

export interface GeodesicParams {
  start_frame: number[][];
  direction_frame: number[][];
  angles: [number, number];
}

export interface Edge {
  linear_id: string;
  axis_id: string;
  mass: number;
  distortion: number;
  beta: number;
  reused: boolean;
  filtered: boolean;
  geodesic: GeodesicParams;
}

export interface Bundle {
  schema_version: number;
  version: string;
  config: { evidence_filter: number; [key: string]: unknown };
  dataset: {
    dim_names: string[];
    labels: string[] | null;
    removed_dims: string[];
    samples: number[][];
  };
  linear_nodes: LinearNode[];
  axis_nodes: AxisNode[];
  edges: Edge[];
  decompositions: unknown[];
}

export function edgeId(edge: Edge): string {
  return `${edge.linear_id}--${edge.axis_id}`;
}
