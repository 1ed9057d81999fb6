/** Payload shapes of the analysis-session HTTP API. */

export interface SessionSummary {
  session_id: string;
  n_items: number;
  attributes: string[];
  constant_attributes: string[];
  deduped_ids: { label: string; id: string }[];
}

export interface SessionDetail {
  n_items: number;
  attributes: string[];
  weights: Record<string, number>;
  n_ratings: number;
  has_projection: boolean;
  schemes: string[];
  ranking: RankedRow[];
  partition: Partition | null;
  normalized: Record<string, Record<string, number>>;
}

export interface RankedRow {
  id: string;
  score: number;
  rank: number;
}

export interface Partition {
  n_ratings: number;
  split_points: number[];
  assignment: Record<string, number>;
}

export interface RerankResponse {
  weights: Record<string, number>;
  ranking: RankedRow[];
  partition: Partition | null;
  training: { constraints: number; c: number; iterations: number; converged: boolean };
}

export interface ProjectionConfigBody {
  method: "pca" | "tsne";
  seed?: number;
  perplexity?: number;
  iterations?: number;
  learning_rate?: number;
}

export interface ProjectionResponse {
  coords: { id: string; x: number; y: number }[];
  config: Required<ProjectionConfigBody>;
  weights_fingerprint: string;
}

export type PolylineKind = "sequence" | "rating" | "self_defined";

export interface PolylineResponse {
  kind: PolylineKind;
  anchors: { x: number; y: number; label: number }[];
}

export interface AxisPlacement {
  id: string;
  segment_index: number;
  t: number;
  arc_position: number;
  distance: number;
  bracket: [number, number];
  inverse_ordinal: number;
  consistency: "consistent" | "improved" | "worsened";
}

export interface InconsistencyRow {
  ids: [string, string, string];
  verdict: string;
  witness: string | null;
  severity: number;
}

export interface ComparisonRow {
  item_id: string;
  rank_a: number;
  rank_b: number;
  delta: number;
  arrow: "up" | "down" | "flat";
}

export interface ComparisonResponse {
  scheme_a: string;
  scheme_b: string;
  rows: ComparisonRow[];
}
