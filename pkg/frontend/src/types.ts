export interface QuiverArrow {
  label: string;
  src: unknown;
  dst: unknown;
  frozen: boolean;
}

export interface QuiverVertex {
  id: unknown;
  frozen: boolean;
}

export interface QuiverJson {
  vertices: QuiverVertex[];
  arrows: QuiverArrow[];
}

export interface MatrixJson {
  rows: number;
  cols: number;
  entries: number[];
}

export interface LayoutCell {
  id: unknown;
  row: number;
  col: number;
  shadow?: boolean;
}

export interface StatePayload {
  fixture: string;
  framed: boolean;
  version: number;
  quiver: QuiverJson;
  order: unknown[];
  trail: unknown[];
  colors: Record<string, "green" | "red">;
  lambda: MatrixJson;
  btilde: MatrixJson;
  bhat: MatrixJson;
  d: number;
  g_vectors: Record<string, number[]>;
  cluster: Record<string, string>;
  layout: LayoutCell[];
  all_red: boolean;
  sigma?: Record<string, unknown> | null;
  hash: string;
  exchange?: InvariantPayload | null;
}

export interface InvariantPayload {
  u: string;
  v: string;
  tropical_uv: number;
  tropical_vu: number;
  f_invariant: number;
  d_invariant: number;
  lambda_entry?: number | null;
}

export interface ApiError {
  error: string;
  detail: string;
}

export function vertexKey(id: unknown): string {
  if (Array.isArray(id)) return `(${id.map(vertexKey).join(",")})`;
  return String(id);
}
