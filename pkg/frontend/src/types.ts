/** Mirrors of the service's JSON payloads. The UI never invents numbers:
 * everything rendered comes from one of these shapes. */

export type TransformTag = "identity" | "log" | "logit";

export interface QuantilePair {
  alpha: number;
  value: number;
}

export interface ProportionView {
  anchor: number;
  width: number;
  theta_lo: number;
  theta_hi: number;
  level_lo: number;
  level_hi: number;
  interval: [number, number];
}

export interface LocationFit {
  family: string;
  params: Record<string, number>;
  residual: number;
  median: number;
}

export interface VarianceFit {
  family: string;
  params: [number, number];
  residual: number;
  sigma2_05: number;
  sigma2_95: number;
  levels: [number, number];
}

export interface Warning {
  code: string;
  message: string;
}

export type SessionState =
  | "Created"
  | "BoundsSet"
  | "MeanElicited"
  | "MeanFitted"
  | "ProportionElicited"
  | "VarianceFitted"
  | "FeedbackShown"
  | "Concluded";

export interface SessionView {
  id: string;
  state: SessionState;
  transform: TransformTag;
  seed: number;
  context: Record<string, string>;
  judgements: {
    lower: number | null;
    upper: number | null;
    mean_quantiles: QuantilePair[];
    proportion: ProportionView | null;
  };
  fits: {
    location: LocationFit | null;
    variance: VarianceFit | null;
  };
  warnings: Warning[];
}

export interface OverlayCurve {
  label: string;
  grid: number[];
  density: number[];
}

export interface FeedbackBundle {
  schema_version: number;
  config: {
    K: number;
    J: number;
    seed: number;
    band_level: number;
    quantile_interval_level: number;
  };
  grid: number[];
  cdf_lower: number[];
  cdf_median: number[];
  cdf_upper: number[];
  quantile_intervals: Record<string, [number, number]>;
  overlay_curves: OverlayCurve[];
}

export interface MeanSummary {
  mean_summary: Record<string, number>;
}

export interface ApiErrorBody {
  error: { code: string; message: string; details: Record<string, unknown> };
}

export interface SessionDocument {
  schema_version: number;
  id: string;
  context: Record<string, string>;
  transform: TransformTag;
  seed: number;
  state: SessionState;
  judgements: unknown;
  fits: unknown;
  history: Array<{ timestamp: string; event: string; payload: Record<string, unknown> }>;
}
