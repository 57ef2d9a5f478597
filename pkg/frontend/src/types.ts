// Wire types for the /api/v1 service. These mirror the server's JSON
// schemas exactly; the UI never invents numeric fields of its own.

export interface ParamsJson {
  low: number;
  median: number;
  high: number;
  phi: number;
}

export type VariantChoice = 'sharp' | 'wide';

export interface QuestionJson {
  question_id: string;
  prompt: string;
  domain_kind: 'probability' | 'utility';
  bounds: [number, number];
  scenario_label: string | null;
}

export interface EstimateJson {
  question_id: string;
  expert_id: string;
  params: ParamsJson;
  weight: number;
  variant_choice: VariantChoice;
}

export interface SessionDocument {
  session_id: string;
  status: 'open' | 'closed';
  created_at: string;
  questions: QuestionJson[];
  estimates: EstimateJson[];
}

export interface GridPayload {
  x: number[];
  density: number[];
}

export interface AggregatePayload extends GridPayload {
  modes: number[];
  contributor_ids: string[];
}

export interface EstimateSummary {
  session_id: string;
  status: string;
  question_id: string;
  expert_id: string;
  estimate_count: number;
  experts: string[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details?: unknown;
}
