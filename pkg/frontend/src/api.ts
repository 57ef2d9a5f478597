// Thin typed client for the /api/v1 endpoints. Server errors surface as
// ApiError with the service's stable machine code, so views can map them
// onto form fields.

import type {
  AggregatePayload,
  ApiErrorBody,
  EstimateJson,
  EstimateSummary,
  GridPayload,
  ParamsJson,
  SessionDocument,
} from './types.js';

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly details: unknown;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.code = body.code;
    this.status = status;
    this.details = body.details;
  }
}

export interface QuestionSpec {
  prompt: string;
  domain_kind: 'probability' | 'utility';
  bounds?: [number, number];
  scenario_label?: string;
  question_id?: string;
}

async function parseError(response: Response): Promise<ApiError> {
  let body: ApiErrorBody;
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    body = { code: 'HTTP_' + response.status, message: response.statusText };
  }
  return new ApiError(response.status, body);
}

export class ApiClient {
  constructor(private readonly baseUrl: string = '') {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + '/api/v1' + path, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  createSession(questions: QuestionSpec[]): Promise<SessionDocument> {
    return this.request('POST', '/sessions', { questions });
  }

  getSession(sessionId: string): Promise<SessionDocument> {
    return this.request('GET', `/sessions/${encodeURIComponent(sessionId)}`);
  }

  closeSession(sessionId: string): Promise<SessionDocument> {
    return this.request('POST', `/sessions/${encodeURIComponent(sessionId)}/close`);
  }

  submitEstimate(sessionId: string, estimate: EstimateJson): Promise<EstimateSummary> {
    return this.request('POST', `/sessions/${encodeURIComponent(sessionId)}/estimates`, estimate);
  }

  fetchPreview(
    sessionId: string,
    questionId: string,
    params: ParamsJson,
    nPoints = 257,
  ): Promise<GridPayload> {
    const query = new URLSearchParams({
      low: String(params.low),
      median: String(params.median),
      high: String(params.high),
      phi: String(params.phi),
      n: String(nPoints),
    });
    const sid = encodeURIComponent(sessionId);
    const qid = encodeURIComponent(questionId);
    return this.request('GET', `/sessions/${sid}/questions/${qid}/preview?${query}`);
  }

  fetchAggregate(
    sessionId: string,
    questionId: string,
    weighted: boolean,
    nPoints = 1001,
  ): Promise<AggregatePayload> {
    const query = new URLSearchParams({ weighted: String(weighted), n: String(nPoints) });
    const sid = encodeURIComponent(sessionId);
    const qid = encodeURIComponent(questionId);
    return this.request('GET', `/sessions/${sid}/questions/${qid}/aggregate?${query}`);
  }
}
