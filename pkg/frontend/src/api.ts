// Typed client for the safekeeper HTTP API. Response bodies are passed
// through untouched: the dashboard displays what the service computed and
// never aggregates records on its own.

export interface WireEntry {
  entry_id: string;
  responsible: string;
  tool: string;
  kind: string;
  justification: string;
  data_types: string[];
  owners: string[];
  timestamp: number;
}

export interface WireRecord {
  sequence: number;
  prev_hash: string;
  entry_hash: string;
  entry: WireEntry;
  tool_id: string;
  nonce: string;
  sent_at: number;
  signature: string;
}

export interface LogPage {
  items: WireRecord[];
  total: number;
  page_index: number;
  page_size: number;
}

export interface TopConsumer {
  consumer: string;
  count: number;
}

export interface OverviewStats {
  accesses_today: number;
  accesses_7d: number;
  distinct_consumers_7d: number;
  history_7d: number[];
  top_consumers_7d: TopConsumer[];
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
    this.name = 'ApiError';
  }
}

async function readError(response: Response): Promise<ApiError> {
  let code = 'http-error';
  let detail = `request failed with status ${response.status}`;
  try {
    const body = (await response.json()) as { error?: string; detail?: string };
    if (typeof body.error === 'string') code = body.error;
    if (typeof body.detail === 'string') detail = body.detail;
  } catch {
    // Non-JSON error body; keep the generic message.
  }
  return new ApiError(response.status, code, detail);
}

export class ApiClient {
  private readonly baseUrl: string;

  constructor(
    baseUrl: string,
    private readonly token: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
  }

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      headers: { Authorization: `Bearer ${this.token}` },
    });
    if (!response.ok) {
      throw await readError(response);
    }
    return (await response.json()) as T;
  }

  fetchLog(params: URLSearchParams): Promise<LogPage> {
    const qs = params.toString();
    return this.get<LogPage>(qs ? `/api/log?${qs}` : '/api/log');
  }

  fetchOverview(): Promise<OverviewStats> {
    return this.get<OverviewStats>('/api/overview');
  }
}
