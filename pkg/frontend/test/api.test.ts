import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api.js';
import type { FetchLike, OverviewStats } from '../src/api.js';

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

interface Recorded {
  url: string;
  init?: RequestInit;
}

function recordingFetch(
  respond: (url: string) => Response,
): { calls: Recorded[]; fetchFn: FetchLike } {
  const calls: Recorded[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    calls.push({ url, init });
    return respond(url);
  };
  return { calls, fetchFn };
}

const OVERVIEW: OverviewStats = {
  accesses_today: 11,
  accesses_7d: 128,
  distinct_consumers_7d: 9,
  history_7d: [20, 20, 20, 20, 20, 17, 11],
  top_consumers_7d: [{ consumer: 'erick', count: 40 }],
};

describe('ApiClient', () => {
  it('hits /api/overview with the bearer token', async () => {
    const { calls, fetchFn } = recordingFetch(() => jsonResponse(OVERVIEW));
    const client = new ApiClient('http://svc:8686', 'tok-alex', fetchFn);
    const stats = await client.fetchOverview();
    expect(calls).toHaveLength(1);
    expect(calls[0]!.url).toBe('http://svc:8686/api/overview');
    expect((calls[0]!.init?.headers as Record<string, string>).Authorization).toBe(
      'Bearer tok-alex',
    );
    // Passthrough: the client must not reshape or re-aggregate anything.
    expect(stats).toEqual(OVERVIEW);
  });

  it('strips trailing slashes from the base URL', async () => {
    const { calls, fetchFn } = recordingFetch(() => jsonResponse(OVERVIEW));
    await new ApiClient('http://svc:8686///', 't', fetchFn).fetchOverview();
    expect(calls[0]!.url).toBe('http://svc:8686/api/overview');
  });

  it('appends the exact query string to /api/log', async () => {
    const page = { items: [], total: 0, page_index: 0, page_size: 50 };
    const { calls, fetchFn } = recordingFetch(() => jsonResponse(page));
    const client = new ApiClient('http://svc:8686', 't', fetchFn);
    const params = new URLSearchParams();
    params.set('text', 'jira');
    params.set('page_index', '0');
    params.set('page_size', '50');
    expect(await client.fetchLog(params)).toEqual(page);
    expect(calls[0]!.url).toBe(
      'http://svc:8686/api/log?text=jira&page_index=0&page_size=50',
    );
  });

  it('surfaces the service error class and detail', async () => {
    const { fetchFn } = recordingFetch(() =>
      jsonResponse({ error: 'forbidden', detail: 'requires owner role' }, 403),
    );
    const client = new ApiClient('http://svc:8686', 't', fetchFn);
    const failure = await client.fetchOverview().catch((err) => err);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(403);
    expect(failure.code).toBe('forbidden');
    expect(failure.detail).toBe('requires owner role');
  });

  it('copes with non-JSON error bodies', async () => {
    const { fetchFn } = recordingFetch(
      () => new Response('gateway exploded', { status: 502 }),
    );
    const client = new ApiClient('http://svc:8686', 't', fetchFn);
    const failure = await client.fetchOverview().catch((err) => err);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(502);
    expect(failure.code).toBe('http-error');
  });

  it('lets transport failures bubble unchanged', async () => {
    const boom = new TypeError('network down');
    const fetchFn: FetchLike = async () => {
      throw boom;
    };
    const client = new ApiClient('http://svc:8686', 't', fetchFn);
    await expect(client.fetchOverview()).rejects.toBe(boom);
  });
});
