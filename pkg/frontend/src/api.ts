import type { ContextInfo, Mode, Page, SessionContexts, TreeNode } from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = 'ApiError';
  }
}

async function toError(response: Response): Promise<ApiError> {
  let detail = response.statusText || 'request failed';
  try {
    const body = await response.json();
    if (body && typeof body.detail === 'string') {
      detail = body.detail;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail);
}

/** Thin typed client for the gateway HTTP/JSON API. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, err instanceof Error ? err.message : 'network error');
    }
    if (!response.ok) {
      throw await toError(response);
    }
    return (await response.json()) as T;
  }

  getRoots(): Promise<string[]> {
    return this.request<string[]>('/api/roots');
  }

  getTree(root?: string): Promise<TreeNode> {
    const query = root ? `?root=${encodeURIComponent(root)}` : '';
    return this.request<TreeNode>(`/api/tree${query}`);
  }

  getPage(eloId: string, opts: { mode?: Mode; session?: string; root?: string } = {}): Promise<Page> {
    const params = new URLSearchParams();
    if (opts.mode) params.set('mode', opts.mode);
    if (opts.session) params.set('session', opts.session);
    if (opts.root) params.set('root', opts.root);
    const query = params.toString();
    return this.request<Page>(
      `/api/elos/${encodeURIComponent(eloId)}/page${query ? `?${query}` : ''}`,
    );
  }

  getContexts(): Promise<ContextInfo[]> {
    return this.request<ContextInfo[]>('/api/contexts');
  }

  putSessionContexts(sessionId: string, contextIds: string[]): Promise<SessionContexts> {
    return this.request<SessionContexts>(
      `/api/sessions/${encodeURIComponent(sessionId)}/contexts`,
      {
        method: 'PUT',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(contextIds),
      },
    );
  }

  getSessionContexts(sessionId: string): Promise<SessionContexts> {
    return this.request<SessionContexts>(
      `/api/sessions/${encodeURIComponent(sessionId)}/contexts`,
    );
  }
}
