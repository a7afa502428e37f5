// Table filter state: what the user committed, how it travels in the page
// URL, and how it maps onto /api/log query parameters.

export interface TableFilterState {
  text: string;
  /** datetime-local input value ("YYYY-MM-DDTHH:MM"), empty when unset. */
  from: string;
  to: string;
  /** 0-based page. */
  pageIndex: number;
}

export const PAGE_SIZE = 50;

export function emptyFilter(): TableFilterState {
  return { text: '', from: '', to: '', pageIndex: 0 };
}

// datetime-local values carry no zone; they mean the viewer's wall clock.
export function localInputToUnix(value: string): number | null {
  if (!value) return null;
  const parsed = new Date(value);
  const ms = parsed.getTime();
  if (Number.isNaN(ms)) return null;
  return Math.floor(ms / 1000);
}

/** Returns a user-facing problem with the state, or null when it is valid. */
export function validateFilter(state: TableFilterState): string | null {
  const from = localInputToUnix(state.from);
  const to = localInputToUnix(state.to);
  if (state.from && from === null) return 'The "from" date is not valid.';
  if (state.to && to === null) return 'The "to" date is not valid.';
  if (from !== null && to !== null && from > to) {
    return 'The "from" date must not be after the "to" date.';
  }
  return null;
}

export function filterToQuery(state: TableFilterState): URLSearchParams {
  const params = new URLSearchParams();
  if (state.text) params.set('text', state.text);
  const from = localInputToUnix(state.from);
  if (from !== null) params.set('from', String(from));
  const to = localInputToUnix(state.to);
  if (to !== null) params.set('to', String(to));
  params.set('page_index', String(state.pageIndex));
  params.set('page_size', String(PAGE_SIZE));
  return params;
}

// The address bar keeps the raw inputs (not UNIX seconds) so a pasted link
// restores the form exactly as the sender saw it. Page is 1-based there.
export function filterToUrl(state: TableFilterState): string {
  const params = new URLSearchParams();
  if (state.text) params.set('text', state.text);
  if (state.from) params.set('from', state.from);
  if (state.to) params.set('to', state.to);
  if (state.pageIndex > 0) params.set('page', String(state.pageIndex + 1));
  const qs = params.toString();
  return qs ? `?${qs}` : '';
}

export function filterFromUrl(search: string): TableFilterState {
  const params = new URLSearchParams(search);
  const page = Number.parseInt(params.get('page') ?? '1', 10);
  return {
    text: params.get('text') ?? '',
    from: params.get('from') ?? '',
    to: params.get('to') ?? '',
    pageIndex: Number.isFinite(page) && page > 1 ? page - 1 : 0,
  };
}
