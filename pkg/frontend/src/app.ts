// Application shell: login, the owner overview, and the filterable usage
// table. The dashboard holds no data of its own; everything rendered comes
// from one /api/overview call at login plus one /api/log call per committed
// filter change.

import { ApiClient, ApiError } from './api.js';
import type { FetchLike, LogPage, OverviewStats } from './api.js';
import {
  emptyFilter,
  filterFromUrl,
  filterToQuery,
  filterToUrl,
  validateFilter,
} from './filters.js';
import type { TableFilterState } from './filters.js';
import { renderOverview } from './views/overview.js';
import { renderTable } from './views/table.js';

export type Role = 'owner' | 'consumer';

export interface DashboardSession {
  client: ApiClient;
  subject: string;
  role: Role;
  overview: OverviewStats | null;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function labelled(labelText: string, input: HTMLElement): HTMLLabelElement {
  const label = el('label');
  label.append(el('span', 'field-label', labelText), input);
  return label;
}

export class DashboardApp {
  private session: DashboardSession | null = null;
  private filter: TableFilterState = emptyFilter();
  private lastPage: LogPage | null = null;
  // Bumped on every table request and on logout; a response whose ticket
  // is stale gets dropped instead of overwriting newer data.
  private generation = 0;
  private lastWork: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    private readonly fetchFn?: FetchLike,
  ) {}

  start(): void {
    this.renderLogin();
  }

  /** Resolves once all work started so far (including chained work) is done. */
  async settled(): Promise<void> {
    let current;
    do {
      current = this.lastWork;
      await current.catch(() => undefined);
    } while (current !== this.lastWork);
  }

  private track(work: Promise<void>): void {
    this.lastWork = work;
  }

  // ---- login ----------------------------------------------------------

  private renderLogin(message?: string): void {
    this.root.replaceChildren();
    const section = el('section', 'login');
    section.dataset.testid = 'login-form';
    section.append(el('h1', undefined, 'Safekeeper'));
    section.append(
      el('p', 'muted', 'Sign in with the service address and your access token.'),
    );

    const form = el('form');
    const baseUrl = el('input') as HTMLInputElement;
    baseUrl.type = 'url';
    baseUrl.required = true;
    baseUrl.placeholder = 'http://127.0.0.1:8686';
    baseUrl.dataset.testid = 'login-url';
    const token = el('input') as HTMLInputElement;
    token.type = 'password';
    token.required = true;
    token.dataset.testid = 'login-token';
    const subject = el('input') as HTMLInputElement;
    subject.type = 'text';
    subject.placeholder = 'shown in the header only';
    subject.dataset.testid = 'login-subject';
    const submit = el('button', undefined, 'Sign in') as HTMLButtonElement;
    submit.type = 'submit';
    submit.dataset.testid = 'login-submit';

    const error = el('p', 'error');
    error.dataset.testid = 'login-error';
    if (message) error.textContent = message;

    form.append(
      labelled('Service URL', baseUrl),
      labelled('Access token', token),
      labelled('Your name (optional)', subject),
      submit,
      error,
    );
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      this.track(this.login(baseUrl.value, token.value, subject.value, error));
    });
    section.append(form);
    this.root.append(section);
  }

  private async login(
    baseUrl: string,
    token: string,
    subject: string,
    errorOut: HTMLElement,
  ): Promise<void> {
    const client = new ApiClient(baseUrl, token, this.fetchFn);
    let role: Role;
    let overview: OverviewStats | null = null;
    try {
      overview = await client.fetchOverview();
      role = 'owner';
    } catch (err) {
      if (err instanceof ApiError && err.status === 403) {
        // Authenticated, but not a data owner: log view only.
        role = 'consumer';
      } else if (err instanceof ApiError) {
        errorOut.textContent = `Sign-in failed (${err.code}): ${err.detail}`;
        return;
      } else {
        errorOut.textContent = 'Sign-in failed: the service is unreachable.';
        return;
      }
    }
    this.session = { client, subject: subject.trim(), role, overview };
    this.filter = filterFromUrl(window.location.search);
    this.renderShell();
    await this.loadTable();
  }

  private logout(): void {
    this.session = null;
    this.lastPage = null;
    this.filter = emptyFilter();
    this.generation += 1; // strands any in-flight response
    window.history.replaceState(null, '', window.location.pathname);
    this.renderLogin();
  }

  // ---- authenticated shell --------------------------------------------

  private renderShell(): void {
    const session = this.session;
    if (!session) return;
    this.root.replaceChildren();

    const header = el('header', 'topbar');
    header.append(el('h1', undefined, 'Safekeeper'));
    const who = el('span', 'whoami');
    const name = session.subject || 'signed in';
    who.textContent = session.role === 'owner' ? `${name} · data owner` : name;
    const logout = el('button', 'logout', 'Log out') as HTMLButtonElement;
    logout.type = 'button';
    logout.dataset.testid = 'logout';
    logout.addEventListener('click', () => this.logout());
    header.append(who, logout);
    this.root.append(header);

    if (session.role === 'owner' && session.overview) {
      this.root.append(renderOverview(session.overview));
    }

    const logSection = el('section', 'log');
    logSection.append(el('h2', undefined, 'Usage log'));
    logSection.append(this.buildFilterForm());
    const tableArea = el('div');
    tableArea.dataset.testid = 'table-area';
    const pager = el('div', 'pager');
    pager.dataset.testid = 'pager';
    logSection.append(tableArea, pager);
    this.root.append(logSection);
  }

  private buildFilterForm(): HTMLFormElement {
    const form = el('form', 'filters');
    form.dataset.testid = 'filter-form';

    const text = el('input') as HTMLInputElement;
    text.type = 'search';
    text.placeholder = 'justification or data type';
    text.dataset.testid = 'filter-text';
    text.value = this.filter.text;
    const from = el('input') as HTMLInputElement;
    from.type = 'datetime-local';
    from.dataset.testid = 'filter-from';
    from.value = this.filter.from;
    const to = el('input') as HTMLInputElement;
    to.type = 'datetime-local';
    to.dataset.testid = 'filter-to';
    to.value = this.filter.to;

    const apply = el('button', undefined, 'Apply') as HTMLButtonElement;
    apply.type = 'submit';
    apply.dataset.testid = 'filter-apply';
    const clear = el('button', undefined, 'Clear') as HTMLButtonElement;
    clear.type = 'button';
    clear.dataset.testid = 'filter-clear';

    const error = el('p', 'error');
    error.dataset.testid = 'filter-error';

    form.append(
      labelled('Search', text),
      labelled('From', from),
      labelled('To', to),
      apply,
      clear,
      error,
    );

    form.addEventListener('submit', (event) => {
      event.preventDefault();
      this.track(
        this.commitFilter(
          { text: text.value.trim(), from: from.value, to: to.value, pageIndex: 0 },
          error,
        ),
      );
    });
    clear.addEventListener('click', () => {
      text.value = '';
      from.value = '';
      to.value = '';
      error.textContent = '';
      this.track(this.commitFilter(emptyFilter(), error));
    });
    return form;
  }

  private async commitFilter(
    next: TableFilterState,
    errorOut: HTMLElement,
  ): Promise<void> {
    const problem = validateFilter(next);
    if (problem) {
      errorOut.textContent = problem;
      return; // invalid input never reaches the API
    }
    errorOut.textContent = '';
    this.filter = next;
    window.history.pushState(null, '', window.location.pathname + filterToUrl(next));
    await this.loadTable();
  }

  private async loadTable(): Promise<void> {
    const session = this.session;
    if (!session) return;
    const ticket = ++this.generation;
    const tableArea = this.root.querySelector('[data-testid="table-area"]');
    const pager = this.root.querySelector('[data-testid="pager"]');
    if (!tableArea || !pager) return;
    try {
      const page = await session.client.fetchLog(filterToQuery(this.filter));
      if (ticket !== this.generation) return; // a newer request won
      this.lastPage = page;
      tableArea.replaceChildren(renderTable(page));
      pager.replaceChildren(...this.buildPager(page));
    } catch (err) {
      if (ticket !== this.generation) return;
      this.lastPage = null;
      const banner = el('p', 'error');
      banner.dataset.testid = 'table-error';
      banner.textContent =
        err instanceof ApiError
          ? `Could not load the log (${err.code}): ${err.detail}`
          : 'Could not load the log: the service is unreachable.';
      tableArea.replaceChildren(banner);
      pager.replaceChildren();
    }
  }

  private buildPager(page: LogPage): HTMLElement[] {
    const status = el('span', 'pager-status');
    status.dataset.testid = 'pager-status';
    status.textContent = `Page ${this.filter.pageIndex + 1} · ${page.total} usages`;

    const prev = el('button', undefined, 'Previous') as HTMLButtonElement;
    prev.type = 'button';
    prev.dataset.testid = 'pager-prev';
    prev.disabled = this.filter.pageIndex === 0;
    const next = el('button', undefined, 'Next') as HTMLButtonElement;
    next.type = 'button';
    next.dataset.testid = 'pager-next';
    next.disabled = (page.page_index + 1) * page.page_size >= page.total;

    const turn = (delta: number) => {
      const moved = { ...this.filter, pageIndex: this.filter.pageIndex + delta };
      window.history.pushState(null, '', window.location.pathname + filterToUrl(moved));
      this.filter = moved;
      this.track(this.loadTable());
    };
    prev.addEventListener('click', () => turn(-1));
    next.addEventListener('click', () => turn(1));
    return [prev, status, next];
  }
}
