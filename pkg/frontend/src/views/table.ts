// Usage log table. Renders one API page verbatim, newest first as served.

import type { LogPage, WireRecord } from '../api.js';
import { formatLocalTimestamp, formatUtcTooltip } from '../format.js';

export const TABLE_COLUMNS = [
  'Responsible',
  'Tool',
  'Kind',
  'Justification',
  'Data types',
  'Timestamp',
] as const;

function cell(text: string): HTMLTableCellElement {
  const td = document.createElement('td');
  td.textContent = text;
  return td;
}

function row(record: WireRecord): HTMLTableRowElement {
  const tr = document.createElement('tr');
  tr.dataset.sequence = String(record.sequence);
  const entry = record.entry;
  tr.append(
    cell(entry.responsible),
    cell(entry.tool),
    cell(entry.kind),
    cell(entry.justification),
    cell(entry.data_types.join(', ')),
  );
  const td = document.createElement('td');
  const span = document.createElement('span');
  span.textContent = formatLocalTimestamp(entry.timestamp);
  span.title = formatUtcTooltip(entry.timestamp);
  td.append(span);
  tr.append(td);
  return tr;
}

export function renderTable(page: LogPage): HTMLElement {
  const wrapper = document.createElement('div');
  wrapper.className = 'log-table';

  if (page.items.length === 0) {
    const empty = document.createElement('p');
    empty.dataset.testid = 'empty-state';
    empty.className = 'muted';
    empty.textContent = 'No usages recorded for this view.';
    wrapper.append(empty);
    return wrapper;
  }

  const table = document.createElement('table');
  const thead = document.createElement('thead');
  const headRow = document.createElement('tr');
  for (const column of TABLE_COLUMNS) {
    const th = document.createElement('th');
    th.textContent = column;
    headRow.append(th);
  }
  thead.append(headRow);
  const tbody = document.createElement('tbody');
  for (const record of page.items) {
    tbody.append(row(record));
  }
  table.append(thead, tbody);
  wrapper.append(table);
  return wrapper;
}
