// Owner overview: three count cards, the 7-day history chart and the top
// consumer list. Every number shown here is a field of the API response;
// only bar heights are scaled for display.

import type { OverviewStats } from '../api.js';

function card(testId: string, value: number, label: string): HTMLElement {
  const el = document.createElement('article');
  el.className = 'card';
  el.dataset.testid = testId;
  const strong = document.createElement('strong');
  strong.className = 'card-value';
  strong.textContent = String(value);
  const span = document.createElement('span');
  span.className = 'card-label';
  span.textContent = label;
  el.append(strong, span);
  return el;
}

function historyChart(history: number[]): HTMLElement {
  const chart = document.createElement('div');
  chart.className = 'chart';
  chart.dataset.testid = 'history-chart';
  const max = Math.max(1, ...history);
  // Oldest day on the left, today on the right.
  for (const count of history) {
    const bar = document.createElement('div');
    bar.className = 'chart-bar';
    bar.dataset.count = String(count);
    const fill = document.createElement('div');
    fill.className = 'chart-bar-fill';
    fill.style.height = `${Math.round((count / max) * 100)}%`;
    const label = document.createElement('span');
    label.className = 'chart-bar-count';
    label.textContent = String(count);
    bar.append(fill, label);
    chart.append(bar);
  }
  return chart;
}

export function renderOverview(stats: OverviewStats): HTMLElement {
  const section = document.createElement('section');
  section.className = 'overview';
  section.dataset.testid = 'overview';

  const heading = document.createElement('h2');
  heading.textContent = 'Usage of your data';
  section.append(heading);

  const cards = document.createElement('div');
  cards.className = 'cards';
  cards.append(
    card('card-today', stats.accesses_today, 'accesses today'),
    card('card-7d', stats.accesses_7d, 'accesses in the last 7 days'),
    card('card-consumers', stats.distinct_consumers_7d, 'data consumers'),
  );
  section.append(cards);

  const chartBlock = document.createElement('div');
  chartBlock.className = 'chart-block';
  const chartTitle = document.createElement('h3');
  chartTitle.textContent = 'Access history';
  const axis = document.createElement('div');
  axis.className = 'chart-axis';
  const left = document.createElement('span');
  left.textContent = '6 days ago';
  const right = document.createElement('span');
  right.textContent = 'today';
  axis.append(left, right);
  chartBlock.append(chartTitle, historyChart(stats.history_7d), axis);
  section.append(chartBlock);

  const topTitle = document.createElement('h3');
  topTitle.textContent = 'Top consumers (7 days)';
  section.append(topTitle);
  if (stats.top_consumers_7d.length === 0) {
    const none = document.createElement('p');
    none.className = 'muted';
    none.textContent = 'Nobody consumed your data in the last 7 days.';
    section.append(none);
  } else {
    const list = document.createElement('ol');
    list.dataset.testid = 'top-consumers';
    // Server order is the audited ranking; do not re-sort.
    for (const item of stats.top_consumers_7d) {
      const li = document.createElement('li');
      const name = document.createElement('span');
      name.className = 'consumer-name';
      name.textContent = item.consumer;
      const count = document.createElement('span');
      count.className = 'consumer-count';
      count.textContent = String(item.count);
      li.append(name, count);
      list.append(li);
    }
    section.append(list);
  }
  return section;
}
