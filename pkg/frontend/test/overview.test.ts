import { describe, expect, it } from 'vitest';

import type { OverviewStats } from '../src/api.js';
import { renderOverview } from '../src/views/overview.js';

const FIXTURE: OverviewStats = {
  accesses_today: 11,
  accesses_7d: 128,
  distinct_consumers_7d: 9,
  history_7d: [20, 20, 20, 20, 20, 17, 11],
  top_consumers_7d: [
    { consumer: 'erick@example.com', count: 40 },
    { consumer: 'dana@example.com', count: 30 },
    { consumer: 'smita@example.com', count: 12 },
  ],
};

function cardValue(view: HTMLElement, testId: string): string {
  const card = view.querySelector(`[data-testid="${testId}"] .card-value`);
  return card?.textContent ?? '';
}

describe('renderOverview', () => {
  it('shows the three counters exactly as the API reported them', () => {
    const view = renderOverview(FIXTURE);
    expect(cardValue(view, 'card-today')).toBe('11');
    expect(cardValue(view, 'card-7d')).toBe('128');
    expect(cardValue(view, 'card-consumers')).toBe('9');
  });

  it('draws seven bars, oldest on the left, labelled with the raw counts', () => {
    const view = renderOverview(FIXTURE);
    const bars = [...view.querySelectorAll('.chart-bar')];
    expect(bars.map((bar) => (bar as HTMLElement).dataset.count)).toEqual([
      '20', '20', '20', '20', '20', '17', '11',
    ]);
    expect(bars.map((bar) => bar.querySelector('.chart-bar-count')?.textContent)).toEqual(
      FIXTURE.history_7d.map(String),
    );
    const axis = view.querySelector('.chart-axis');
    expect(axis?.firstChild?.textContent).toBe('6 days ago');
    expect(axis?.lastChild?.textContent).toBe('today');
  });

  it('keeps the top consumer list in server order', () => {
    // Deliberately not sorted by count: the server ranking is authoritative.
    const scrambled: OverviewStats = {
      ...FIXTURE,
      top_consumers_7d: [
        { consumer: 'zoe', count: 2 },
        { consumer: 'abe', count: 9 },
        { consumer: 'mia', count: 5 },
      ],
    };
    const view = renderOverview(scrambled);
    const items = [...view.querySelectorAll('[data-testid="top-consumers"] li')];
    expect(items.map((li) => li.querySelector('.consumer-name')?.textContent)).toEqual(
      ['zoe', 'abe', 'mia'],
    );
    expect(items.map((li) => li.querySelector('.consumer-count')?.textContent)).toEqual(
      ['2', '9', '5'],
    );
  });

  it('renders a quiet week as zeros with a flat chart', () => {
    const silent: OverviewStats = {
      accesses_today: 0,
      accesses_7d: 0,
      distinct_consumers_7d: 0,
      history_7d: [0, 0, 0, 0, 0, 0, 0],
      top_consumers_7d: [],
    };
    const view = renderOverview(silent);
    expect(cardValue(view, 'card-today')).toBe('0');
    expect(cardValue(view, 'card-7d')).toBe('0');
    expect(cardValue(view, 'card-consumers')).toBe('0');
    const heights = [...view.querySelectorAll('.chart-bar-fill')].map(
      (fill) => (fill as HTMLElement).style.height,
    );
    expect(heights).toEqual(['0%', '0%', '0%', '0%', '0%', '0%', '0%']);
    expect(view.querySelector('[data-testid="top-consumers"]')).toBeNull();
    expect(view.textContent).toContain('Nobody consumed your data');
  });
});
