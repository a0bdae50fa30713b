// The release gate for the dashboard: the two-player fixture renders with
// every advertised element, snapping resolves its documented examples, and
// the bulk visibility controls behave. Everything here runs headless.
import { describe, expect, it } from 'vitest';
import { snapSpans } from '../src/clustering.js';
import { snapTarget } from '../src/snap.js';
import { deselectAllPlayers, initialViewState, selectAllPlayers, setSortKey } from '../src/state.js';
import { renderTimeline } from '../src/timeline.js';
import { FIXTURE_CLUSTERING, FIXTURE_TIMELINE } from './fixtures.js';

describe('dashboard acceptance', () => {
  it('renders the fixture timeline completely', () => {
    const root = renderTimeline(FIXTURE_TIMELINE, initialViewState(FIXTURE_TIMELINE, null), () => {});

    expect(root.querySelectorAll('path.scoreline').length).toBe(2);
    expect(root.querySelectorAll('circle.mark-HintTaken').length).toBe(1);
    expect(root.querySelectorAll('line.maxline').length).toBe(2);
    expect(root.querySelectorAll('tbody tr').length).toBe(2);
  });

  it('sorts the table by final score into 9001, 9002', () => {
    const state = setSortKey(initialViewState(FIXTURE_TIMELINE, null), { kind: 'final' });
    const root = renderTimeline(FIXTURE_TIMELINE, state, () => {});
    const order = [...root.querySelectorAll('tbody tr')].map((r) => r.getAttribute('data-player'));
    expect(order).toEqual(['9001', '9002']);
  });

  it('passes the snap examples', () => {
    const level1 = FIXTURE_CLUSTERING.levels[0];
    const spans = snapSpans(level1);

    const exact = snapTarget({ x_s: 240, y_pts: 10 }, level1.dots, spans);
    expect(exact?.player_id).toBe(9002);

    expect(snapTarget({ x_s: 120, y_pts: 3 }, level1.dots, spans)).toBeNull();

    const near = snapTarget({ x_s: 280, y_pts: 9 }, level1.dots, spans, 0.2);
    expect(near?.player_id).toBe(9001);
    expect([near?.duration_s, near?.score]).toEqual([300, 8]);
  });

  it('select and deselect-all flip every non-current player', () => {
    const s0 = initialViewState(FIXTURE_TIMELINE, 9001);
    const cleared = deselectAllPlayers(s0);
    expect(cleared.visiblePlayers.has(9002)).toBe(false);
    expect(cleared.visiblePlayers.has(9001)).toBe(true);

    const rootCleared = renderTimeline(FIXTURE_TIMELINE, cleared, () => {});
    expect(rootCleared.querySelectorAll('path.scoreline').length).toBe(1);

    const restored = selectAllPlayers(cleared, FIXTURE_TIMELINE.table.map((r) => r.player_id));
    const rootRestored = renderTimeline(FIXTURE_TIMELINE, restored, () => {});
    expect(rootRestored.querySelectorAll('path.scoreline').length).toBe(2);
  });
});
