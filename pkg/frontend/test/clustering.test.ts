import { describe, expect, it } from 'vitest';
import { cursorFromBarPixels, renderClustering, snapSpans } from '../src/clustering.js';
import { snapTarget } from '../src/snap.js';
import { initialViewState } from '../src/state.js';
import { cloneClustering, FIXTURE_CLUSTERING, FIXTURE_TIMELINE } from './fixtures.js';

function render(current: number | null = null, view = FIXTURE_CLUSTERING) {
  return renderClustering(view, initialViewState(FIXTURE_TIMELINE, current));
}

describe('renderClustering', () => {
  it('draws one bar per scope', () => {
    const root = render();
    const bars = root.querySelectorAll('svg.bar');
    expect(bars.length).toBe(3);
    expect([...bars].map((b) => b.getAttribute('data-scope'))).toEqual(['overall', 'level-1', 'level-2']);
  });

  it('splits each bar darker-to-brighter at the mean duration', () => {
    const root = render();
    const overall = root.querySelector('svg[data-scope="overall"]')!;
    const early = overall.querySelector('rect.bar-early')!;
    const late = overall.querySelector('rect.bar-late')!;
    // mean 660 of max 720 over a 640-unit bar
    expect(early.getAttribute('width')).toBe('586.67');
    expect(late.getAttribute('x')).toBe('586.67');
  });

  it('places dots by duration and score with exact tooltips', () => {
    const root = render();
    const dot = root.querySelector('svg[data-scope="overall"] circle.dot[data-player="9001"]')!;
    expect(dot.getAttribute('cx')).toBe('533.33');
    expect(dot.getAttribute('cy')).toBe('9');
    expect(dot.getAttribute('data-tooltip')).toBe('0:10:00, 27 pts');
    const l1 = root.querySelector('svg[data-scope="level-1"] circle.dot[data-player="9001"]')!;
    expect(l1.getAttribute('data-tooltip')).toBe('0:05:00, 8 pts');
  });

  it('renders the whole cohort regardless of scoreline toggles', () => {
    const state = initialViewState(FIXTURE_TIMELINE, null);
    const hidden = { ...state, visiblePlayers: new Set<number>() };
    const root = renderClustering(FIXTURE_CLUSTERING, hidden);
    expect(root.querySelectorAll('circle.dot').length).toBe(6);
  });

  it('bulks up the current player everywhere', () => {
    const root = render(9001);
    const mine = root.querySelectorAll('circle.dot.current');
    expect(mine.length).toBe(3);
    for (const dot of mine) expect(dot.getAttribute('r')).toBe('7');
    const other = root.querySelector('circle.dot[data-player="9002"]')!;
    expect(other.getAttribute('r')).toBe('4.5');
  });

  it('draws unfinished players hollow', () => {
    const view = cloneClustering();
    view.overall.dots[1].finished = false;
    const root = render(null, view);
    const dot = root.querySelector('svg[data-scope="overall"] circle.dot[data-player="9002"]')!;
    expect(dot.classList.contains('unfinished')).toBe(true);
    expect(dot.getAttribute('fill')).toBe('none');
    const solid = root.querySelector('svg[data-scope="overall"] circle.dot[data-player="9001"]')!;
    expect(solid.getAttribute('fill')).not.toBe('none');
  });

  it('hover highlights the same player in every bar with tooltips', () => {
    const root = render();
    const overallDot = root.querySelector<SVGElement>('svg[data-scope="overall"] circle.dot[data-player="9001"]')!;
    overallDot.dispatchEvent(new MouseEvent('mouseenter'));

    const hot = root.querySelectorAll('circle.dot.hot');
    expect(hot.length).toBe(3);
    for (const dot of hot) expect(dot.getAttribute('data-player')).toBe('9001');

    const tips = [...root.querySelectorAll<HTMLElement>('.bar-row .tooltip')];
    expect(tips.map((t) => t.style.display)).toEqual(['block', 'block', 'block']);
    expect(tips.map((t) => t.textContent)).toEqual(['0:10:00, 27 pts', '0:05:00, 8 pts', '0:05:00, 19 pts']);

    overallDot.dispatchEvent(new MouseEvent('mouseleave'));
    expect(root.querySelectorAll('circle.dot.hot').length).toBe(0);
    expect(tips.every((t) => t.style.display === 'none')).toBe(true);
  });

  it('maps bar pixels back to payload units for snapping', () => {
    const level1 = FIXTURE_CLUSTERING.levels[0];
    // 9002's dot sits at pixel (512, 9); inverting must land on (240 s, 10 pts)
    const cursor = cursorFromBarPixels(level1, 512, 9);
    expect(cursor.x_s).toBeCloseTo(240, 9);
    expect(cursor.y_pts).toBeCloseTo(10, 9);
    const hit = snapTarget(cursor, level1.dots, snapSpans(level1));
    expect(hit?.player_id).toBe(9002);
  });

  it('is a pure function of (payload, state)', () => {
    const state = initialViewState(FIXTURE_TIMELINE, 9001);
    const a = renderClustering(FIXTURE_CLUSTERING, state).outerHTML;
    const b = renderClustering(FIXTURE_CLUSTERING, state).outerHTML;
    expect(a).toBe(b);
  });
});
