import { el, svg, px } from './dom.js';
import { formatDuration } from './format.js';
import { snapTarget, type Cursor, type SnapSpans } from './snap.js';
import type { ViewState } from './state.js';
import type { ClusteringScope, ClusteringView } from './types.js';

export const BAR_W = 640;
export const BAR_H = 56;
export const BAR_PAD = 9;

const DOT_R = 4.5;
const CURRENT_DOT_R = 7;
const DOT_COLOR = '#1f2937';

// Dots sit on a score axis from 0 to the best score seen in the scope.
export function scoreSpan(scope: ClusteringScope): number {
  return Math.max(scope.score_max, 1);
}

export function snapSpans(scope: ClusteringScope): SnapSpans {
  return { duration_s: scope.max_duration_s, points: scoreSpan(scope) };
}

function dotX(scope: ClusteringScope, durationS: number): number {
  return (durationS / Math.max(scope.max_duration_s, 1)) * BAR_W;
}

function dotY(scope: ClusteringScope, score: number): number {
  return BAR_H - BAR_PAD - (score / scoreSpan(scope)) * (BAR_H - 2 * BAR_PAD);
}

// Inverse of the dot placement, used to turn a mouse position back into
// payload units before snapping.
export function cursorFromBarPixels(scope: ClusteringScope, pxX: number, pxY: number): Cursor {
  return {
    x_s: (pxX / BAR_W) * Math.max(scope.max_duration_s, 1),
    y_pts: ((BAR_H - BAR_PAD - pxY) / (BAR_H - 2 * BAR_PAD)) * scoreSpan(scope),
  };
}

function scopeName(scope: ClusteringScope): string {
  return scope.scope === 'overall' ? 'overall' : `level-${scope.level}`;
}

function highlightPlayer(root: HTMLElement, playerId: number | null) {
  for (const row of root.querySelectorAll<HTMLElement>('.bar-row')) {
    const tip = row.querySelector<HTMLElement>('.tooltip');
    let shown = false;
    for (const dot of row.querySelectorAll<SVGElement>('circle.dot')) {
      const hit = playerId !== null && dot.getAttribute('data-player') === String(playerId);
      dot.classList.toggle('hot', hit);
      if (hit && tip) {
        tip.textContent = dot.getAttribute('data-tooltip');
        tip.style.left = `${dot.getAttribute('cx')}px`;
        tip.style.top = `${dot.getAttribute('cy')}px`;
        tip.style.display = 'block';
        shown = true;
      }
    }
    if (tip && !shown) tip.style.display = 'none';
  }
}

function renderBar(root: HTMLElement, scope: ClusteringScope, state: ViewState): HTMLElement {
  const row = el('div', 'bar-row');
  const head = el('div', 'bar-head');
  const title = scope.scope === 'overall' ? 'Overall' : `Level ${scope.level}`;
  head.appendChild(el('span', 'bar-title', title));
  head.appendChild(
    el('span', 'bar-stats', `${scope.dots.length} players, max ${formatDuration(scope.max_duration_s)}`),
  );
  row.appendChild(head);

  const chart = svg('svg', {
    class: 'bar',
    'data-scope': scopeName(scope),
    width: BAR_W,
    height: BAR_H,
    viewBox: `0 0 ${BAR_W} ${BAR_H}`,
  });

  // Darker shade up to the mean duration, brighter past it.
  const splitX = dotX(scope, Math.min(scope.mean_duration_s, scope.max_duration_s));
  chart.appendChild(
    svg('rect', { class: 'bar-early', x: 0, y: 0, width: px(splitX), height: BAR_H, fill: '#b7c0c9' }),
  );
  chart.appendChild(
    svg('rect', {
      class: 'bar-late',
      x: px(splitX),
      y: 0,
      width: px(BAR_W - splitX),
      height: BAR_H,
      fill: '#dde3e8',
    }),
  );

  for (const dot of scope.dots) {
    const current = dot.player_id === state.currentPlayerId;
    const hollow = dot.finished === false;
    const classes = ['dot'];
    if (current) classes.push('current');
    if (hollow) classes.push('unfinished');
    const circle = svg('circle', {
      class: classes.join(' '),
      cx: px(dotX(scope, dot.duration_s)),
      cy: px(dotY(scope, dot.score)),
      r: current ? CURRENT_DOT_R : DOT_R,
      fill: hollow ? 'none' : DOT_COLOR,
      stroke: DOT_COLOR,
      'stroke-width': 1.5,
      'data-player': dot.player_id,
      'data-tooltip': `${formatDuration(dot.duration_s)}, ${dot.score} pts`,
    });
    circle.addEventListener('mouseenter', () => highlightPlayer(root, dot.player_id));
    circle.addEventListener('mouseleave', () => highlightPlayer(root, null));
    chart.appendChild(circle);
  }

  chart.addEventListener('mousemove', (event) => {
    const mouse = event as MouseEvent;
    const rect = chart.getBoundingClientRect();
    const cursor = cursorFromBarPixels(scope, mouse.clientX - rect.left, mouse.clientY - rect.top);
    const hit = snapTarget(cursor, scope.dots, snapSpans(scope));
    highlightPlayer(root, hit ? hit.player_id : null);
  });
  chart.addEventListener('mouseleave', () => highlightPlayer(root, null));

  row.appendChild(chart);
  const tip = el('div', 'tooltip');
  tip.style.display = 'none';
  row.appendChild(tip);
  return row;
}

// The clustering view always shows the whole cohort; the dots carry no
// names, so the table toggles have nothing to hide here.
export function renderClustering(view: ClusteringView, state: ViewState): HTMLElement {
  const root = el('div', 'clustering');
  const head = el('div', 'view-head');
  head.appendChild(el('h2', undefined, 'Clustering'));
  head.appendChild(
    el('span', 'view-stats', `${view.player_count} players, ${view.finished_count} finished`),
  );
  root.appendChild(head);
  root.appendChild(renderBar(root, view.overall, state));
  for (const scope of view.levels) {
    root.appendChild(renderBar(root, scope, state));
  }
  return root;
}
