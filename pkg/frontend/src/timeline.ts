import { colorsByPlayer } from './color.js';
import { el, svg, px } from './dom.js';
import { formatDuration, formatPoints } from './format.js';
import {
  deselectAllPlayers,
  isRendered,
  overallMaxDuration,
  resetZoom,
  selectAllPlayers,
  setSortKey,
  setZoomWindow,
  sortTableRows,
  togglePlayer,
  toggleEventMark,
  type Dispatch,
  type SortKey,
  type ViewState,
} from './state.js';
import { EVENT_MARKS, type ScorePoint, type TimelineView } from './types.js';

export const PLOT_W = 760;
export const PLOT_H = 280;
export const OVERVIEW_H = 48;

const PAD_TOP = 12;
const PAD_BOTTOM = 8;

const MARK_LABELS: Record<string, string> = {
  HintTaken: 'Hint taken',
  WrongFlag: 'Wrong flag',
  SolutionDisplayed: 'Solution displayed',
  LevelSkipped: 'Level skipped',
};

function scoreCeiling(view: TimelineView): number {
  let top = view.cumulative_maxima[view.cumulative_maxima.length - 1] ?? 0;
  for (const line of view.scorelines) {
    for (const point of line.points) top = Math.max(top, point.score);
  }
  return Math.max(top, 1);
}

function yFor(score: number, ceiling: number, height: number): number {
  return height - PAD_BOTTOM - (score / ceiling) * (height - PAD_TOP - PAD_BOTTOM);
}

// Scores change the instant an event lands and hold steady in between, so
// the line steps: horizontal to the next event's time, then vertical.
function stepPath(points: ScorePoint[], xAt: (t: number) => number, yAt: (s: number) => number): string {
  if (points.length === 0) return '';
  const parts = [`M ${px(xAt(points[0].elapsed_s))} ${px(yAt(points[0].score))}`];
  for (let i = 1; i < points.length; i++) {
    parts.push(`H ${px(xAt(points[i].elapsed_s))}`);
    if (points[i].score !== points[i - 1].score) parts.push(`V ${px(yAt(points[i].score))}`);
  }
  return parts.join(' ');
}

export function markTooltip(point: ScorePoint): string {
  let label = MARK_LABELS[point.mark] ?? point.mark;
  if (point.mark === 'HintTaken' && point.hint_number !== undefined) {
    label = `Hint ${point.hint_number} taken`;
  }
  if (point.penalty !== undefined) label += ` (-${formatPoints(point.penalty)})`;
  return `${label} at ${formatDuration(point.elapsed_s)}, score ${point.score}`;
}

function renderControls(view: TimelineView, state: ViewState, dispatch: Dispatch): HTMLElement {
  const bar = el('div', 'controls');

  for (const mark of EVENT_MARKS) {
    const label = el('label', 'filter');
    const box = el('input');
    box.type = 'checkbox';
    box.setAttribute('data-mark', mark);
    box.checked = state.eventFilter.has(mark);
    if (box.checked) box.setAttribute('checked', '');
    box.addEventListener('change', () => dispatch(toggleEventMark(state, mark)));
    label.appendChild(box);
    label.appendChild(el('span', undefined, MARK_LABELS[mark]));
    bar.appendChild(label);
  }

  const selectAll = el('button', 'select-all', 'Select all');
  selectAll.addEventListener('click', () =>
    dispatch(selectAllPlayers(state, view.table.map((row) => row.player_id))),
  );
  bar.appendChild(selectAll);

  const deselectAll = el('button', 'deselect-all', 'Deselect all');
  deselectAll.addEventListener('click', () => dispatch(deselectAllPlayers(state)));
  bar.appendChild(deselectAll);

  const zoomOut = el('button', 'reset-zoom', 'Reset zoom');
  zoomOut.addEventListener('click', () => dispatch(resetZoom(state, overallMaxDuration(view))));
  bar.appendChild(zoomOut);

  return bar;
}

function renderChart(view: TimelineView, state: ViewState, colors: Map<number, string>): SVGElement {
  const [z0, z1] = state.zoomWindow;
  const ceiling = scoreCeiling(view);
  const xAt = (t: number) => ((t - z0) / (z1 - z0)) * PLOT_W;
  const yAt = (s: number) => yFor(s, ceiling, PLOT_H);

  const chart = svg('svg', {
    class: 'timeline-chart',
    width: PLOT_W,
    height: PLOT_H,
    viewBox: `0 0 ${PLOT_W} ${PLOT_H}`,
  });

  const defs = svg('defs');
  const clip = svg('clipPath', { id: 'tl-clip' });
  clip.appendChild(svg('rect', { x: 0, y: 0, width: PLOT_W, height: PLOT_H }));
  defs.appendChild(clip);
  chart.appendChild(defs);

  const zoomed = svg('g', { class: 'zoomed', 'clip-path': 'url(#tl-clip)' });
  chart.appendChild(zoomed);

  view.estimated_stripes.forEach((stripe, index) => {
    const left = Math.max(xAt(stripe.start_s), 0);
    const right = Math.min(xAt(stripe.end_s), PLOT_W);
    if (right <= left) return;
    zoomed.appendChild(
      svg('rect', {
        class: `stripe stripe-${index % 2 ? 'odd' : 'even'}`,
        'data-level': stripe.level,
        x: px(left),
        y: 0,
        width: px(right - left),
        height: PLOT_H,
        fill: index % 2 ? '#e9edf1' : '#f4f6f8',
      }),
    );
  });

  // Horizontal dashed line per level at the best score reachable so far.
  view.cumulative_maxima.forEach((value, index) => {
    chart.appendChild(
      svg('line', {
        class: 'maxline',
        'data-value': value,
        x1: 0,
        x2: PLOT_W,
        y1: px(yAt(value)),
        y2: px(yAt(value)),
        stroke: '#6b7280',
        'stroke-dasharray': '6 4',
      }),
    );
    const tag = svg('text', {
      class: 'maxline-label',
      x: PLOT_W - 4,
      y: px(yAt(value) - 4),
      'text-anchor': 'end',
      fill: '#6b7280',
    });
    tag.textContent = `L${index + 1} max ${value}`;
    chart.appendChild(tag);
  });

  for (const line of view.scorelines) {
    if (!isRendered(state, line.player_id)) continue;
    const current = line.player_id === state.currentPlayerId;
    zoomed.appendChild(
      svg('path', {
        class: current ? 'scoreline current' : 'scoreline',
        'data-player': line.player_id,
        d: stepPath(line.points, xAt, yAt),
        fill: 'none',
        stroke: colors.get(line.player_id) ?? '#4b5563',
        'stroke-width': current ? 3.5 : 2,
      }),
    );
  }

  for (const line of view.scorelines) {
    if (!isRendered(state, line.player_id)) continue;
    for (const point of line.points) {
      if (!state.eventFilter.has(point.mark)) continue;
      zoomed.appendChild(
        svg('circle', {
          class: `mark mark-${point.mark}`,
          'data-player': line.player_id,
          'data-mark': point.mark,
          'data-tooltip': markTooltip(point),
          cx: px(xAt(point.elapsed_s)),
          cy: px(yAt(point.score)),
          r: 4,
          fill: colors.get(line.player_id) ?? '#4b5563',
          stroke: '#ffffff',
          'stroke-width': 1.5,
        }),
      );
    }
  }

  return chart;
}

function renderOverview(
  view: TimelineView,
  state: ViewState,
  colors: Map<number, string>,
  dispatch: Dispatch,
): HTMLElement {
  const wrap = el('div', 'overview');
  const domainMax = overallMaxDuration(view);
  const ceiling = scoreCeiling(view);
  const xAt = (t: number) => (t / domainMax) * PLOT_W;
  const yAt = (s: number) => yFor(s, ceiling, OVERVIEW_H);

  const chart = svg('svg', {
    class: 'overview-chart',
    width: PLOT_W,
    height: OVERVIEW_H,
    viewBox: `0 0 ${PLOT_W} ${OVERVIEW_H}`,
  });

  for (const line of view.scorelines) {
    if (!isRendered(state, line.player_id)) continue;
    chart.appendChild(
      svg('path', {
        class: 'ov-line',
        'data-player': line.player_id,
        d: stepPath(line.points, xAt, yAt),
        fill: 'none',
        stroke: colors.get(line.player_id) ?? '#4b5563',
        'stroke-width': 1,
      }),
    );
  }

  const [z0, z1] = state.zoomWindow;
  const window_ = svg('rect', {
    class: 'brush-window',
    x: px(xAt(z0)),
    y: 0,
    width: px(xAt(z1) - xAt(z0)),
    height: OVERVIEW_H,
    fill: '#2563eb22',
    stroke: '#2563eb',
  });
  chart.appendChild(window_);

  // Drag across the overview to pick a window; drag inside the window to
  // slide it; double-click to jump back to the full range.
  let anchorPx: number | null = null;
  let movingFrom: number | null = null;
  const pxOf = (event: MouseEvent) => {
    const rect = chart.getBoundingClientRect();
    return Math.max(0, Math.min(PLOT_W, event.clientX - rect.left));
  };
  chart.addEventListener('mousedown', (event) => {
    const at = pxOf(event as MouseEvent);
    if (at >= xAt(z0) && at <= xAt(z1)) movingFrom = at;
    else anchorPx = at;
  });
  chart.addEventListener('mouseup', (event) => {
    const at = pxOf(event as MouseEvent);
    const toSeconds = (p: number) => (p / PLOT_W) * domainMax;
    if (anchorPx !== null && Math.abs(at - anchorPx) >= 2) {
      dispatch(setZoomWindow(state, toSeconds(anchorPx), toSeconds(at), domainMax));
    } else if (movingFrom !== null && at !== movingFrom) {
      const shift = toSeconds(at) - toSeconds(movingFrom);
      dispatch(setZoomWindow(state, z0 + shift, z1 + shift, domainMax));
    }
    anchorPx = null;
    movingFrom = null;
  });
  chart.addEventListener('dblclick', () => dispatch(resetZoom(state, domainMax)));

  wrap.appendChild(chart);
  const axis = el('div', 'overview-axis');
  axis.appendChild(el('span', undefined, formatDuration(0)));
  axis.appendChild(el('span', undefined, formatDuration(domainMax)));
  wrap.appendChild(axis);
  return wrap;
}

function headerCell(label: string, key: SortKey, state: ViewState, dispatch: Dispatch): HTMLElement {
  const cell = el('th', undefined, label);
  const keyName = key.kind === 'level' ? `level-${key.level}` : key.kind;
  cell.setAttribute('data-sort', keyName);
  const active =
    state.sortKey.kind === key.kind &&
    (state.sortKey.kind !== 'level' || (state.sortKey as { level: number }).level === (key as { level: number }).level);
  if (active) cell.classList.add(state.sortDescending ? 'sorted-desc' : 'sorted-asc');
  cell.addEventListener('click', () => dispatch(setSortKey(state, key)));
  return cell;
}

function renderTable(
  view: TimelineView,
  state: ViewState,
  colors: Map<number, string>,
  dispatch: Dispatch,
): HTMLElement {
  const table = el('table', 'score-table');
  const levelCount = view.cumulative_maxima.length;

  const thead = el('thead');
  const headRow = el('tr');
  headRow.appendChild(headerCell('Rank', { kind: 'rank' }, state, dispatch));
  headRow.appendChild(headerCell('Player', { kind: 'player' }, state, dispatch));
  for (let level = 1; level <= levelCount; level++) {
    headRow.appendChild(headerCell(`L${level}`, { kind: 'level', level }, state, dispatch));
  }
  headRow.appendChild(headerCell('Final', { kind: 'final' }, state, dispatch));
  headRow.appendChild(headerCell('Time', { kind: 'duration' }, state, dispatch));
  headRow.appendChild(el('th', undefined, 'Done'));
  thead.appendChild(headRow);
  table.appendChild(thead);

  const tbody = el('tbody');
  for (const row of sortTableRows(view.table, state)) {
    const tr = el('tr');
    tr.setAttribute('data-player', String(row.player_id));
    if (row.player_id === state.currentPlayerId) tr.classList.add('current');
    if (!isRendered(state, row.player_id)) tr.classList.add('off');
    tr.addEventListener('click', () => dispatch(togglePlayer(state, row.player_id)));

    tr.appendChild(el('td', 'rank', String(row.rank)));
    const player = el('td', 'player');
    const stripe = el('span', 'color-stripe');
    stripe.style.background = colors.get(row.player_id) ?? '#4b5563';
    player.appendChild(stripe);
    player.appendChild(el('span', undefined, String(row.player_id)));
    tr.appendChild(player);
    for (let level = 0; level < levelCount; level++) {
      tr.appendChild(el('td', 'level-score', String(row.level_scores[level] ?? 0)));
    }
    tr.appendChild(el('td', 'final', String(row.final_score)));
    tr.appendChild(el('td', 'duration', formatDuration(row.total_duration_s)));
    tr.appendChild(el('td', 'finished', row.finished ? 'yes' : 'no'));
    tbody.appendChild(tr);
  }
  table.appendChild(tbody);
  return table;
}

export function renderTimeline(view: TimelineView, state: ViewState, dispatch: Dispatch): HTMLElement {
  const root = el('div', 'timeline');
  const head = el('div', 'view-head');
  head.appendChild(el('h2', undefined, 'Timeline'));
  root.appendChild(head);
  root.appendChild(renderControls(view, state, dispatch));

  const colors = colorsByPlayer(view.table);
  const chart = renderChart(view, state, colors);
  root.appendChild(chart);

  // Hovering a mark shows its exact text next to the chart.
  const tip = el('div', 'tooltip');
  tip.style.display = 'none';
  for (const mark of chart.querySelectorAll<SVGElement>('circle.mark')) {
    mark.addEventListener('mouseenter', () => {
      tip.textContent = mark.getAttribute('data-tooltip');
      tip.style.left = `${mark.getAttribute('cx')}px`;
      tip.style.top = `${mark.getAttribute('cy')}px`;
      tip.style.display = 'block';
    });
    mark.addEventListener('mouseleave', () => {
      tip.style.display = 'none';
    });
  }
  root.appendChild(tip);

  root.appendChild(renderOverview(view, state, colors, dispatch));
  root.appendChild(renderTable(view, state, colors, dispatch));
  return root;
}
