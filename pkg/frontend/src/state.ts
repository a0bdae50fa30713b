import { EVENT_MARKS, type TableRow, type TimelineView } from './types.js';

export type SortKey =
  | { kind: 'rank' }
  | { kind: 'player' }
  | { kind: 'final' }
  | { kind: 'duration' }
  | { kind: 'level'; level: number };

export interface ViewState {
  readonly currentPlayerId: number | null;
  readonly visiblePlayers: ReadonlySet<number>;
  readonly eventFilter: ReadonlySet<string>;
  readonly zoomWindow: readonly [number, number];
  readonly sortKey: SortKey;
  readonly sortDescending: boolean;
}

export type Dispatch = (next: ViewState) => void;

export function overallMaxDuration(view: TimelineView): number {
  let max = 0;
  for (const row of view.table) max = Math.max(max, row.total_duration_s);
  return Math.max(max, 1);
}

export function initialViewState(view: TimelineView, currentPlayerId: number | null = null): ViewState {
  return {
    currentPlayerId,
    visiblePlayers: new Set(view.table.map((row) => row.player_id)),
    eventFilter: new Set(EVENT_MARKS),
    zoomWindow: [0, overallMaxDuration(view)],
    sortKey: { kind: 'rank' },
    sortDescending: false,
  };
}

// The current trainee is drawn no matter what the toggle set says.
export function isRendered(state: ViewState, playerId: number): boolean {
  return state.visiblePlayers.has(playerId) || playerId === state.currentPlayerId;
}

export function togglePlayer(state: ViewState, playerId: number): ViewState {
  const visible = new Set(state.visiblePlayers);
  if (visible.has(playerId)) visible.delete(playerId);
  else visible.add(playerId);
  return { ...state, visiblePlayers: visible };
}

export function selectAllPlayers(state: ViewState, playerIds: Iterable<number>): ViewState {
  return { ...state, visiblePlayers: new Set(playerIds) };
}

export function deselectAllPlayers(state: ViewState): ViewState {
  const visible = new Set<number>();
  if (state.currentPlayerId !== null) visible.add(state.currentPlayerId);
  return { ...state, visiblePlayers: visible };
}

export function toggleEventMark(state: ViewState, mark: string): ViewState {
  const filter = new Set(state.eventFilter);
  if (filter.has(mark)) filter.delete(mark);
  else filter.add(mark);
  return { ...state, eventFilter: filter };
}

export function setEventFilter(state: ViewState, marks: Iterable<string>): ViewState {
  return { ...state, eventFilter: new Set(marks) };
}

// zoom_window stays inside [0, maxDuration] and keeps a positive width.
export function setZoomWindow(state: ViewState, start: number, end: number, maxDuration: number): ViewState {
  const ceiling = Math.max(maxDuration, 1);
  let lo = Math.max(0, Math.min(start, end));
  let hi = Math.min(ceiling, Math.max(start, end));
  if (hi - lo < 1) {
    hi = Math.min(ceiling, lo + 1);
    lo = Math.max(0, hi - 1);
  }
  return { ...state, zoomWindow: [lo, hi] };
}

export function resetZoom(state: ViewState, maxDuration: number): ViewState {
  return { ...state, zoomWindow: [0, Math.max(maxDuration, 1)] };
}

function defaultDescending(key: SortKey): boolean {
  return key.kind === 'final' || key.kind === 'level';
}

function sameKey(a: SortKey, b: SortKey): boolean {
  if (a.kind !== b.kind) return false;
  if (a.kind === 'level' && b.kind === 'level') return a.level === b.level;
  return true;
}

// Re-clicking the active column flips the direction; a fresh column starts
// from its natural direction (scores high-first, everything else low-first).
export function setSortKey(state: ViewState, key: SortKey): ViewState {
  if (sameKey(state.sortKey, key)) {
    return { ...state, sortDescending: !state.sortDescending };
  }
  return { ...state, sortKey: key, sortDescending: defaultDescending(key) };
}

function sortValue(row: TableRow, key: SortKey): number {
  switch (key.kind) {
    case 'rank':
      return row.rank;
    case 'player':
      return row.player_id;
    case 'final':
      return row.final_score;
    case 'duration':
      return row.total_duration_s;
    case 'level':
      return row.level_scores[key.level - 1] ?? 0;
  }
}

export function sortTableRows(rows: readonly TableRow[], state: ViewState): TableRow[] {
  const sorted = [...rows];
  const sign = state.sortDescending ? -1 : 1;
  sorted.sort((a, b) => {
    const diff = sortValue(a, state.sortKey) - sortValue(b, state.sortKey);
    if (diff !== 0) return sign * diff;
    return a.player_id - b.player_id;
  });
  return sorted;
}
