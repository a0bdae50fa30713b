import type { ClusteringScope, ClusteringView, TimelineView } from './types.js';

// A payload that does not match the service contract must surface as a
// banner, never as a half-drawn chart, so every field the renderers touch
// is checked up front.
export class SchemaError extends Error {
  constructor(path: string, want: string, got: unknown) {
    super(`${path}: expected ${want}, got ${describe(got)}`);
    this.name = 'SchemaError';
  }
}

function describe(value: unknown): string {
  if (value === null) return 'null';
  if (Array.isArray(value)) return 'array';
  return typeof value;
}

function obj(value: unknown, path: string): Record<string, unknown> {
  if (typeof value !== 'object' || value === null || Array.isArray(value)) {
    throw new SchemaError(path, 'object', value);
  }
  return value as Record<string, unknown>;
}

function num(value: unknown, path: string): number {
  if (typeof value !== 'number' || !Number.isFinite(value)) {
    throw new SchemaError(path, 'finite number', value);
  }
  return value;
}

function str(value: unknown, path: string): string {
  if (typeof value !== 'string') throw new SchemaError(path, 'string', value);
  return value;
}

function bool(value: unknown, path: string): boolean {
  if (typeof value !== 'boolean') throw new SchemaError(path, 'boolean', value);
  return value;
}

function arr(value: unknown, path: string): unknown[] {
  if (!Array.isArray(value)) throw new SchemaError(path, 'array', value);
  return value;
}

function checkScope(value: unknown, path: string): ClusteringScope {
  const scope = obj(value, path);
  const kind = str(scope.scope, `${path}.scope`);
  if (kind !== 'overall' && kind !== 'level') {
    throw new SchemaError(`${path}.scope`, "'overall' or 'level'", kind);
  }
  if (kind === 'level') num(scope.level, `${path}.level`);
  num(scope.max_duration_s, `${path}.max_duration_s`);
  num(scope.mean_duration_s, `${path}.mean_duration_s`);
  num(scope.score_min, `${path}.score_min`);
  num(scope.score_max, `${path}.score_max`);
  arr(scope.dots, `${path}.dots`).forEach((dot, i) => {
    const d = obj(dot, `${path}.dots[${i}]`);
    num(d.player_id, `${path}.dots[${i}].player_id`);
    num(d.duration_s, `${path}.dots[${i}].duration_s`);
    num(d.score, `${path}.dots[${i}].score`);
    if ('finished' in d) bool(d.finished, `${path}.dots[${i}].finished`);
  });
  return value as ClusteringScope;
}

export function asClusteringView(value: unknown): ClusteringView {
  const doc = obj(value, 'clustering');
  str(doc.game_id, 'clustering.game_id');
  num(doc.player_count, 'clustering.player_count');
  num(doc.finished_count, 'clustering.finished_count');
  checkScope(doc.overall, 'clustering.overall');
  arr(doc.levels, 'clustering.levels').forEach((scope, i) => {
    checkScope(scope, `clustering.levels[${i}]`);
  });
  return value as ClusteringView;
}

export function asTimelineView(value: unknown): TimelineView {
  const doc = obj(value, 'timeline');
  str(doc.game_id, 'timeline.game_id');
  arr(doc.cumulative_maxima, 'timeline.cumulative_maxima').forEach((v, i) => {
    num(v, `timeline.cumulative_maxima[${i}]`);
  });
  arr(doc.estimated_stripes, 'timeline.estimated_stripes').forEach((stripe, i) => {
    const s = obj(stripe, `timeline.estimated_stripes[${i}]`);
    num(s.level, `timeline.estimated_stripes[${i}].level`);
    num(s.start_s, `timeline.estimated_stripes[${i}].start_s`);
    num(s.end_s, `timeline.estimated_stripes[${i}].end_s`);
  });
  arr(doc.scorelines, 'timeline.scorelines').forEach((line, i) => {
    const l = obj(line, `timeline.scorelines[${i}]`);
    num(l.player_id, `timeline.scorelines[${i}].player_id`);
    arr(l.points, `timeline.scorelines[${i}].points`).forEach((point, j) => {
      const p = obj(point, `timeline.scorelines[${i}].points[${j}]`);
      num(p.elapsed_s, `timeline.scorelines[${i}].points[${j}].elapsed_s`);
      num(p.score, `timeline.scorelines[${i}].points[${j}].score`);
      str(p.mark, `timeline.scorelines[${i}].points[${j}].mark`);
    });
  });
  arr(doc.table, 'timeline.table').forEach((row, i) => {
    const r = obj(row, `timeline.table[${i}]`);
    num(r.player_id, `timeline.table[${i}].player_id`);
    num(r.rank, `timeline.table[${i}].rank`);
    arr(r.level_scores, `timeline.table[${i}].level_scores`);
    num(r.final_score, `timeline.table[${i}].final_score`);
    num(r.total_duration_s, `timeline.table[${i}].total_duration_s`);
    bool(r.finished, `timeline.table[${i}].finished`);
  });
  return value as TimelineView;
}
