// Shapes mirror the service JSON exactly; field names stay snake_case on purpose.

export interface ClusteringDot {
  player_id: number;
  duration_s: number;
  score: number;
  finished?: boolean;
}

export interface ClusteringScope {
  scope: 'overall' | 'level';
  level?: number;
  max_duration_s: number;
  mean_duration_s: number;
  score_min: number;
  score_max: number;
  dots: ClusteringDot[];
}

export interface ClusteringView {
  game_id: string;
  player_count: number;
  finished_count: number;
  overall: ClusteringScope;
  levels: ClusteringScope[];
}

export interface ScorePoint {
  elapsed_s: number;
  score: number;
  mark: string;
  hint_number?: number;
  penalty?: number;
}

export interface Scoreline {
  player_id: number;
  points: ScorePoint[];
}

export interface EstimatedStripe {
  level: number;
  start_s: number;
  end_s: number;
}

export interface TableRow {
  player_id: number;
  rank: number;
  level_scores: number[];
  final_score: number;
  total_duration_s: number;
  finished: boolean;
}

export interface TimelineView {
  game_id: string;
  cumulative_maxima: number[];
  estimated_stripes: EstimatedStripe[];
  scorelines: Scoreline[];
  table: TableRow[];
}

// Marks that stand for discrete player events; the structural polyline
// vertices (GameStarted, LevelStarted, GameEnded) are not filterable.
export const EVENT_MARKS = ['HintTaken', 'WrongFlag', 'SolutionDisplayed', 'LevelSkipped'] as const;

export type EventMark = (typeof EVENT_MARKS)[number];
