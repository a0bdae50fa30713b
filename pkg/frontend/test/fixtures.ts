import type { ClusteringView, TimelineView } from '../src/types.js';

// Byte-for-byte the documents `debrief export` produces for the two-player
// fixture log the service tests pin down (game "fixture-game", players 9001
// and 9002).

export const FIXTURE_CLUSTERING: ClusteringView = {
  game_id: 'fixture-game',
  player_count: 2,
  finished_count: 2,
  overall: {
    scope: 'overall',
    max_duration_s: 720,
    mean_duration_s: 660.0,
    score_min: 10,
    score_max: 27,
    dots: [
      { player_id: 9001, duration_s: 600, score: 27, finished: true },
      { player_id: 9002, duration_s: 720, score: 10, finished: true },
    ],
  },
  levels: [
    {
      scope: 'level',
      level: 1,
      max_duration_s: 300,
      mean_duration_s: 270.0,
      score_min: 8,
      score_max: 10,
      dots: [
        { player_id: 9001, duration_s: 300, score: 8 },
        { player_id: 9002, duration_s: 240, score: 10 },
      ],
    },
    {
      scope: 'level',
      level: 2,
      max_duration_s: 480,
      mean_duration_s: 390.0,
      score_min: 0,
      score_max: 19,
      dots: [
        { player_id: 9001, duration_s: 300, score: 19 },
        { player_id: 9002, duration_s: 480, score: 0 },
      ],
    },
  ],
};

export const FIXTURE_TIMELINE: TimelineView = {
  game_id: 'fixture-game',
  cumulative_maxima: [10, 30],
  estimated_stripes: [
    { level: 1, start_s: 0, end_s: 300 },
    { level: 2, start_s: 300, end_s: 900 },
  ],
  scorelines: [
    {
      player_id: 9001,
      points: [
        { elapsed_s: 0, score: 10, mark: 'GameStarted' },
        { elapsed_s: 180, score: 8, mark: 'HintTaken', hint_number: 1, penalty: 2 },
        { elapsed_s: 300, score: 28, mark: 'LevelStarted' },
        { elapsed_s: 360, score: 27, mark: 'WrongFlag', penalty: 1 },
        { elapsed_s: 600, score: 27, mark: 'GameEnded' },
      ],
    },
    {
      player_id: 9002,
      points: [
        { elapsed_s: 0, score: 10, mark: 'GameStarted' },
        { elapsed_s: 240, score: 30, mark: 'LevelStarted' },
        { elapsed_s: 420, score: 10, mark: 'SolutionDisplayed' },
        { elapsed_s: 720, score: 10, mark: 'GameEnded' },
      ],
    },
  ],
  table: [
    {
      player_id: 9001,
      rank: 1,
      level_scores: [8, 19],
      final_score: 27,
      total_duration_s: 600,
      finished: true,
    },
    {
      player_id: 9002,
      rank: 2,
      level_scores: [10, 0],
      final_score: 10,
      total_duration_s: 720,
      finished: true,
    },
  ],
};

export function cloneClustering(): ClusteringView {
  return structuredClone(FIXTURE_CLUSTERING);
}

export function cloneTimeline(): TimelineView {
  return structuredClone(FIXTURE_TIMELINE);
}
