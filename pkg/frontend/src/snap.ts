import type { ClusteringDot } from './types.js';

// 2% of the bar's width and height, expressed in normalized coordinates.
export const SNAP_RADIUS = 0.02;

export interface SnapSpans {
  duration_s: number;
  points: number;
}

export interface Cursor {
  x_s: number;
  y_pts: number;
}

// Nearest dot within radius, measured after dividing each axis by the bar's
// span so a second of width and a point of height weigh the same regardless
// of the bar's aspect. Ties go to the lower player_id.
export function snapTarget(
  cursor: Cursor,
  dots: readonly ClusteringDot[],
  spans: SnapSpans,
  radius: number = SNAP_RADIUS,
): ClusteringDot | null {
  if (!(radius > 0)) throw new RangeError(`snap radius must be positive, got ${radius}`);
  const spanX = Math.max(spans.duration_s, 1);
  const spanY = Math.max(spans.points, 1);
  let best: ClusteringDot | null = null;
  let bestDistance = Infinity;
  for (const dot of dots) {
    const dx = (dot.duration_s - cursor.x_s) / spanX;
    const dy = (dot.score - cursor.y_pts) / spanY;
    const distance = Math.hypot(dx, dy);
    if (distance > radius) continue;
    if (
      distance < bestDistance ||
      (distance === bestDistance && best !== null && dot.player_id < best.player_id)
    ) {
      best = dot;
      bestDistance = distance;
    }
  }
  return best;
}
