// Times shown to the trainee come straight from payload seconds. Rounding
// here would reintroduce the per-view drift the service already eliminated,
// so non-integer input is a hard error rather than silently absorbed.
export function formatDuration(seconds: number): string {
  if (!Number.isInteger(seconds) || seconds < 0) {
    throw new TypeError(`expected non-negative integer seconds, got ${seconds}`);
  }
  const h = Math.floor(seconds / 3600);
  const m = Math.floor((seconds % 3600) / 60);
  const s = seconds % 60;
  return `${h}:${String(m).padStart(2, '0')}:${String(s).padStart(2, '0')}`;
}

export function formatPoints(points: number): string {
  return points === 1 || points === -1 ? `${points} pt` : `${points} pts`;
}
