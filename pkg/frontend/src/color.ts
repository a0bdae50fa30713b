import type { TableRow } from './types.js';

// Fixed palette indexed by scoreboard position. Same standings, same colors,
// on every reload and in both the table stripes and the scorelines.
export const PALETTE = [
  '#2563eb',
  '#dc2626',
  '#16a34a',
  '#9333ea',
  '#ea580c',
  '#0891b2',
  '#db2777',
  '#65a30d',
  '#7c3aed',
  '#b45309',
  '#0d9488',
  '#4b5563',
] as const;

export function colorForPosition(position: number): string {
  return PALETTE[((position % PALETTE.length) + PALETTE.length) % PALETTE.length];
}

// table arrives in scoreboard order; ties keep their payload order, so the
// assignment stays deterministic even when ranks repeat.
export function colorsByPlayer(table: TableRow[]): Map<number, string> {
  const colors = new Map<number, string>();
  table.forEach((row, index) => {
    colors.set(row.player_id, colorForPosition(index));
  });
  return colors;
}
