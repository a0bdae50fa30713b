import { describe, expect, it } from 'vitest';
import { formatDuration, formatPoints } from '../src/format.js';

describe('formatDuration', () => {
  it('renders H:MM:SS with unpadded hours', () => {
    expect(formatDuration(0)).toBe('0:00:00');
    expect(formatDuration(600)).toBe('0:10:00');
    expect(formatDuration(720)).toBe('0:12:00');
    expect(formatDuration(3723)).toBe('1:02:03');
    expect(formatDuration(36_000)).toBe('10:00:00');
  });

  it('refuses to round', () => {
    expect(() => formatDuration(1.5)).toThrow(TypeError);
    expect(() => formatDuration(-1)).toThrow(TypeError);
  });
});

describe('formatPoints', () => {
  it('pluralizes', () => {
    expect(formatPoints(1)).toBe('1 pt');
    expect(formatPoints(2)).toBe('2 pts');
    expect(formatPoints(0)).toBe('0 pts');
  });
});
