/** Stable group colors: a pure function of the group key, so the same
 * grouping renders the same colors across reloads. */

export const UNGROUPED_KEY = "ungrouped";
export const UNGROUPED_COLOR = "hsl(0, 0%, 86%)";

/** FNV-1a, 32-bit. */
export function hashKey(key: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < key.length; i++) {
    h ^= key.charCodeAt(i);
    h = Math.imul(h, 0x01000193) >>> 0;
  }
  return h;
}

export function colorForGroup(key: string): string {
  if (key === UNGROUPED_KEY) return UNGROUPED_COLOR;
  const h = hashKey(key);
  const hue = h % 360;
  const lightness = 68 + ((h >>> 9) % 13); // readable pastel backgrounds
  return `hsl(${hue}, 70%, ${lightness}%)`;
}
