// Fingering notation ("x.0.2.2.1.0", low string first) and the texture
// measures shown on suggestion cards.

export const NUM_STRINGS = 6;
export const MAX_FRET = 24;
export const STANDARD_TUNING = [40, 45, 50, 55, 59, 64];

export type StringState = number | null; // null = muted

export function parseFingering(text: string): StringState[] {
  const tokens = text.split(".");
  if (tokens.length !== NUM_STRINGS) {
    throw new Error(`expected ${NUM_STRINGS} dot-separated tokens, got ${tokens.length}`);
  }
  const states = tokens.map((tok) => {
    if (tok === "x" || tok === "X") return null;
    if (!/^\d+$/.test(tok)) throw new Error(`bad token "${tok}"`);
    const fret = parseInt(tok, 10);
    if (fret > MAX_FRET) throw new Error(`fret ${fret} beyond ${MAX_FRET}`);
    return fret;
  });
  if (states.every((s) => s === null)) throw new Error("all six strings muted");
  return states;
}

export function formatFingering(states: StringState[]): string {
  return states.map((s) => (s === null ? "x" : String(s))).join(".");
}

export interface Texture {
  mutedRatio: number;
  openRatio: number;
  stringCentroid: number;
  uniqueNoteRatio: number;
}

export function texture(states: StringState[]): Texture {
  const sounding = states
    .map((s, i) => ({ string: i, fret: s }))
    .filter((p): p is { string: number; fret: number } => p.fret !== null);
  const pitchClasses = new Set(
    sounding.map((p) => (STANDARD_TUNING[p.string] + p.fret) % 12),
  );
  const centroid =
    sounding.reduce((acc, p) => acc + p.string, 0) / sounding.length / (NUM_STRINGS - 1);
  return {
    mutedRatio: (NUM_STRINGS - sounding.length) / NUM_STRINGS,
    openRatio: sounding.filter((p) => p.fret === 0).length / NUM_STRINGS,
    stringCentroid: centroid,
    uniqueNoteRatio: pitchClasses.size / sounding.length,
  };
}

export function textureDelta(a: StringState[], b: StringState[]): Texture {
  const ta = texture(a);
  const tb = texture(b);
  return {
    mutedRatio: Math.abs(ta.mutedRatio - tb.mutedRatio),
    openRatio: Math.abs(ta.openRatio - tb.openRatio),
    stringCentroid: Math.abs(ta.stringCentroid - tb.stringCentroid),
    uniqueNoteRatio: Math.abs(ta.uniqueNoteRatio - tb.uniqueNoteRatio),
  };
}
