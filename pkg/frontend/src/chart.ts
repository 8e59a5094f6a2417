// Fretboard chart rendering: a pure function from a fingering string to an
// SVG string. Convention: vertical strings (low E left), "x"/"o" markers
// above the nut, dots on fretted positions, a position label ("5fr") when
// the chart window starts above the nut.

import { NUM_STRINGS, parseFingering } from "./fingering.js";

const WINDOW_FRETS = 5;
const CELL_W = 22;
const CELL_H = 26;
const MARGIN_X = 26;
const MARGIN_TOP = 30;

export interface ChartLayout {
  baseFret: number; // first fret of the window; 1 = nut shown
}

export function chartLayout(fingering: string): ChartLayout {
  const states = parseFingering(fingering);
  const fretted = states.filter((s): s is number => s !== null && s >= 1);
  if (fretted.length === 0) return { baseFret: 1 };
  const minFret = Math.min(...fretted);
  const maxFret = Math.max(...fretted);
  return { baseFret: maxFret <= WINDOW_FRETS ? 1 : minFret };
}

export function renderDiagram(fingering: string): string {
  const states = parseFingering(fingering);
  const { baseFret } = chartLayout(fingering);
  const width = MARGIN_X * 2 + CELL_W * (NUM_STRINGS - 1);
  const height = MARGIN_TOP + CELL_H * WINDOW_FRETS + 14;
  const x = (s: number) => MARGIN_X + s * CELL_W;
  const parts: string[] = [];
  parts.push(
    `<svg class="chord-chart" xmlns="http://www.w3.org/2000/svg" ` +
      `viewBox="0 0 ${width} ${height}" role="img" aria-label="${fingering}">`,
  );
  // nut or top fret line
  const nutHeight = baseFret === 1 ? 4 : 1;
  parts.push(
    `<rect class="nut" x="${x(0) - 1}" y="${MARGIN_TOP - nutHeight}" ` +
      `width="${CELL_W * (NUM_STRINGS - 1) + 2}" height="${nutHeight}"/>`,
  );
  for (let f = 1; f <= WINDOW_FRETS; f++) {
    const y = MARGIN_TOP + f * CELL_H;
    parts.push(`<line class="fret" x1="${x(0)}" y1="${y}" x2="${x(5)}" y2="${y}"/>`);
  }
  for (let s = 0; s < NUM_STRINGS; s++) {
    parts.push(
      `<line class="string" x1="${x(s)}" y1="${MARGIN_TOP}" ` +
        `x2="${x(s)}" y2="${MARGIN_TOP + WINDOW_FRETS * CELL_H}"/>`,
    );
  }
  if (baseFret > 1) {
    parts.push(
      `<text class="position" x="${x(5) + 6}" y="${MARGIN_TOP + CELL_H * 0.7}">${baseFret}fr</text>`,
    );
  }
  states.forEach((state, s) => {
    if (state === null) {
      parts.push(`<text class="marker-x" x="${x(s)}" y="${MARGIN_TOP - 10}">x</text>`);
    } else if (state === 0) {
      parts.push(
        `<circle class="marker-o" cx="${x(s)}" cy="${MARGIN_TOP - 13}" r="5"/>`,
      );
    } else {
      const row = state - baseFret; // 0-based row within the window
      const cy = MARGIN_TOP + (row + 0.5) * CELL_H;
      parts.push(
        `<circle class="dot" data-fret="${state}" cx="${x(s)}" cy="${cy}" r="7"/>`,
      );
    }
  });
  parts.push("</svg>");
  return parts.join("");
}
