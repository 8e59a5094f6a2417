// Sequence-builder state machine. Step i >= 1 is always suggested with
// step i-1's chosen fingering as context; undoing a step discards every
// step that depended on it.

import { ApiClient, Suggestion } from "./api.js";
import { parseFingering } from "./fingering.js";

export interface Step {
  label: string;
  chosen: string; // fingering committed for this step
  suggestions: Suggestion[]; // what was shown when the choice was made
}

export class SequenceBuilder {
  readonly steps: Step[] = [];

  constructor(private api: ApiClient) {}

  get lastFingering(): string | null {
    return this.steps.length ? this.steps[this.steps.length - 1].chosen : null;
  }

  /** Fetch ranked suggestions for the next step, using the previously
   * chosen fingering as context (none on the first step). */
  requestSuggestions(label: string, k = 5): Promise<Suggestion[]> {
    return this.api.suggest(label, this.lastFingering, k);
  }

  /** Commit a choice and advance the sequence. */
  commit(label: string, suggestions: Suggestion[], chosenFingering: string): Step {
    parseFingering(chosenFingering); // reject malformed commits early
    const step: Step = { label, chosen: chosenFingering, suggestions };
    this.steps.push(step);
    return step;
  }

  /** Undo step `index`: removes it and every later step, whose context
   * it provided. */
  undo(index: number): void {
    if (index < 0 || index >= this.steps.length) return;
    this.steps.length = index;
  }

  /** Export as re-importable "label<TAB>fingering" lines. */
  exportText(): string {
    return this.steps.map((s) => `${s.label}\t${s.chosen}`).join("\n");
  }

  importText(text: string): void {
    const steps: Step[] = [];
    for (const line of text.split("\n")) {
      if (!line.trim()) continue;
      const [label, fingering] = line.split("\t");
      if (!label || !fingering) throw new Error(`bad line: "${line}"`);
      parseFingering(fingering);
      steps.push({ label, chosen: fingering, suggestions: [] });
    }
    this.steps.length = 0;
    this.steps.push(...steps);
  }
}
