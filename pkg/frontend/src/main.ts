// DOM wiring for the sequence builder.

import { ApiClient, Suggestion } from "./api.js";
import { renderDiagram } from "./chart.js";
import { parseFingering, textureDelta } from "./fingering.js";
import { SequenceBuilder } from "./state.js";

const api = new ApiClient();
const builder = new SequenceBuilder(api);

const $ = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;

const labelInput = $<HTMLInputElement>("label-input");
const firstInput = $<HTMLInputElement>("first-input");
const suggestButton = $<HTMLButtonElement>("suggest-button");
const surpriseButton = $<HTMLButtonElement>("surprise-button");
const statusLine = $<HTMLElement>("status");
const cards = $<HTMLElement>("cards");
const sequenceList = $<HTMLElement>("sequence");
const exportArea = $<HTMLTextAreaElement>("export-area");

let pending: { label: string; suggestions: Suggestion[] } | null = null;
let inFlight = false;

function setStatus(text: string, isError = false): void {
  statusLine.textContent = text;
  statusLine.classList.toggle("error", isError);
}

function renderSequence(): void {
  sequenceList.innerHTML = "";
  builder.steps.forEach((step, i) => {
    const item = document.createElement("div");
    item.className = "step";
    item.innerHTML =
      `<div class="step-chart">${renderDiagram(step.chosen)}</div>` +
      `<div class="step-label">${step.label}<br><code>${step.chosen}</code></div>`;
    const undoButton = document.createElement("button");
    undoButton.textContent = "undo";
    undoButton.addEventListener("click", () => {
      builder.undo(i);
      pending = null;
      cards.innerHTML = "";
      renderSequence();
    });
    item.appendChild(undoButton);
    sequenceList.appendChild(item);
  });
  exportArea.value = builder.exportText();
}

function suggestionCard(s: Suggestion, rank: number, prev: string | null): HTMLElement {
  const card = document.createElement("div");
  card.className = "card" + (s.unplayable ? " unplayable" : "");
  const star = s.unplayable ? ' <span class="star" title="unplayable">★</span>' : "";
  const ease =
    s.chord_change_ease !== undefined
      ? `<span class="badge">ease ${s.chord_change_ease.toFixed(2)}</span>`
      : "";
  let deltas = "";
  if (prev !== null) {
    const d = textureDelta(parseFingering(prev), parseFingering(s.fingering));
    deltas =
      `<div class="deltas">δ muted ${d.mutedRatio.toFixed(2)} · ` +
      `δ open ${d.openRatio.toFixed(2)} · δ centroid ${d.stringCentroid.toFixed(2)} · ` +
      `δ unique ${d.uniqueNoteRatio.toFixed(2)}</div>`;
  }
  card.innerHTML =
    `<div class="rank">#${rank}${star}</div>` +
    renderDiagram(s.fingering) +
    `<code>${s.fingering}</code>` +
    `<div class="scores">score ${s.score.toFixed(3)} · pitch F1 ${s.pitch_f1.toFixed(2)} ${ease}</div>` +
    deltas;
  card.addEventListener("click", () => {
    if (!pending) return;
    builder.commit(pending.label, pending.suggestions, s.fingering);
    pending = null;
    cards.innerHTML = "";
    labelInput.value = "";
    renderSequence();
    setStatus(`committed ${s.fingering}; enter the next chord label`);
  });
  return card;
}

function showSuggestions(label: string, suggestions: Suggestion[]): void {
  pending = { label, suggestions };
  cards.innerHTML = "";
  suggestions.forEach((s, i) => cards.appendChild(suggestionCard(s, i + 1, builder.lastFingering)));
}

async function requestStep(pickRandom = false): Promise<void> {
  const label = labelInput.value.trim();
  if (!label || inFlight) return;
  inFlight = true;
  setStatus("asking the model…");
  try {
    if (builder.steps.length === 0 && firstInput.value.trim() && !pickRandom) {
      // user-provided first diagram: commit it directly
      const fingering = firstInput.value.trim();
      parseFingering(fingering);
      builder.commit(label, [], fingering);
      labelInput.value = "";
      firstInput.value = "";
      renderSequence();
      setStatus("first diagram set; enter the next chord label");
      return;
    }
    const suggestions = await builder.requestSuggestions(label);
    if (pickRandom) {
      const choice = suggestions[Math.floor(Math.random() * suggestions.length)];
      builder.commit(label, suggestions, choice.fingering);
      labelInput.value = "";
      renderSequence();
      setStatus(`surprise: ${choice.fingering}`);
    } else {
      showSuggestions(label, suggestions);
      setStatus("pick a diagram");
    }
  } catch (err) {
    setStatus(err instanceof Error ? err.message : String(err), true);
  } finally {
    inFlight = false;
  }
}

suggestButton.addEventListener("click", () => void requestStep());
surpriseButton.addEventListener("click", () => void requestStep(true));
labelInput.addEventListener("keydown", (ev) => {
  if (ev.key === "Enter") void requestStep();
});
$<HTMLButtonElement>("import-button").addEventListener("click", () => {
  try {
    builder.importText(exportArea.value);
    renderSequence();
    setStatus("sequence imported");
  } catch (err) {
    setStatus(err instanceof Error ? err.message : String(err), true);
  }
});

void api
  .health()
  .then((h) => setStatus(`ready (${h.model_topology} model loaded)`))
  .catch(() => setStatus("suggestion service unreachable", true));
