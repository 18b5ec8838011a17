/** Sentence rendering with cue terms wrapped in <mark> at the offsets the
 * API provides. No client-side re-tokenization: if an offset does not
 * actually start the given term, the hit is dropped rather than guessed. */

import { CueHit } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export interface HighlightSpan {
  start: number;
  end: number;
  cls: "hedge" | "disagreement";
}

export function highlightSpans(
  text: string,
  hedgeHits: CueHit[],
  disagreementHits: CueHit[]
): HighlightSpan[] {
  const spans: HighlightSpan[] = [];
  const collect = (hits: CueHit[], cls: HighlightSpan["cls"]) => {
    for (const [term, start] of hits) {
      const end = start + term.length;
      if (text.slice(start, end).toLowerCase() === term.toLowerCase()) {
        spans.push({ start, end, cls });
      }
    }
  };
  collect(hedgeHits, "hedge");
  collect(disagreementHits, "disagreement");
  spans.sort((a, b) => a.start - b.start);
  // Overlaps cannot happen for whole-token cues, but keep render sane if
  // a future lexicon produces them: first span wins.
  const kept: HighlightSpan[] = [];
  let cursor = 0;
  for (const span of spans) {
    if (span.start >= cursor) {
      kept.push(span);
      cursor = span.end;
    }
  }
  return kept;
}

export function renderHighlighted(
  text: string,
  hedgeHits: CueHit[],
  disagreementHits: CueHit[]
): string {
  const spans = highlightSpans(text, hedgeHits, disagreementHits);
  let html = "";
  let cursor = 0;
  for (const span of spans) {
    html += escapeHtml(text.slice(cursor, span.start));
    html += `<mark class="cue-${span.cls}">${escapeHtml(
      text.slice(span.start, span.end)
    )}</mark>`;
    cursor = span.end;
  }
  html += escapeHtml(text.slice(cursor));
  return html;
}
