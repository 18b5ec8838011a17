import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  highlightSpans,
  renderHighlighted,
} from "../src/highlight.js";
import { CueHit } from "../src/types.js";

describe("escapeHtml", () => {
  it("escapes the five HTML-significant characters", () => {
    expect(escapeHtml(`<b a="x" c='y'>&`)).toBe(
      "&lt;b a=&quot;x&quot; c=&#39;y&#39;&gt;&amp;"
    );
  });
});

describe("highlightSpans", () => {
  const text = "Results may be conflicting in trials.";

  it("keeps spans whose offset really starts the term", () => {
    const hedges: CueHit[] = [["may", 8]];
    const cues: CueHit[] = [["conflicting", 15]];
    expect(highlightSpans(text, hedges, cues)).toEqual([
      { start: 8, end: 11, cls: "hedge" },
      { start: 15, end: 26, cls: "disagreement" },
    ]);
  });

  it("drops a hit whose offset does not match the term", () => {
    expect(highlightSpans(text, [["may", 9]], [])).toEqual([]);
  });

  it("matches case-insensitively the way the tagger does", () => {
    expect(highlightSpans("May it help", [["may", 0]], [])).toHaveLength(1);
  });

  it("keeps only the first of overlapping spans", () => {
    const spans = highlightSpans(
      "conflicting",
      [],
      [
        ["conflicting", 0],
        ["conflicting", 0],
      ]
    );
    expect(spans).toHaveLength(1);
  });
});

describe("renderHighlighted", () => {
  it("wraps cue terms in marks and escapes everything else", () => {
    const html = renderHighlighted(
      "x < y may be conflicting",
      [["may", 6]],
      [["conflicting", 13]]
    );
    expect(html).toBe(
      'x &lt; y <mark class="cue-hedge">may</mark> be ' +
        '<mark class="cue-disagreement">conflicting</mark>'
    );
  });

  it("returns plain escaped text when there are no hits", () => {
    expect(renderHighlighted("a & b", [], [])).toBe("a &amp; b");
  });
});
