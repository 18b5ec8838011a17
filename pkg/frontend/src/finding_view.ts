/**
 * Read-only detail rendering for one finding: the pair with names and
 * CUIs, each predicate's claims with full sentence text (cue terms
 * highlighted at the offsets the API sent), publication dates, current
 * state, and the decision history.
 */

import { escapeHtml, renderHighlighted } from "./highlight.js";
import { ClaimDetail, DecisionRecord, FindingView } from "./types.js";

const STATE_LABELS: Record<string, string> = {
  pending: "Pending review",
  accepted: "Accepted",
  rejected: "Rejected",
  reclassified: "Reclassified",
};

function claimRow(claim: ClaimDetail): string {
  const sentence =
    claim.sentence_text === null
      ? "<em>sentence text unavailable</em>"
      : renderHighlighted(
          claim.sentence_text,
          claim.hedge_hits,
          claim.disagreement_hits
        );
  const date = claim.pub_date || "undated";
  return `
    <li class="claim" data-claim="${escapeHtml(claim.predication_id)}">
      <span class="claim-key">${escapeHtml(claim.claim_key)}</span>
      <span class="claim-date">${escapeHtml(date)}</span>
      <p class="claim-sentence">${sentence}</p>
    </li>`;
}

function historyRow(d: DecisionRecord): string {
  const label = d.category_label ? ` &middot; ${escapeHtml(d.category_label)}` : "";
  const note = d.note ? `<p class="decision-note">${escapeHtml(d.note)}</p>` : "";
  const claims = d.affected_claims.length
    ? ` (claims ${d.affected_claims.map(escapeHtml).join(", ")})`
    : "";
  return `
    <li class="decision" data-decision="${escapeHtml(d.decision_id)}">
      <strong>${escapeHtml(d.verdict)}</strong>${claims} by
      ${escapeHtml(d.curator)} at ${escapeHtml(d.timestamp)}${label}
      ${note}
    </li>`;
}

export function renderFindingView(finding: FindingView): HTMLElement {
  const root = document.createElement("article");
  root.className = "finding-view";
  root.dataset.id = finding.id;
  root.dataset.state = finding.state;
  root.dataset.type = finding.type;

  const cue = finding.cue
    ? `<span class="finding-cue">cue: ${escapeHtml(finding.cue)}</span>`
    : "";
  const group = finding.group
    ? `<span class="finding-group">${escapeHtml(finding.group)}</span>`
    : "";
  const category = finding.category_label
    ? `<span class="finding-category">${escapeHtml(finding.category_label)}</span>`
    : "";

  const evidence = finding.evidence
    .map(
      (ev) => `
      <section class="predicate-block" data-predicate="${escapeHtml(ev.predicate)}">
        <h3>${escapeHtml(ev.predicate)} <small>(${ev.claims.length})</small></h3>
        <ul class="claims">${ev.claims.map(claimRow).join("")}</ul>
      </section>`
    )
    .join("");

  const history = finding.decision_history.length
    ? `<ol class="decision-history">${finding.decision_history
        .map(historyRow)
        .join("")}</ol>`
    : `<p class="decision-history-empty">No decisions yet.</p>`;

  root.innerHTML = `
    <header>
      <h2>
        ${escapeHtml(finding.subject_name)}
        <small>${escapeHtml(finding.subject_cui)}</small>
        &rarr;
        ${escapeHtml(finding.object_name)}
        <small>${escapeHtml(finding.object_cui)}</small>
      </h2>
      <p class="finding-meta">
        <span class="finding-type">${escapeHtml(finding.type)}</span>
        <span class="finding-state state-${escapeHtml(finding.state)}">
          ${escapeHtml(STATE_LABELS[finding.state] ?? finding.state)}
        </span>
        ${cue} ${group} ${category}
      </p>
    </header>
    <div class="evidence">${evidence}</div>
    <footer>
      <h3>Decision history</h3>
      ${history}
    </footer>`;
  return root;
}
