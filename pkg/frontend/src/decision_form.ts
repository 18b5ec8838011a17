/**
 * Decision form for one loaded finding: verdict, optional per-claim
 * checkboxes for partial invalidation, optional category label (with the
 * usual contradiction-explanation categories as suggestions), optional
 * note. Submits with the finding's content hash; a 409 means someone
 * changed the evidence first and the form offers a refresh instead of
 * retrying blind.
 */

import { ApiClient, ApiError } from "./api.js";
import { escapeHtml } from "./highlight.js";
import { DecisionResponse, FindingView, Verdict } from "./types.js";

export const CATEGORY_SUGGESTIONS = [
  "Heterogeneity in study design",
  "Contradiction of observational studies and RCTs",
  "Research settings or real-world settings",
  "Cost-effectiveness",
  "Short-term outcome",
  "Publication bias, citation bias and time-lag bias",
  "Inaccuracy of SemRep",
];

const VERDICTS: { value: Verdict; label: string }[] = [
  { value: "valid", label: "Valid - a true dispute in the literature" },
  { value: "ner_error", label: "NER error - drug or disease misrecognized" },
  { value: "sre_error", label: "SRE error - predicate wrongly extracted" },
  { value: "out_of_scope", label: "Out of scope" },
];

export interface DecisionFormOptions {
  onSubmitted?: (response: DecisionResponse) => void;
  /** Called when the user accepts the stale-data refresh prompt. */
  onRefresh?: () => void;
}

export function createDecisionForm(
  finding: FindingView,
  client: ApiClient,
  options: DecisionFormOptions = {}
): HTMLFormElement {
  const form = document.createElement("form");
  form.className = "decision-form";
  form.dataset.finding = finding.id;

  const claims = finding.evidence.flatMap((ev) =>
    ev.claims.map((c) => ({ predicate: ev.predicate, id: c.predication_id }))
  );

  form.innerHTML = `
    <fieldset class="verdicts">
      <legend>Verdict</legend>
      ${VERDICTS.map(
        (v) => `
        <label>
          <input type="radio" name="verdict" value="${v.value}">
          ${escapeHtml(v.label)}
        </label>`
      ).join("")}
    </fieldset>
    <fieldset class="affected-claims">
      <legend>Affected claims (leave empty to invalidate the whole finding)</legend>
      ${claims
        .map(
          (c) => `
        <label>
          <input type="checkbox" name="claim" value="${escapeHtml(c.id)}">
          ${escapeHtml(c.id)} <small>${escapeHtml(c.predicate)}</small>
        </label>`
        )
        .join("")}
    </fieldset>
    <label class="category">
      Category label
      <input type="text" name="category" list="category-suggestions"
             placeholder="optional">
      <datalist id="category-suggestions">
        ${CATEGORY_SUGGESTIONS.map(
          (c) => `<option value="${escapeHtml(c)}"></option>`
        ).join("")}
      </datalist>
    </label>
    <label class="note">
      Note
      <textarea name="note" rows="2" placeholder="optional"></textarea>
    </label>
    <p class="form-error" role="alert" hidden></p>
    <p class="form-stale" hidden>
      This finding changed since you loaded it.
      <button type="button" class="refresh">Refresh and re-judge</button>
    </p>
    <button type="submit">Submit decision</button>`;

  const errorBox = form.querySelector<HTMLParagraphElement>(".form-error")!;
  const staleBox = form.querySelector<HTMLParagraphElement>(".form-stale")!;
  const submitButton = form.querySelector<HTMLButtonElement>(
    "button[type=submit]"
  )!;

  const showError = (message: string) => {
    errorBox.textContent = message;
    errorBox.hidden = false;
  };

  form
    .querySelector<HTMLButtonElement>("button.refresh")!
    .addEventListener("click", () => options.onRefresh?.());

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    errorBox.hidden = true;
    staleBox.hidden = true;

    const verdictInput = form.querySelector<HTMLInputElement>(
      "input[name=verdict]:checked"
    );
    if (!verdictInput) {
      showError("Pick a verdict before submitting.");
      return;
    }
    if (!client.getCurator()) {
      showError("Set your curator name first.");
      return;
    }
    const affected = Array.from(
      form.querySelectorAll<HTMLInputElement>("input[name=claim]:checked"),
      (input) => input.value
    );
    const category = form.querySelector<HTMLInputElement>(
      "input[name=category]"
    )!.value.trim();
    const note = form
      .querySelector<HTMLTextAreaElement>("textarea[name=note]")!
      .value.trim();

    submitButton.disabled = true;
    client
      .submitDecision(finding.id, {
        verdict: verdictInput.value as Verdict,
        affected_claims: affected,
        category_label: category || null,
        note: note || null,
        content_hash: finding.content_hash,
      })
      .then((response) => {
        options.onSubmitted?.(response);
      })
      .catch((error: unknown) => {
        if (error instanceof ApiError && error.isStale) {
          staleBox.hidden = false;
        } else if (error instanceof ApiError) {
          showError(error.message); // server message, verbatim
        } else {
          showError(String(error));
        }
      })
      .finally(() => {
        submitButton.disabled = false;
      });
  });

  return form;
}
