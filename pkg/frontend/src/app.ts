/**
 * Wires the queue, detail view, and decision form into a single page.
 * All state lives on the server; this file only routes (location.hash)
 * and refetches. The one transient exception is the optimistic state
 * chip flip after a submit, rolled back if the follow-up refetch fails.
 */

import { ApiClient } from "./api.js";
import { loadCurator, saveCurator } from "./curator.js";
import { createDecisionForm } from "./decision_form.js";
import { renderFindingView } from "./finding_view.js";
import { optimistic } from "./optimistic.js";
import { createQueueScreen } from "./queue_screen.js";
import { DecisionResponse } from "./types.js";

export function mountApp(root: HTMLElement, client?: ApiClient): void {
  const api = client ?? new ApiClient("", loadCurator());

  root.innerHTML = `
    <header class="app-header">
      <h1>knowcert curation</h1>
      <label class="curator-box">
        Curator
        <input type="text" name="curator" placeholder="your name">
      </label>
    </header>
    <main class="app-main">
      <div class="pane pane-queue"></div>
      <div class="pane pane-detail">
        <p class="detail-placeholder">Select a finding to review.</p>
      </div>
    </main>`;

  const curatorInput = root.querySelector<HTMLInputElement>(
    "input[name=curator]"
  )!;
  curatorInput.value = api.getCurator();
  curatorInput.addEventListener("change", () => {
    saveCurator(curatorInput.value);
    api.setCurator(curatorInput.value.trim());
  });

  const detailPane = root.querySelector<HTMLDivElement>(".pane-detail")!;
  const queue = createQueueScreen(api, {
    onSelect: (id) => {
      window.location.hash = `#/finding/${id}`;
    },
  });
  root.querySelector(".pane-queue")!.appendChild(queue.element);

  async function openFinding(id: string): Promise<void> {
    try {
      const finding = await api.getFinding(id);
      detailPane.innerHTML = "";
      detailPane.appendChild(renderFindingView(finding));
      detailPane.appendChild(
        createDecisionForm(finding, api, {
          onSubmitted: (response) => afterDecision(id, response),
          onRefresh: () => void openFinding(id),
        })
      );
    } catch (error) {
      detailPane.innerHTML = `<p class="detail-error" role="alert">${
        error instanceof Error ? error.message : String(error)
      }</p>`;
    }
  }

  function afterDecision(id: string, response: DecisionResponse): void {
    const newState = response.finding?.state ?? "rejected";
    void optimistic({
      apply: () => queue.applyLocalState(id, newState),
      remote: async () => {
        await queue.refresh();
        await openFinding(id);
      },
      revert: (snapshot) => {
        if (snapshot) queue.restoreLocalState(snapshot);
      },
    });
  }

  function route(): void {
    const match = window.location.hash.match(/^#\/finding\/(.+)$/);
    if (match) void openFinding(decodeURIComponent(match[1]));
  }

  window.addEventListener("hashchange", route);
  route();
  void queue.refresh();
}
