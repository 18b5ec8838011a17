/**
 * Review queue: paginated pending-first list with type/state filters and
 * a counts badge fed by GET /stats. The screen owns no truth - every
 * refresh() replaces its rows with whatever the service returns - but it
 * supports a transient local state chip so a just-submitted decision can
 * show immediately and be rolled back if the refetch fails.
 */

import { ApiClient } from "./api.js";
import { escapeHtml } from "./highlight.js";
import {
  CurationState,
  FindingSummary,
  FindingType,
  QueueFilters,
} from "./types.js";

export interface QueueScreenOptions {
  onSelect?: (findingId: string) => void;
  pageSize?: number;
}

export interface LocalStateSnapshot {
  findingId: string;
  previousState: string;
}

export interface QueueScreen {
  element: HTMLElement;
  refresh: () => Promise<void>;
  setFilters: (filters: Partial<QueueFilters>) => Promise<void>;
  getFilters: () => QueueFilters;
  /** Rows as last fetched (API payload order: pending first). */
  rows: () => FindingSummary[];
  /** Pending count from the last /stats fetch. */
  pendingCount: () => number | null;
  /** Flip a row's state chip locally; returns a snapshot for rollback. */
  applyLocalState: (
    findingId: string,
    state: string
  ) => LocalStateSnapshot | null;
  restoreLocalState: (snapshot: LocalStateSnapshot) => void;
}

const TYPE_OPTIONS: ("" | FindingType)[] = [
  "",
  "contradiction",
  "diversity",
  "apparent",
];
const STATE_OPTIONS: ("" | CurationState)[] = [
  "",
  "pending",
  "accepted",
  "rejected",
  "reclassified",
];

function rowHtml(f: FindingSummary): string {
  const extra = f.cue
    ? `<span class="row-cue">${escapeHtml(f.cue)}</span>`
    : f.group
      ? `<span class="row-group">${escapeHtml(f.group)}</span>`
      : "";
  return `
    <li class="queue-row" data-id="${escapeHtml(f.id)}" data-state="${escapeHtml(f.state)}">
      <button type="button" class="open">
        <span class="row-pair">
          ${escapeHtml(f.subject_name)} &rarr; ${escapeHtml(f.object_name)}
        </span>
        <span class="row-predicates">${f.predicates.map(escapeHtml).join(", ")}</span>
        <span class="row-type">${escapeHtml(f.type)}</span>
        <span class="row-state state-${escapeHtml(f.state)}">${escapeHtml(f.state)}</span>
        <span class="row-claims">${f.claim_count} claims</span>
        ${extra}
      </button>
    </li>`;
}

export function createQueueScreen(
  client: ApiClient,
  options: QueueScreenOptions = {}
): QueueScreen {
  const pageSize = options.pageSize ?? 20;
  const filters: QueueFilters = { limit: pageSize, offset: 0 };
  let currentRows: FindingSummary[] = [];
  let total = 0;
  let pending: number | null = null;

  const root = document.createElement("section");
  root.className = "queue-screen";
  root.innerHTML = `
    <header class="queue-header">
      <span class="queue-badge" title="pending findings">&ndash;</span>
      <label>Type
        <select name="type">
          ${TYPE_OPTIONS.map((t) => `<option value="${t}">${t || "all"}</option>`).join("")}
        </select>
      </label>
      <label>State
        <select name="state">
          ${STATE_OPTIONS.map((s) => `<option value="${s}">${s || "all"}</option>`).join("")}
        </select>
      </label>
    </header>
    <p class="queue-error" role="alert" hidden></p>
    <ul class="queue-list"></ul>
    <footer class="queue-pager">
      <button type="button" class="prev" disabled>Previous</button>
      <span class="queue-range"></span>
      <button type="button" class="next" disabled>Next</button>
    </footer>`;

  const badge = root.querySelector<HTMLSpanElement>(".queue-badge")!;
  const errorBox = root.querySelector<HTMLParagraphElement>(".queue-error")!;
  const list = root.querySelector<HTMLUListElement>(".queue-list")!;
  const range = root.querySelector<HTMLSpanElement>(".queue-range")!;
  const prevButton = root.querySelector<HTMLButtonElement>("button.prev")!;
  const nextButton = root.querySelector<HTMLButtonElement>("button.next")!;
  const typeSelect = root.querySelector<HTMLSelectElement>("select[name=type]")!;
  const stateSelect = root.querySelector<HTMLSelectElement>("select[name=state]")!;

  function renderRows(): void {
    list.innerHTML = currentRows.map(rowHtml).join("");
    const offset = filters.offset ?? 0;
    const from = total === 0 ? 0 : offset + 1;
    const to = offset + currentRows.length;
    range.textContent = `${from}-${to} of ${total}`;
    prevButton.disabled = offset === 0;
    nextButton.disabled = offset + currentRows.length >= total;
  }

  async function refresh(): Promise<void> {
    try {
      const [page, stats] = await Promise.all([
        client.listFindings(filters),
        client.getStats(),
      ]);
      currentRows = page.findings;
      total = page.total;
      pending = stats.pending;
      badge.textContent = String(stats.pending);
      errorBox.hidden = true;
      renderRows();
    } catch (error) {
      // Keep the stale rows on screen; surface the failure inline.
      errorBox.textContent = `Queue refresh failed: ${
        error instanceof Error ? error.message : String(error)
      }`;
      errorBox.hidden = false;
    }
  }

  async function setFilters(next: Partial<QueueFilters>): Promise<void> {
    Object.assign(filters, next);
    if (next.type !== undefined || next.state !== undefined) filters.offset = 0;
    typeSelect.value = filters.type ?? "";
    stateSelect.value = filters.state ?? "";
    await refresh();
  }

  typeSelect.addEventListener("change", () => {
    void setFilters({ type: (typeSelect.value || undefined) as FindingType });
  });
  stateSelect.addEventListener("change", () => {
    void setFilters({ state: (stateSelect.value || undefined) as CurationState });
  });
  prevButton.addEventListener("click", () => {
    void setFilters({
      offset: Math.max(0, (filters.offset ?? 0) - pageSize),
    });
  });
  nextButton.addEventListener("click", () => {
    void setFilters({ offset: (filters.offset ?? 0) + pageSize });
  });
  list.addEventListener("click", (event) => {
    const row = (event.target as HTMLElement).closest<HTMLLIElement>(".queue-row");
    if (row?.dataset.id) options.onSelect?.(row.dataset.id);
  });

  function applyLocalState(
    findingId: string,
    state: string
  ): LocalStateSnapshot | null {
    const row = currentRows.find((f) => f.id === findingId);
    if (!row) return null;
    const snapshot = { findingId, previousState: row.state };
    row.state = state as FindingSummary["state"];
    renderRows();
    return snapshot;
  }

  function restoreLocalState(snapshot: LocalStateSnapshot): void {
    const row = currentRows.find((f) => f.id === snapshot.findingId);
    if (row) {
      row.state = snapshot.previousState as FindingSummary["state"];
      renderRows();
    }
  }

  return {
    element: root,
    refresh,
    setFilters,
    getFilters: () => ({ ...filters }),
    rows: () => currentRows.slice(),
    pendingCount: () => pending,
    applyLocalState,
    restoreLocalState,
  };
}
