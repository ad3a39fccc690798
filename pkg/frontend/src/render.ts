/**
 * HTML-string rendering for the review queue. Pure functions of controller
 * state so they are testable without a browser.
 */

import { QueueItemJson, ProgressJson } from "./api.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderProgress(progress: ProgressJson): string {
  const pct =
    progress.total === 0
      ? 100
      : Math.floor((progress.resolved / progress.total) * 100);
  return (
    `<div class="progress" data-pending="${progress.pending}">` +
    `${progress.resolved} / ${progress.total} tokens resolved (${pct}%)` +
    `</div>`
  );
}

export function renderKwic(item: QueueItemJson): string {
  const { left, keyword, right } = item.kwic;
  return (
    `<span class="kwic">` +
    `${escapeHtml(left)} <mark>${escapeHtml(keyword)}</mark> ${escapeHtml(right)}` +
    `</span>`
  );
}

export function renderCandidates(item: QueueItemJson): string {
  const buttons = item.candidates.map((cand, i) => {
    const hint = cand.disambiguator
      ? `${cand.pos}, ${cand.disambiguator}`
      : cand.pos;
    return (
      `<button class="candidate" data-index="${i}">` +
      `<kbd>${i + 1}</kbd> ${escapeHtml(cand.lemma)} (${escapeHtml(hint)})` +
      `</button>`
    );
  });
  // unknown forms (no candidates) can always be kept as their own lemma
  buttons.push(
    `<button class="candidate keep" data-index="${item.candidates.length}">` +
      `<kbd>${item.candidates.length + 1}</kbd> ` +
      `${escapeHtml(item.form_key.toUpperCase())} (keep as is)` +
      `</button>`,
  );
  return buttons.join("");
}

export function renderItem(item: QueueItemJson): string {
  return (
    `<li class="item" data-doc="${escapeHtml(item.doc_id)}" ` +
    `data-offset="${item.char_offset}" data-form="${escapeHtml(item.form_key)}">` +
    `<div class="form">${escapeHtml(item.form_key)}</div>` +
    renderKwic(item) +
    `<div class="candidates">${renderCandidates(item)}</div>` +
    `<label><input type="checkbox" class="scope-occurrence"> this occurrence only</label>` +
    `</li>`
  );
}

export function renderQueue(
  items: QueueItemJson[],
  totalPending: number,
  progress: ProgressJson,
  error: string | null,
): string {
  const parts = [renderProgress(progress)];
  if (error) parts.push(`<div class="error">${escapeHtml(error)}</div>`);
  if (items.length === 0 && totalPending === 0) {
    parts.push(`<div class="done">Queue empty — everything resolved.</div>`);
  } else {
    parts.push(`<ol class="queue">${items.map(renderItem).join("")}</ol>`);
    if (totalPending > items.length) {
      parts.push(
        `<div class="more">${totalPending - items.length} more pending…</div>`,
      );
    }
  }
  return parts.join("");
}
