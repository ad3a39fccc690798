/**
 * Queue controller: holds the visible page of ambiguity items and applies
 * decisions optimistically, rolling back if the service rejects them.
 */

import {
  CandidateJson,
  DecisionRequest,
  ProgressJson,
  QueueItemJson,
  ReviewApi,
} from "./api.js";

export type Listener = () => void;

function itemKey(item: QueueItemJson): string {
  return `${item.doc_id}:${item.char_offset}`;
}

let tokenCounter = 0;
function nextClientToken(): string {
  tokenCounter += 1;
  return `ui-${Date.now()}-${tokenCounter}`;
}

export class QueueController {
  items: QueueItemJson[] = [];
  totalPending = 0;
  progress: ProgressJson = { total: 0, pending: 0, resolved: 0 };
  error: string | null = null;
  rerunning = false;

  private listeners: Listener[] = [];

  constructor(
    private readonly api: ReviewApi,
    private readonly pageSize = 20,
    private readonly annotator = "reviewer",
  ) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  async load(): Promise<void> {
    const page = await this.api.queue({ limit: this.pageSize });
    this.items = page.items;
    this.totalPending = page.total;
    this.progress = page.progress;
    this.error = null;
    this.notify();
  }

  /**
   * Submit a decision for one queue item. Global scope removes every visible
   * item with the same form; occurrence scope removes exactly that item.
   * The removal is optimistic: on rejection the previous view is restored.
   */
  async decide(
    item: QueueItemJson,
    candidate: CandidateJson,
    scope: "global" | "occurrence",
  ): Promise<void> {
    const body: DecisionRequest = {
      form_key: item.form_key,
      scope,
      lemma: candidate.lemma,
      pos: candidate.pos,
      disambiguator: candidate.disambiguator,
      language: candidate.language,
      annotator: this.annotator,
      client_token: nextClientToken(),
    };
    if (scope === "occurrence") {
      body.occurrence = { doc_id: item.doc_id, char_offset: item.char_offset };
    }

    const before = { items: this.items, totalPending: this.totalPending };
    if (scope === "global") {
      const dropped = this.items.filter(
        (i) => i.form_key === item.form_key,
      ).length;
      this.items = this.items.filter((i) => i.form_key !== item.form_key);
      this.totalPending -= dropped;
    } else {
      this.items = this.items.filter((i) => itemKey(i) !== itemKey(item));
      this.totalPending -= 1;
    }
    this.notify();

    try {
      const resp = await this.api.decide(body);
      this.progress = resp.progress;
      this.totalPending = resp.progress.pending;
      this.error = null;
    } catch (err) {
      this.items = before.items;
      this.totalPending = before.totalPending;
      this.error = err instanceof Error ? err.message : String(err);
    }
    this.notify();
    if (!this.error && this.items.length === 0 && this.totalPending > 0) {
      await this.load(); // pull the next page
    }
  }

  /** Keep an unknown form as its own lemma (the "?" option). */
  async keepAsIs(item: QueueItemJson, scope: "global" | "occurrence"): Promise<void> {
    await this.decide(
      item,
      {
        lemma: item.form_key.toUpperCase(),
        pos: "other",
        disambiguator: null,
        language: null,
        label: item.form_key.toUpperCase(),
      },
      scope,
    );
  }

  async rerun(): Promise<void> {
    if (this.rerunning) return;
    this.rerunning = true;
    this.notify();
    try {
      await this.api.rerun();
      await this.load();
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    } finally {
      this.rerunning = false;
      this.notify();
    }
  }
}
