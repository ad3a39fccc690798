/**
 * Keyboard mapping for the first queue item: digit keys pick a candidate
 * (the last digit is "keep as is"), "o" toggles occurrence-only scope,
 * "r" requests a rerun.
 */

import { QueueItemJson } from "./api.js";

export type KeyAction =
  | { kind: "choose"; index: number }
  | { kind: "keep" }
  | { kind: "toggle-scope" }
  | { kind: "rerun" }
  | { kind: "none" };

export function actionForKey(key: string, item: QueueItemJson | undefined): KeyAction {
  if (key === "r") return { kind: "rerun" };
  if (!item) return { kind: "none" };
  if (key === "o") return { kind: "toggle-scope" };
  if (/^[1-9]$/.test(key)) {
    const index = Number(key) - 1;
    if (index < item.candidates.length) return { kind: "choose", index };
    if (index === item.candidates.length) return { kind: "keep" };
  }
  return { kind: "none" };
}
