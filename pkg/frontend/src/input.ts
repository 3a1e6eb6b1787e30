// Keyboard tracking: at most one input frame per animation frame, sent only
// when the held-key set changed (including the transition to empty, so the
// server sees releases). Nothing is emitted while the connection is closed.

import type { InputFrame } from "./protocol.js";

export const TRACKED_KEYS = new Set([
  "ArrowUp",
  "ArrowDown",
  "ArrowLeft",
  "ArrowRight",
  " ",
  "q",
  "e",
]);

export class InputTracker {
  private held = new Set<string>();
  private lastSent: string[] | null = null;

  keyDown(key: string): boolean {
    if (!TRACKED_KEYS.has(key)) return false;
    this.held.add(key);
    return true;
  }

  keyUp(key: string): boolean {
    if (!TRACKED_KEYS.has(key)) return false;
    this.held.delete(key);
    return true;
  }

  heldKeys(): string[] {
    return [...this.held].sort();
  }

  /** Frame to emit this animation frame, or null for no traffic. */
  nextFrame(enabled: boolean): InputFrame | null {
    if (!enabled) {
      this.lastSent = null; // resync after reconnect
      return null;
    }
    const keys = this.heldKeys();
    const unchanged =
      this.lastSent !== null &&
      this.lastSent.length === keys.length &&
      this.lastSent.every((k, i) => k === keys[i]);
    if (unchanged) return null;
    if (keys.length === 0 && this.lastSent === null) return null; // steady idle
    this.lastSent = keys;
    if (keys.length === 0) {
      this.lastSent = null;
      return { type: "input", keys: [] }; // one release frame, then silence
    }
    return { type: "input", keys };
  }
}
