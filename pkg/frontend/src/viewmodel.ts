// Client state: only the latest frames are kept (no queue buildup).

import type { ConfigFrame, EndFrame, ServerFrame, StateFrame } from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

export interface ViewModel {
  config: ConfigFrame | null;
  state: StateFrame | null;
  end: EndFrame | null;
  connection: ConnectionStatus;
  heldKeys: string[];
  lastError: string | null;
}

export function initialViewModel(): ViewModel {
  return {
    config: null,
    state: null,
    end: null,
    connection: "connecting",
    heldKeys: [],
    lastError: null,
  };
}

/** Fold one validated frame into the view; stale states never accumulate. */
export function applyFrame(view: ViewModel, frame: ServerFrame): ViewModel {
  switch (frame.type) {
    case "config":
      return { ...view, config: frame };
    case "state":
      return { ...view, state: frame };
    case "end":
      return { ...view, end: frame };
    case "error":
      return { ...view, lastError: frame.reason };
  }
}

export function setConnection(view: ViewModel, connection: ConnectionStatus): ViewModel {
  return { ...view, connection };
}

export function inputEnabled(view: ViewModel): boolean {
  return view.connection === "open" && view.end === null;
}
