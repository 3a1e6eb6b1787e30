// Socket wiring and the single-threaded update loop: socket events and
// keyboard events serialize through one view update path, and the painter
// always draws the latest frame only.

import { InputTracker } from "./input.js";
import { parseServerFrame } from "./protocol.js";
import { buildScene } from "./scene.js";
import { paint, paintPanel } from "./render.js";
import {
  applyFrame,
  initialViewModel,
  inputEnabled,
  setConnection,
  type ViewModel,
} from "./viewmodel.js";

export interface DuelClientOptions {
  serverAddress: string; // HOST:PORT
  canvas: HTMLCanvasElement;
  panel: HTMLElement;
}

export class DuelClient {
  private view: ViewModel = initialViewModel();
  private tracker = new InputTracker();
  private socket: WebSocket | null = null;
  private running = false;

  constructor(private options: DuelClientOptions) {}

  start(): void {
    const url = `ws://${this.options.serverAddress}/duel`;
    const socket = new WebSocket(url);
    this.socket = socket;
    socket.onopen = () => {
      this.view = setConnection(this.view, "open");
    };
    socket.onclose = () => {
      this.view = setConnection(this.view, "closed");
    };
    socket.onerror = () => {
      this.view = setConnection(this.view, "closed");
    };
    socket.onmessage = (event) => {
      const frame = parseServerFrame(String(event.data));
      if (frame !== null) {
        this.view = applyFrame(this.view, frame);
      }
    };
    window.addEventListener("keydown", (event) => {
      if (this.tracker.keyDown(event.key)) event.preventDefault();
    });
    window.addEventListener("keyup", (event) => {
      if (this.tracker.keyUp(event.key)) event.preventDefault();
    });
    this.running = true;
    requestAnimationFrame(() => this.frame());
  }

  private frame(): void {
    if (!this.running) return;
    const outbound = this.tracker.nextFrame(
      inputEnabled(this.view) && this.socket?.readyState === WebSocket.OPEN,
    );
    if (outbound !== null && this.socket !== null) {
      this.socket.send(JSON.stringify(outbound));
    }
    this.view = { ...this.view, heldKeys: this.tracker.heldKeys() };
    const ctx = this.options.canvas.getContext("2d");
    if (ctx !== null) {
      paint(buildScene(this.view), ctx);
    }
    paintPanel(buildScene(this.view).panel, this.options.panel);
    requestAnimationFrame(() => this.frame());
  }
}
