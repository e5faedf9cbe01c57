// Websocket session driver, shared by the browser app and scripted tests.

import { inputMessage, parseServerMessage } from "./protocol.js";
import type {
  ConfigMessage,
  EndMessage,
  FrameMessage,
  ServerMessage,
} from "./protocol.js";

export interface SessionHandlers {
  onConfig?: (msg: ConfigMessage) => void;
  // Return the action id to send for this frame, or null to stay silent
  // (real-time sessions send sampled key state instead).
  onFrame?: (msg: FrameMessage) => number | null;
  onEnd?: (msg: EndMessage) => void;
  onBusy?: () => void;
  onClose?: () => void;
}

export interface SocketLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: string, listener: (ev: any) => void): void;
}

export class PlayClient {
  config: ConfigMessage | null = null;
  end: EndMessage | null = null;
  lastFrame: FrameMessage | null = null;

  constructor(private readonly ws: SocketLike,
              private readonly handlers: SessionHandlers) {
    ws.addEventListener("message", (ev: { data: unknown }) => {
      this.dispatch(parseServerMessage(String(ev.data)));
    });
    ws.addEventListener("close", () => this.handlers.onClose?.());
  }

  sendInput(frame: number, action: number): void {
    this.ws.send(inputMessage(frame, action));
  }

  private dispatch(msg: ServerMessage): void {
    switch (msg.t) {
      case "config":
        this.config = msg;
        this.handlers.onConfig?.(msg);
        break;
      case "frame": {
        this.lastFrame = msg;
        const action = this.handlers.onFrame?.(msg);
        if (action !== null && action !== undefined) {
          this.sendInput(msg.f, action);
        }
        break;
      }
      case "end":
        this.end = msg;
        this.handlers.onEnd?.(msg);
        break;
      case "busy":
        this.handlers.onBusy?.();
        break;
    }
  }
}
