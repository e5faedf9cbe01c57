// Held-keys -> one action id per frame.
//
// Action ids mirror the simulator: 0 NoOp, 1 Fire, 2 Thrust, 3 TurnRight,
// 4 TurnLeft (turns exist only in Youturn). When several keys are held the
// priority is Fire > Thrust > Turn > NoOp - firing cadence is the skill
// the game measures, so it always wins the frame. Right wins over left
// when both turn keys are down.

export const NOOP = 0;
export const FIRE = 1;
export const THRUST = 2;
export const TURN_RIGHT = 3;
export const TURN_LEFT = 4;

export const KEY_BINDINGS: Record<string, string> = {
  " ": "fire",
  "Spacebar": "fire",
  "ArrowUp": "thrust",
  "ArrowRight": "right",
  "ArrowLeft": "left",
};

export interface KeyState {
  fire: boolean;
  thrust: boolean;
  right: boolean;
  left: boolean;
}

export function emptyKeys(): KeyState {
  return { fire: false, thrust: false, right: false, left: false };
}

export function actionForFrame(keys: KeyState, nActions: number): number {
  if (keys.fire) return FIRE;
  if (keys.thrust) return THRUST;
  if (nActions > 3) {
    if (keys.right) return TURN_RIGHT;
    if (keys.left) return TURN_LEFT;
  }
  return NOOP;
}

export class KeyTracker {
  readonly keys: KeyState = emptyKeys();

  handle(key: string, down: boolean): boolean {
    const name = KEY_BINDINGS[key];
    if (name === undefined) return false;
    (this.keys as unknown as Record<string, boolean>)[name] = down;
    return true;
  }

  attach(target: { addEventListener: Window["addEventListener"] }): void {
    target.addEventListener("keydown", (ev) => {
      if (this.handle((ev as KeyboardEvent).key, true)) ev.preventDefault();
    });
    target.addEventListener("keyup", (ev) => {
      if (this.handle((ev as KeyboardEvent).key, false)) ev.preventDefault();
    });
  }
}
