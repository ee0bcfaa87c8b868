/** Central view state with subscriptions and the single-flight gate. */

import type { ChartSpecJson, CheckResult } from "./api.js";

export type HoverTarget =
  | { kind: "feature"; rank: number }
  | { kind: "reference"; index: number }
  | null;

export interface ViewState {
  sessionId: string | null;
  spec: ChartSpecJson | null;
  captionText: string;
  result: CheckResult | null;
  chartEditMode: boolean;
  emphasisDisplayMode: boolean;
  hoverTarget: HoverTarget;
}

type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState;
  private listeners = new Set<Listener>();
  private checkInFlight = false;

  constructor() {
    this.state = {
      sessionId: null,
      spec: null,
      captionText: "",
      result: null,
      chartEditMode: false,
      emphasisDisplayMode: true,
      hoverTarget: null,
    };
  }

  get(): ViewState {
    return this.state;
  }

  update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  subscribe(fn: Listener): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  /** Claim the single check slot. Returns false when a check is running. */
  beginCheck(): boolean {
    if (this.checkInFlight) return false;
    this.checkInFlight = true;
    return true;
  }

  endCheck(): void {
    this.checkInFlight = false;
  }

  get busy(): boolean {
    return this.checkInFlight;
  }
}
