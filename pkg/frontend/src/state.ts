/** Debounced render scheduling with latest-wins response handling. */

import type { ExplorerParams, RenderOutcome, Transport } from './api';

export type TimerHandle = unknown;

export interface SchedulerOptions {
  transport: Transport;
  /** Quiet time after the last update before a request fires. */
  debounceMs?: number;
  onResult?: (outcome: RenderOutcome, params: ExplorerParams) => void;
  onError?: (error: unknown) => void;
  /** Injectable timers so tests can drive time by hand. */
  setTimer?: (fn: () => void, ms: number) => TimerHandle;
  clearTimer?: (handle: TimerHandle) => void;
}

export class RenderScheduler {
  private readonly transport: Transport;
  private readonly debounceMs: number;
  private readonly onResult: (o: RenderOutcome, p: ExplorerParams) => void;
  private readonly onError: (error: unknown) => void;
  private readonly setTimer: (fn: () => void, ms: number) => TimerHandle;
  private readonly clearTimer: (handle: TimerHandle) => void;

  private dataset: unknown = null;
  private params: ExplorerParams = {};
  private timer: TimerHandle | null = null;
  private issued = 0;
  private applied = 0;
  private inFlight = 0;
  private idleResolvers: (() => void)[] = [];

  constructor(options: SchedulerOptions) {
    this.transport = options.transport;
    this.debounceMs = options.debounceMs ?? 100;
    this.onResult = options.onResult ?? (() => undefined);
    this.onError = options.onError ?? (() => undefined);
    this.setTimer = options.setTimer ?? ((fn, ms) => setTimeout(fn, ms));
    this.clearTimer =
      options.clearTimer ?? (handle => clearTimeout(handle as number));
  }

  /** Stage new inputs; the request fires after the debounce window. */
  update(dataset: unknown, params: ExplorerParams): void {
    this.dataset = dataset;
    this.params = { ...params };
    if (this.timer !== null) this.clearTimer(this.timer);
    this.timer = this.setTimer(() => {
      this.timer = null;
      this.fire();
    }, this.debounceMs);
  }

  /** Skip the debounce window and send the staged inputs now. */
  flush(): void {
    if (this.timer !== null) {
      this.clearTimer(this.timer);
      this.timer = null;
    }
    this.fire();
  }

  /** Resolves once no request is pending or in flight. */
  idle(): Promise<void> {
    if (this.timer === null && this.inFlight === 0) return Promise.resolve();
    return new Promise(resolve => this.idleResolvers.push(resolve));
  }

  get lastAppliedRequest(): number {
    return this.applied;
  }

  private fire(): void {
    if (this.dataset === null) return;
    const id = ++this.issued;
    const params = this.params;
    this.inFlight += 1;
    this.transport({ dataset: this.dataset, params })
      .then(outcome => {
        // stale: a newer request already painted
        if (id > this.applied) {
          this.applied = id;
          this.onResult(outcome, params);
        }
      })
      .catch(error => {
        if (id > this.applied) this.onError(error);
      })
      .finally(() => {
        this.inFlight -= 1;
        if (this.timer === null && this.inFlight === 0) {
          const waiting = this.idleResolvers;
          this.idleResolvers = [];
          for (const resolve of waiting) resolve();
        }
      });
  }
}
