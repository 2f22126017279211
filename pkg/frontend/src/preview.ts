/** Debounced preview requests; a newer request aborts the one in flight. */

export type PreviewFetch = (signal: AbortSignal) => Promise<string>;

export interface PreviewSink {
  ok(turtle: string): void;
  fail(error: unknown): void;
}

export class PreviewController {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inflight: AbortController | null = null;
  private generation = 0;

  constructor(private readonly delayMs = 250) {}

  /** Schedule a preview; superseded requests never reach the sink. */
  request(fetchPreview: PreviewFetch, sink: PreviewSink): void {
    if (this.timer !== null) clearTimeout(this.timer);
    const generation = ++this.generation;
    this.timer = setTimeout(() => {
      this.timer = null;
      this.inflight?.abort();
      const controller = new AbortController();
      this.inflight = controller;
      fetchPreview(controller.signal).then(
        (turtle) => {
          if (generation === this.generation) sink.ok(turtle);
        },
        (error) => {
          if (generation === this.generation && !controller.signal.aborted) sink.fail(error);
        },
      );
    }, this.delayMs);
  }

  /** Drop anything scheduled or in flight (e.g. when leaving the form). */
  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.generation++;
    this.inflight?.abort();
    this.inflight = null;
  }
}
