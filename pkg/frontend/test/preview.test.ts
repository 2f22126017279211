import { afterEach, beforeEach, describe, expect, test, vi } from "vitest";

import { PreviewController } from "../src/preview.js";

function deferred<T>() {
  let resolve!: (value: T) => void;
  let reject!: (error: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

describe("debounced preview", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  test("rapid requests collapse into the last one", async () => {
    const controller = new PreviewController(250);
    const calls: string[] = [];
    const results: string[] = [];
    const sink = { ok: (t: string) => results.push(t), fail: () => results.push("fail") };

    controller.request(async () => {
      calls.push("first");
      return "first";
    }, sink);
    vi.advanceTimersByTime(100); // not yet fired
    controller.request(async () => {
      calls.push("second");
      return "second";
    }, sink);
    await vi.advanceTimersByTimeAsync(250);

    expect(calls).toEqual(["second"]);
    expect(results).toEqual(["second"]);
  });

  test("a newer request aborts the one in flight and drops its result", async () => {
    const controller = new PreviewController(10);
    const firstGate = deferred<string>();
    const seenSignals: AbortSignal[] = [];
    const results: string[] = [];
    const sink = { ok: (t: string) => results.push(t), fail: (e: unknown) => results.push(`fail:${e}`) };

    controller.request((signal) => {
      seenSignals.push(signal);
      return firstGate.promise;
    }, sink);
    await vi.advanceTimersByTimeAsync(10); // first request now in flight

    controller.request(async () => "second", sink);
    await vi.advanceTimersByTimeAsync(10);

    expect(seenSignals[0].aborted).toBe(true);
    firstGate.resolve("first"); // resolves late; must not reach the sink
    await vi.runAllTimersAsync();
    expect(results).toEqual(["second"]);
  });

  test("failures of the current request reach the sink", async () => {
    const controller = new PreviewController(10);
    const results: string[] = [];
    controller.request(async () => {
      throw new Error("boom");
    }, { ok: (t) => results.push(t), fail: () => results.push("failed") });
    await vi.advanceTimersByTimeAsync(10);
    await vi.runAllTimersAsync();
    expect(results).toEqual(["failed"]);
  });

  test("cancel drops scheduled and in-flight work", async () => {
    const controller = new PreviewController(50);
    const results: string[] = [];
    controller.request(async () => "late", { ok: (t) => results.push(t), fail: () => results.push("fail") });
    controller.cancel();
    await vi.runAllTimersAsync();
    expect(results).toEqual([]);
  });
});
