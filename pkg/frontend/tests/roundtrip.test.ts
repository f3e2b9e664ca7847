/** Drive a real service instance end to end through the explorer pieces. */

import { spawn, ChildProcess } from 'node:child_process';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { healthy, httpTransport, RenderOutcome } from '../src/api';
import { RenderScheduler } from '../src/state';
import { totalFlatWidth } from '../src/svgmetrics';

const PORT = 8700 + Math.floor(Math.random() * 200);
const BASE = `http://127.0.0.1:${PORT}`;

const DATASET = {
  timesteps: [
    { nodes: [
      { id: 'root' },
      { id: 'a', parent: 'root', value: 4 },
      { id: 'b', parent: 'root', value: 2 }] },
    { nodes: [
      { id: 'root' },
      { id: 'a', parent: 'root', value: 3 },
      { id: 'b', parent: 'root', value: 3 }] },
    { nodes: [
      { id: 'root' },
      { id: 'a', parent: 'root', value: 5 },
      { id: 'b', parent: 'root', value: 1 }] },
  ],
};

let server: ChildProcess;

beforeAll(async () => {
  server = spawn('python3', ['-m', 'streamnest.cli', 'serve',
                             '--port', String(PORT)],
                 { stdio: 'ignore' });
  const deadline = Date.now() + 15_000;
  while (Date.now() < deadline) {
    if (await healthy(BASE)) return;
    await new Promise(resolve => setTimeout(resolve, 150));
  }
  throw new Error(`render service did not come up on :${PORT}`);
}, 20_000);

afterAll(() => {
  server?.kill();
});

describe('explorer against a live service', () => {
  it('sweeping HCR 0 to 1 strictly grows the total flat width', async () => {
    const transport = httpTransport(BASE);
    const widths: number[] = [];
    for (let step = 0; step <= 10; step++) {
      const outcome = await transport({
        dataset: DATASET,
        params: { hcr: step / 10, marginFn: 'fixed', marginValue: 0 },
      });
      expect(outcome.ok).toBe(true);
      widths.push(totalFlatWidth(outcome.svg));
    }
    expect(widths[0]).toBe(0);
    for (let i = 1; i < widths.length; i++) {
      expect(widths[i]).toBeGreaterThan(widths[i - 1]);
    }
  }, 20_000);

  it('a 20-update burst settles on the last request, byte for byte', async () => {
    const transport = httpTransport(BASE);
    let latest: RenderOutcome | null = null;
    const scheduler = new RenderScheduler({
      transport,
      debounceMs: 0,
      onResult: outcome => {
        latest = outcome;
      },
    });

    let finalParams = {};
    for (let i = 0; i < 20; i++) {
      finalParams = { hcr: (i + 1) / 20, gap: 80 + (i % 4) * 20 };
      scheduler.update(DATASET, finalParams);
      scheduler.flush(); // 20 overlapping requests race each other
    }
    await scheduler.idle();

    expect(latest).not.toBeNull();
    const direct = await transport({ dataset: DATASET, params: finalParams });
    expect(latest!.ok).toBe(true);
    expect(latest!.svg).toBe(direct.svg);
  }, 20_000);

  it('reports feasibility violations without blocking the render', async () => {
    const deep = {
      timesteps: [0, 1].map(() => ({
        nodes: [
          { id: 'r' },
          { id: 'a', parent: 'r' },
          { id: 'b', parent: 'a' },
          { id: 'c', parent: 'b' }],
      })),
    };
    const outcome = await httpTransport(BASE)({
      dataset: deep,
      params: { hcr: 0.2, marginFn: 'fixed', marginValue: 5 },
    });
    expect(outcome.ok).toBe(true);
    expect(outcome.svg).toContain('<svg');
    expect(outcome.violations.length).toBeGreaterThan(0);
    expect(outcome.violations[0].message).toContain('deficit');
  });

  it('surfaces dataset rejections as errors', async () => {
    const outcome = await httpTransport(BASE)({
      dataset: { timesteps: [{ nodes: [{ id: 'x', parent: 'ghost' }] }] },
      params: {},
    });
    expect(outcome.ok).toBe(false);
    expect(outcome.status).toBe(400);
    expect(outcome.error).toContain('ghost');
  });
});
