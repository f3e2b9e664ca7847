/** Wire the panel, the scheduler, and the SVG viewport together. */

import { healthy, httpTransport } from './api';
import { ControlPanel, DEFAULT_PARAMS } from './controls';
import { RenderScheduler } from './state';
import { totalFlatWidth } from './svgmetrics';

const SAMPLE_DATASET = {
  timesteps: [
    { nodes: [
      { id: 'org' },
      { id: 'eng', parent: 'org', value: 6, next: ['web', 'infra'] },
      { id: 'sales', parent: 'org', value: 3 },
      { id: 'intern', parent: 'eng', value: 1 }] },
    { nodes: [
      { id: 'org' },
      { id: 'web', parent: 'org', prev: ['eng'], value: 3 },
      { id: 'infra', parent: 'org', prev: ['eng'], value: 3 },
      { id: 'sales', parent: 'org', value: 3 },
      { id: 'intern', parent: 'web', value: 1 }] },
    { nodes: [
      { id: 'org' },
      { id: 'eng', parent: 'org', prev: ['web', 'infra'], value: 7 },
      { id: 'sales', parent: 'org', value: 2 },
      { id: 'intern', parent: 'eng', value: 1 }] },
    { nodes: [
      { id: 'org' },
      { id: 'intern', parent: 'org', value: 5 },
      { id: 'eng', parent: 'intern', value: 3 },
      { id: 'sales', parent: 'org', value: 2 }] },
  ],
};

function must<T extends Element>(selector: string): T {
  const el = document.querySelector<T>(selector);
  if (!el) throw new Error(`missing element ${selector}`);
  return el;
}

function start(): void {
  const viewport = must<HTMLDivElement>('#viewport');
  const banner = must<HTMLDivElement>('#banner');
  const stats = must<HTMLDivElement>('#stats');
  const serviceInput = must<HTMLInputElement>('#service-url');
  const fileInput = must<HTMLInputElement>('#dataset-file');
  const statusDot = must<HTMLSpanElement>('#service-status');

  let dataset: unknown = SAMPLE_DATASET;
  let params = { ...DEFAULT_PARAMS };

  const scheduler = new RenderScheduler({
    transport: request => httpTransport(serviceInput.value)(request),
    debounceMs: 100,
    onResult: outcome => {
      if (outcome.ok) {
        viewport.innerHTML = outcome.svg;
        stats.textContent =
          `flat width ${totalFlatWidth(outcome.svg).toFixed(1)} px`;
      } else {
        banner.textContent = outcome.error ?? 'render failed';
        banner.className = 'banner error';
        return;
      }
      if (outcome.violations.length > 0) {
        banner.textContent = outcome.violations
          .map(violation => violation.message)
          .join(' — ');
        banner.className = 'banner warning';
      } else {
        banner.textContent = '';
        banner.className = 'banner';
      }
    },
    onError: error => {
      banner.textContent = `service unreachable: ${String(error)}`;
      banner.className = 'banner error';
    },
  });

  new ControlPanel(must<HTMLDivElement>('#controls'), next => {
    params = next;
    scheduler.update(dataset, params);
  });

  fileInput.addEventListener('change', () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    file.text().then(text => {
      try {
        dataset = JSON.parse(text);
      } catch (error) {
        banner.textContent = `not JSON: ${String(error)}`;
        banner.className = 'banner error';
        return;
      }
      scheduler.update(dataset, params);
      scheduler.flush();
    });
  });

  serviceInput.addEventListener('change', () => {
    void probe();
    scheduler.update(dataset, params);
  });

  async function probe(): Promise<void> {
    const ok = await healthy(serviceInput.value);
    statusDot.textContent = ok ? 'up' : 'down';
    statusDot.className = ok ? 'status up' : 'status down';
  }

  void probe();
  scheduler.update(dataset, params);
  scheduler.flush();
}

document.addEventListener('DOMContentLoaded', start);
