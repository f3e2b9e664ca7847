/** Parameter panel: plain DOM controls feeding one onChange callback. */

import type { ExplorerParams } from './api';

export const DEFAULT_PARAMS: ExplorerParams = {
  hcr: 0.5,
  marginFn: 'fixed',
  marginValue: 5,
  yPadding: 'none',
  yMargin: 0,
  baseline: 'silhouette',
  gap: 100,
  height: 400,
  palette: 'blues',
  outlineOnly: false,
  showTransitions: true,
};

type ChangeHandler = (params: ExplorerParams) => void;

export class ControlPanel {
  readonly params: ExplorerParams;
  private readonly onChange: ChangeHandler;
  private readonly root: HTMLElement;

  constructor(root: HTMLElement, onChange: ChangeHandler) {
    this.root = root;
    this.onChange = onChange;
    this.params = { ...DEFAULT_PARAMS };
    this.build();
  }

  private emit(): void {
    this.onChange({ ...this.params });
  }

  private build(): void {
    this.slider('HCR', 0, 1, 0.01, this.params.hcr!, v => {
      this.params.hcr = v;
    });
    this.select('margin fn', ['fixed', 'hierarchical', 'hierarchical-reversed'],
      this.params.marginFn!, v => {
        this.params.marginFn = v as ExplorerParams['marginFn'];
      });
    this.slider('margin value', 0, 12, 0.5, this.params.marginValue!, v => {
      this.params.marginValue = v;
    });
    this.select('y padding', ['none', 'auto', '2', '5'],
      String(this.params.yPadding), v => {
        this.params.yPadding =
          v === 'none' || v === 'auto' ? v : Number(v);
      });
    this.slider('y margin', 0, 20, 0.5, this.params.yMargin!, v => {
      this.params.yMargin = v;
    });
    this.select('baseline', ['silhouette', 'zero', 'expand'],
      this.params.baseline!, v => {
        this.params.baseline = v as ExplorerParams['baseline'];
      });
    this.slider('gap', 40, 240, 10, this.params.gap!, v => {
      this.params.gap = v;
    });
    this.select('palette', ['blues', 'sunset', 'greys'],
      this.params.palette!, v => {
        this.params.palette = v;
      });
    this.checkbox('outline only', this.params.outlineOnly!, v => {
      this.params.outlineOnly = v;
    });
    this.checkbox('show transitions', this.params.showTransitions!, v => {
      this.params.showTransitions = v;
    });
  }

  private row(label: string): HTMLLabelElement {
    const row = document.createElement('label');
    row.className = 'control-row';
    const caption = document.createElement('span');
    caption.textContent = label;
    row.appendChild(caption);
    this.root.appendChild(row);
    return row;
  }

  private slider(label: string, min: number, max: number, step: number,
                 value: number, apply: (v: number) => void): void {
    const row = this.row(label);
    const input = document.createElement('input');
    input.type = 'range';
    input.min = String(min);
    input.max = String(max);
    input.step = String(step);
    input.value = String(value);
    const readout = document.createElement('span');
    readout.className = 'readout';
    readout.textContent = String(value);
    input.addEventListener('input', () => {
      const v = Number(input.value);
      readout.textContent = String(v);
      apply(v);
      this.emit();
    });
    row.appendChild(input);
    row.appendChild(readout);
  }

  private select(label: string, options: string[], value: string,
                 apply: (v: string) => void): void {
    const row = this.row(label);
    const input = document.createElement('select');
    for (const option of options) {
      const el = document.createElement('option');
      el.value = option;
      el.textContent = option;
      if (option === value) el.selected = true;
      input.appendChild(el);
    }
    input.addEventListener('change', () => {
      apply(input.value);
      this.emit();
    });
    row.appendChild(input);
  }

  private checkbox(label: string, value: boolean,
                   apply: (v: boolean) => void): void {
    const row = this.row(label);
    const input = document.createElement('input');
    input.type = 'checkbox';
    input.checked = value;
    input.addEventListener('change', () => {
      apply(input.checked);
      this.emit();
    });
    row.appendChild(input);
  }
}
