/** HTTP contract with the render service. */

export interface ExplorerParams {
  hcr?: number;
  marginFn?: 'fixed' | 'hierarchical' | 'hierarchical-reversed';
  marginValue?: number;
  yPadding?: 'none' | 'auto' | number;
  yMargin?: number;
  baseline?: 'zero' | 'expand' | 'silhouette';
  width?: number;
  height?: number;
  gap?: number;
  palette?: string;
  outlineOnly?: boolean;
  strokeWidth?: number;
  background?: string;
  holeGap?: number;
  showTransitions?: boolean;
}

export interface Violation {
  kind: string;
  fromT: number;
  toT: number;
  available: number;
  required: number;
  message: string;
}

export interface RenderOutcome {
  ok: boolean;
  status: number;
  svg: string;
  violations: Violation[];
  error?: string;
}

export interface RenderRequest {
  dataset: unknown;
  params: ExplorerParams;
}

export type Transport = (request: RenderRequest) => Promise<RenderOutcome>;

function parseViolations(text: string | null): Violation[] {
  if (!text) return [];
  try {
    const parsed = JSON.parse(text);
    return Array.isArray(parsed) ? (parsed as Violation[]) : [];
  } catch {
    return [];
  }
}

/** Transport backed by fetch against a service base URL. */
export function httpTransport(baseUrl: string): Transport {
  const root = baseUrl.replace(/\/$/, '');
  return async (request: RenderRequest): Promise<RenderOutcome> => {
    const response = await fetch(`${root}/render`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(request),
    });
    if (response.ok) {
      return {
        ok: true,
        status: response.status,
        svg: await response.text(),
        violations: parseViolations(response.headers.get('x-feasibility')),
      };
    }
    let error = `service answered ${response.status}`;
    let violations: Violation[] = [];
    try {
      const body = await response.json();
      if (typeof body.error === 'string') error = body.error;
      if (typeof body.detail === 'string') error += `: ${body.detail}`;
      if (Array.isArray(body.violations)) violations = body.violations;
    } catch {
      /* non-JSON error body; keep the status text */
    }
    return { ok: false, status: response.status, svg: '', violations, error };
  };
}

export async function healthy(baseUrl: string): Promise<boolean> {
  try {
    const response = await fetch(`${baseUrl.replace(/\/$/, '')}/health`);
    return response.ok;
  } catch {
    return false;
  }
}
