/** Typed client for the captioncheck HTTP service.
 *
 * The UI talks to the analysis backend exclusively through these three
 * endpoints; it never reads data files or computes features itself.
 */

export interface ChartSpecJson {
  plotWidth: number;
  plotHeight: number;
  xRange: [string, string];
  yRange: [number, number];
}

export interface PointFeature {
  kind: "point";
  rank: number;
  persistence: number;
  index: number;
  extremeKind: "localMax" | "localMin" | "endpoint";
  matched?: boolean;
}

export interface TrendFeature {
  kind: "trend";
  rank: number;
  persistence: number;
  start: number;
  end: number;
  direction: "rise" | "fall";
  matched?: boolean;
}

export type Feature = PointFeature | TrendFeature;

export type TargetJson =
  | { kind: "point"; index: number }
  | { kind: "trend"; start: number; end: number };

export interface ReferenceJson {
  span: [number, number];
  timeSpans: [number, number][];
  target: TargetJson;
  factualError: boolean;
  palette: number;
}

export interface DiagnosticJson {
  kind: "factual" | "mismatch";
  spans: [number, number][];
  message: string;
}

export interface CheckResult {
  features: Feature[];
  references: ReferenceJson[];
  diagnostics: DiagnosticJson[];
}

export interface SeriesInfo {
  sessionId: string;
  pointCount: number;
  granularity: string;
  defaultSpec: ChartSpecJson;
}

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

async function parseError(res: Response): Promise<never> {
  let message = `${res.status} ${res.statusText}`;
  try {
    const body = (await res.json()) as { error?: string };
    if (body.error) message = body.error;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(res.status, message);
}

export class ServiceClient {
  readonly baseUrl: string;

  constructor(baseUrl = "") {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  async uploadSeries(csv: string): Promise<SeriesInfo> {
    const res = await fetch(`${this.baseUrl}/api/series`, {
      method: "POST",
      headers: { "Content-Type": "text/csv" },
      body: csv,
    });
    if (!res.ok) await parseError(res);
    return (await res.json()) as SeriesInfo;
  }

  async checkCaption(
    sessionId: string,
    caption: string,
    spec?: ChartSpecJson,
  ): Promise<CheckResult> {
    const payload: { caption: string; spec?: ChartSpecJson } = { caption };
    if (spec) payload.spec = spec;
    const res = await fetch(
      `${this.baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/check`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
      },
    );
    if (!res.ok) await parseError(res);
    return (await res.json()) as CheckResult;
  }

  async getFeatures(sessionId: string): Promise<Feature[]> {
    const res = await fetch(
      `${this.baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/features`,
    );
    if (!res.ok) await parseError(res);
    const body = (await res.json()) as { features: Feature[] };
    return body.features;
  }
}
