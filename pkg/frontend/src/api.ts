// Typed client for the fcakit HTTP service.  Everything the UI knows
// about the backend goes through this file.

export interface JsonTable {
  objects: string[];
  attributes: string[];
  incidence: boolean[][];
}

export interface ContextSummary {
  name: string;
  objects?: number;
  attributes?: number;
  crosses?: number;
  error?: string;
}

export interface StoreResult {
  name: string;
  created: boolean;
  objects: number;
  attributes: number;
  concepts: number | null;
}

export interface CellResult {
  table: JsonTable;
  concepts: number | null;
}

export interface ImplicationRow {
  id: number;
  support: number;
  valid: boolean;
  premise: string[];
  conclusion: string[];
  text: string;
}

export interface SceneNode {
  index: number;
  x: number;
  y: number;
  intent_key: string;
  extent: string[];
  intent: string[];
  has_attribute_label: boolean;
  has_object_label: boolean;
  attribute_label_names: string[];
  object_label_names: string[];
  attribute_label: string;
  object_label: string;
  pinned: boolean;
}

export interface Scene {
  nodes: SceneNode[];
  edges: [number, number][];
  concepts: number;
}

export interface Question {
  premise: string[];
  conclusion: string[];
}

export interface ExploreState {
  session: string;
  finished: boolean;
  question: Question | null;
  accepted: ImplicationRow[];
  context: JsonTable;
}

export interface ViolationDetail {
  error: string;
  violated: { premise: string[]; conclusion: string[] };
}

export class ApiError extends Error {
  constructor(readonly status: number, readonly detail: unknown) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    body = null;
  }
  if (!response.ok) {
    const detail = body && typeof body === "object" && "detail" in body
      ? (body as { detail: unknown }).detail
      : body;
    throw new ApiError(response.status, detail ?? response.statusText);
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    return unwrap<T>(await fetch(this.base + path, init));
  }

  private json(body: unknown): RequestInit {
    return {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    };
  }

  health(): Promise<{ status: string }> {
    return this.request("/api/health");
  }

  async listContexts(): Promise<ContextSummary[]> {
    const body = await this.request<{ contexts: ContextSummary[] }>("/api/contexts");
    return body.contexts;
  }

  putContext(name: string, table: JsonTable, mode?: "create"): Promise<StoreResult> {
    const query = mode ? `?mode=${mode}` : "";
    return this.request(`/api/contexts/${encodeURIComponent(name)}${query}`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(table),
    });
  }

  getContext(name: string): Promise<JsonTable> {
    return this.request(`/api/contexts/${encodeURIComponent(name)}`);
  }

  setCell(name: string, object: number, attribute: number,
          value: boolean): Promise<CellResult> {
    return this.request(`/api/contexts/${encodeURIComponent(name)}/cell`,
                        this.json({ object, attribute, value }));
  }

  getLattice(name: string): Promise<Scene> {
    return this.request(`/api/contexts/${encodeURIComponent(name)}/lattice`);
  }

  postPositions(name: string, pins: Record<string, { x: number; y: number }>):
      Promise<{ pins: Record<string, { x: number; y: number }> }> {
    return this.request(
      `/api/contexts/${encodeURIComponent(name)}/lattice/positions`,
      this.json(pins));
  }

  async getImplications(name: string, all = false): Promise<ImplicationRow[]> {
    const query = all ? "?all=true" : "";
    const body = await this.request<{ implications: ImplicationRow[] }>(
      `/api/contexts/${encodeURIComponent(name)}/implications${query}`);
    return body.implications;
  }

  exploreStart(name: string): Promise<ExploreState> {
    return this.request(`/api/explore/${encodeURIComponent(name)}/start`,
                        { method: "POST" });
  }

  exploreState(sid: string): Promise<ExploreState> {
    return this.request(`/api/explore/${sid}`);
  }

  exploreAccept(sid: string): Promise<ExploreState> {
    return this.request(`/api/explore/${sid}/accept`, { method: "POST" });
  }

  exploreCounterexample(sid: string, name: string,
                        attributes: number[]): Promise<ExploreState> {
    return this.request(`/api/explore/${sid}/counterexample`,
                        this.json({ name, attributes }));
  }

  exploreSave(sid: string, name: string): Promise<{ name: string }> {
    return this.request(`/api/explore/${sid}/save`, this.json({ name }));
  }
}

export function blankTable(rows: number, cols: number): JsonTable {
  return {
    objects: Array.from({ length: rows }, (_, i) => `Object ${i + 1}`),
    attributes: Array.from({ length: cols }, (_, j) => `Attribute ${j + 1}`),
    incidence: Array.from({ length: rows },
                          () => Array.from({ length: cols }, () => false)),
  };
}
