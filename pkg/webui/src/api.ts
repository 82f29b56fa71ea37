/** Typed client for the fanmine analysis service. */

export interface MethodRecord {
  method: string;
  display: string;
  declaringType: string | null;
  package: string;
  fanin: number;
  filteredBy: string[];
  surviving: boolean;
  isLibrary: boolean;
  status: string;
  concern: string;
}

export interface MethodsResponse {
  generation: number;
  methods: MethodRecord[];
}

export interface CallerRef {
  id: string;
  display: string;
  loc: string | null;
}

export interface MethodDetail extends MethodRecord {
  generation: number;
  loc: string | null;
  callers: CallerRef[];
}

export interface GroupMember {
  id: string;
  display: string;
}

export interface Group {
  key: string;
  members: GroupMember[];
}

export interface GroupingResponse {
  generation: number;
  target: string;
  mode: string;
  groups: Group[];
}

export interface PositionRow {
  caller: string;
  display: string;
  isFirst: boolean;
  isSecond: boolean;
  isBeforeLast: boolean;
  isLast: boolean;
  callCount: number;
}

export interface PositionResponse {
  generation: number;
  target: string;
  mode: "position";
  rows: PositionRow[];
}

export interface SummaryResponse {
  generation: number;
  linesOfCode: number | null;
  methodCount: number;
  atThreshold: number;
  atThresholdFormatted: string;
  utilityFiltered: number;
  accessorFiltered: number;
  confirmedSeeds: number;
  confirmedSeedsFormatted: string;
  nonSeeds: number;
  nonSeedsFormatted: string;
  concerns: number;
}

export interface MutationResponse {
  generation: number;
  warnings?: string[];
}

export interface MarkRequest {
  method: string;
  status: "seed" | "nonSeed" | "candidate";
  concern?: string;
  note?: string;
}

export interface SelectorRequest {
  types?: string[];
  packages?: string[];
  methods?: string[];
}

export interface MethodsQuery {
  sort: "fanin" | "name";
  minFanin?: number | null;
  includeFiltered?: boolean;
}

export interface Api {
  methods(query: MethodsQuery): Promise<MethodsResponse>;
  detail(method: string): Promise<MethodDetail>;
  groupings(method: string, mode: "hierarchy" | "shared",
            minShared?: number): Promise<GroupingResponse>;
  positions(method: string): Promise<PositionResponse>;
  mark(request: MarkRequest): Promise<MutationResponse>;
  addUtilities(request: SelectorRequest): Promise<MutationResponse>;
  addExcludedCallers(request: SelectorRequest): Promise<MutationResponse>;
  summary(): Promise<SummaryResponse>;
}

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

type Fetcher = (input: string, init?: RequestInit) => Promise<Response>;

export class HttpApi implements Api {
  private readonly fetcher: Fetcher;

  constructor(private readonly baseUrl: string = "", fetcher?: Fetcher) {
    this.fetcher = fetcher ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetcher(this.baseUrl + path, init);
    } catch (e) {
      throw new ApiError(`analysis service unreachable (${String(e)})`);
    }
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      // non-JSON error bodies fall through to the status check
    }
    if (!response.ok) {
      const detail = (body as { error?: string } | null)?.error;
      throw new ApiError(detail ?? `request failed (${response.status})`,
                         response.status);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  methods(query: MethodsQuery): Promise<MethodsResponse> {
    const params = new URLSearchParams({ sort: query.sort });
    if (query.minFanin != null) params.set("minFanin", String(query.minFanin));
    if (query.includeFiltered) params.set("includeFiltered", "true");
    return this.request(`/api/methods?${params}`);
  }

  detail(method: string): Promise<MethodDetail> {
    return this.request(`/api/methods/${encodeURIComponent(method)}`);
  }

  groupings(method: string, mode: "hierarchy" | "shared",
            minShared = 1): Promise<GroupingResponse> {
    const params = new URLSearchParams({ mode });
    if (mode === "shared") params.set("minShared", String(minShared));
    return this.request(
      `/api/methods/${encodeURIComponent(method)}/groupings?${params}`);
  }

  positions(method: string): Promise<PositionResponse> {
    return this.request(
      `/api/methods/${encodeURIComponent(method)}/groupings?mode=position`);
  }

  mark(request: MarkRequest): Promise<MutationResponse> {
    return this.post("/api/marks", request);
  }

  addUtilities(request: SelectorRequest): Promise<MutationResponse> {
    return this.post("/api/utilities", request);
  }

  addExcludedCallers(request: SelectorRequest): Promise<MutationResponse> {
    return this.post("/api/excluded-callers", request);
  }

  summary(): Promise<SummaryResponse> {
    return this.request("/api/report/summary");
  }
}
