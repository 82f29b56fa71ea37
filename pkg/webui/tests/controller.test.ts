import { describe, expect, it } from "vitest";

import {
  Api, ApiError, Group, MarkRequest, MethodDetail, MethodRecord,
  MethodsQuery, MethodsResponse, MutationResponse, PositionResponse,
  SelectorRequest, SummaryResponse, GroupingResponse,
} from "../src/api.js";
import {
  InspectorModel, TriageController, ViewSink, ViewState,
} from "../src/state.js";

interface Fixture {
  method: string;
  display: string;
  declaringType: string;
  fanin: number;
}

/** In-memory stand-in honoring the service contract: generation bumps per
 * mutation, utility types drop out of the candidate list, marks upsert. */
class FakeApi implements Api {
  generation = 0;
  utilities = new Set<string>();
  marks = new Map<string, { status: string; concern: string }>();
  requests = { methods: 0, mark: 0, utilities: 0, excluded: 0 };
  unreachable = false;
  groupsFixture: Group[] = [];

  constructor(private readonly fixtures: Fixture[]) {}

  private toRecord(fixture: Fixture): MethodRecord {
    const mark = this.marks.get(fixture.method);
    return {
      method: fixture.method,
      display: fixture.display,
      declaringType: fixture.declaringType,
      package: "",
      fanin: fixture.fanin,
      filteredBy: [],
      surviving: true,
      isLibrary: false,
      status: mark?.status ?? "candidate",
      concern: mark?.concern ?? "",
    };
  }

  async methods(query: MethodsQuery): Promise<MethodsResponse> {
    this.requests.methods += 1;
    if (this.unreachable) throw new ApiError("analysis service unreachable");
    let rows = this.fixtures.filter((f) => !this.utilities.has(f.declaringType));
    if (query.minFanin != null) {
      rows = rows.filter((f) => f.fanin >= (query.minFanin as number));
    }
    rows = [...rows].sort((a, b) =>
      query.sort === "name"
        ? a.display.localeCompare(b.display)
        : b.fanin - a.fanin || a.display.localeCompare(b.display));
    return { generation: this.generation, methods: rows.map((f) => this.toRecord(f)) };
  }

  async detail(method: string): Promise<MethodDetail> {
    const fixture = this.fixtures.find((f) => f.method === method);
    if (!fixture) throw new ApiError(`unknown method id '${method}'`, 404);
    return {
      ...this.toRecord(fixture),
      generation: this.generation,
      loc: "Src.java:1",
      callers: [],
    };
  }

  async groupings(method: string): Promise<GroupingResponse> {
    return {
      generation: this.generation,
      target: method,
      mode: "hierarchy",
      groups: this.groupsFixture,
    };
  }

  async positions(method: string): Promise<PositionResponse> {
    return { generation: this.generation, target: method, mode: "position", rows: [] };
  }

  async mark(request: MarkRequest): Promise<MutationResponse> {
    this.requests.mark += 1;
    if (request.status === "seed" && !request.concern) {
      throw new ApiError("a seed mark requires a non-empty concern", 400);
    }
    this.marks.set(request.method, {
      status: request.status,
      concern: request.concern ?? "",
    });
    this.generation += 1;
    return { generation: this.generation };
  }

  async addUtilities(request: SelectorRequest): Promise<MutationResponse> {
    this.requests.utilities += 1;
    for (const t of request.types ?? []) this.utilities.add(t);
    this.generation += 1;
    return { generation: this.generation, warnings: [] };
  }

  async addExcludedCallers(_request: SelectorRequest): Promise<MutationResponse> {
    this.requests.excluded += 1;
    this.generation += 1;
    return { generation: this.generation, warnings: [] };
  }

  async summary(): Promise<SummaryResponse> {
    return {
      generation: this.generation,
      linesOfCode: null,
      methodCount: this.fixtures.length,
      atThreshold: this.fixtures.length,
      atThresholdFormatted: `${this.fixtures.length} (100%)`,
      utilityFiltered: 0,
      accessorFiltered: 0,
      confirmedSeeds: 0,
      confirmedSeedsFormatted: "0 (0%)",
      nonSeeds: 0,
      nonSeedsFormatted: "0 (0%)",
      concerns: 0,
    };
  }
}

class RecordingView implements ViewSink {
  tables: ViewState[] = [];
  inspectors: (InspectorModel | null)[] = [];
  summaries: SummaryResponse[] = [];
  errors: string[] = [];

  renderTable(state: ViewState): void {
    this.tables.push({ ...state, rows: [...state.rows], seeds: [...state.seeds] });
  }

  renderInspector(model: InspectorModel | null): void {
    this.inspectors.push(model);
  }

  renderSummary(summary: SummaryResponse): void {
    this.summaries.push(summary);
  }

  showError(message: string): void {
    this.errors.push(message);
  }

  clearError(): void {}

  lastTable(): ViewState {
    const last = this.tables.at(-1);
    if (!last) throw new Error("no table rendered");
    return last;
  }
}

const FIXTURES: Fixture[] = [
  { method: "mini.Figure::changed/0", display: "mini.Figure.changed()",
    declaringType: "mini.Figure", fanin: 12 },
  { method: "mini.UndoManager::recordActivity/1",
    display: "mini.UndoManager.recordActivity(Figure)",
    declaringType: "mini.UndoManager", fanin: 11 },
  { method: "mini.FigureEnumerator::nextFigure/0",
    display: "mini.FigureEnumerator.nextFigure()",
    declaringType: "mini.FigureEnumerator", fanin: 12 },
];

function setup(fixtures: Fixture[] = FIXTURES) {
  const api = new FakeApi(fixtures);
  const view = new RecordingView();
  const controller = new TriageController(api, view);
  return { api, view, controller };
}

describe("utility feedback loop", () => {
  it("removes the marked type's rows on refresh and matches the server generation", async () => {
    const { api, view, controller } = setup();
    await controller.refresh();
    expect(view.lastTable().rows.map((r) => r.method)).toContain(
      "mini.FigureEnumerator::nextFigure/0");

    const ok = await controller.markUtilityType("mini.FigureEnumerator");
    expect(ok).toBe(true);
    const rows = view.lastTable().rows.map((r) => r.method);
    expect(rows).not.toContain("mini.FigureEnumerator::nextFigure/0");
    expect(rows).toContain("mini.Figure::changed/0");
    expect(controller.state.generation).toBe(api.generation);
    expect(api.generation).toBe(1);
  });

  it("refuses to exclude a library callee (no declaring type)", async () => {
    const { api, view, controller } = setup();
    const ok = await controller.markUtilityType(null);
    expect(ok).toBe(false);
    expect(api.requests.utilities).toBe(0);
    expect(view.errors.length).toBe(1);
  });
});

describe("mark actions", () => {
  it("sends a seed mark with its concern and refreshes the table", async () => {
    const { api, view, controller } = setup();
    await controller.refresh();
    const ok = await controller.markSeed("mini.Figure::changed/0",
                                         "  Observer notification  ");
    expect(ok).toBe(true);
    expect(api.marks.get("mini.Figure::changed/0")).toEqual(
      { status: "seed", concern: "Observer notification" });
    const row = view.lastTable().rows.find(
      (r) => r.method === "mini.Figure::changed/0");
    expect(row?.status).toBe("seed");
    expect(view.lastTable().seeds.map((r) => r.method)).toEqual(
      ["mini.Figure::changed/0"]);
    expect(controller.state.generation).toBe(api.generation);
  });

  it("rejects a seed mark without a concern before any request is sent", async () => {
    const { api, view, controller } = setup();
    const ok = await controller.markSeed("mini.Figure::changed/0", "   ");
    expect(ok).toBe(false);
    expect(api.requests.mark).toBe(0);
    expect(view.errors[0]).toMatch(/concern/);
  });

  it("sends one request for a rapid double-click", async () => {
    const { api, controller } = setup();
    const first = controller.markNonSeed("mini.Figure::changed/0");
    const second = controller.markNonSeed("mini.Figure::changed/0");
    const [r1, r2] = await Promise.all([first, second]);
    expect(r1).toBe(true);
    expect(r2).toBe(false);
    expect(api.requests.mark).toBe(1);
  });

  it("keeps the displayed generation in lockstep across mutations", async () => {
    const { api, controller } = setup();
    await controller.refresh();
    await controller.markNonSeed("mini.Figure::changed/0");
    expect(controller.state.generation).toBe(api.generation);
    await controller.markUtilityType("mini.UndoManager");
    expect(controller.state.generation).toBe(api.generation);
    await controller.excludeCallerType("mini.Cmd01");
    expect(controller.state.generation).toBe(api.generation);
  });
});

describe("table state", () => {
  it("sort toggle refetches in name order", async () => {
    const { view, controller } = setup();
    await controller.refresh();
    await controller.setSort("name");
    const displays = view.lastTable().rows.map((r) => r.display);
    expect(displays).toEqual([...displays].sort((a, b) => a.localeCompare(b)));
  });

  it("min fan-in narrows the rows", async () => {
    const { view, controller } = setup();
    await controller.setMinFanin(12);
    expect(view.lastTable().rows.every((r) => r.fanin >= 12)).toBe(true);
  });

  it("shows an error banner when the service is unreachable, without retrying", async () => {
    const { api, view, controller } = setup();
    api.unreachable = true;
    await controller.refresh();
    expect(view.errors.length).toBe(1);
    expect(view.errors[0]).toMatch(/unreachable/);
    expect(api.requests.methods).toBe(1);
  });
});

describe("caller inspector", () => {
  it("assigns distinct, reload-stable colors to distinct hierarchy groups", async () => {
    const { api, view, controller } = setup();
    api.groupsFixture = [
      { key: "pipe.Valve ~ invoke", members: [
        { id: "a", display: "A.invoke(Request)" },
        { id: "b", display: "B.invoke(Request)" }] },
      { key: "ungrouped", members: [{ id: "c", display: "C.start(Request)" }] },
    ];
    await controller.inspect("mini.Figure::changed/0");
    const first = view.inspectors.at(-1);
    const colors = first?.groups?.map((g) => g.color) ?? [];
    expect(new Set(colors).size).toBe(2);

    await controller.inspect("mini.Figure::changed/0");
    const second = view.inspectors.at(-1);
    expect(second?.groups?.map((g) => g.color)).toEqual(colors);
  });

  it("renders a single group with a single color", async () => {
    const { api, view, controller } = setup();
    api.groupsFixture = [
      { key: "cmd.AbstractCommand ~ execute", members: [
        { id: "a", display: "CutCommand.execute()" }] },
    ];
    await controller.inspect("mini.Figure::changed/0");
    const model = view.inspectors.at(-1);
    expect(model?.groups?.length).toBe(1);
    expect(new Set(model?.groups?.map((g) => g.color)).size).toBe(1);
  });

  it("fetches the position table in position mode", async () => {
    const { view, controller } = setup();
    await controller.setGroupingMode("position");
    await controller.inspect("mini.Figure::changed/0");
    const model = view.inspectors.at(-1);
    expect(model?.mode).toBe("position");
    expect(model?.positions).toEqual([]);
    expect(model?.groups).toBeUndefined();
  });
});
