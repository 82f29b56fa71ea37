/** View model and controller. The controller owns all API traffic; the view
 * only renders what it is handed, so every number on screen traces back to a
 * service response. */

import type {
  Api, CallerRef, MethodDetail, MethodRecord, PositionRow, SummaryResponse,
} from "./api.js";
import { colorForGroup } from "./colors.js";

export type GroupingMode = "hierarchy" | "position" | "shared";

export interface ViewState {
  generation: number;
  sort: "fanin" | "name";
  minFanin: number | null;
  includeFiltered: boolean;
  groupingMode: GroupingMode;
  minShared: number;
  selected: string | null;
  rows: MethodRecord[];
  seeds: MethodRecord[];
}

export interface ColoredGroup {
  key: string;
  color: string;
  members: { id: string; display: string }[];
}

export interface InspectorModel {
  target: MethodDetail;
  callers: CallerRef[];
  mode: GroupingMode;
  groups?: ColoredGroup[];
  positions?: PositionRow[];
}

export interface ViewSink {
  renderTable(state: ViewState): void;
  renderInspector(model: InspectorModel | null): void;
  renderSummary(summary: SummaryResponse): void;
  showError(message: string): void;
  clearError(): void;
}

function describe(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}

export class TriageController {
  readonly state: ViewState = {
    generation: -1,
    sort: "fanin",
    minFanin: null,
    includeFiltered: false,
    groupingMode: "hierarchy",
    minShared: 2,
    selected: null,
    rows: [],
    seeds: [],
  };

  private busy = false;

  constructor(private readonly api: Api, private readonly view: ViewSink) {}

  /** Refetch the candidate table (and the open inspector) from the service. */
  async refresh(): Promise<void> {
    try {
      const response = await this.api.methods({
        sort: this.state.sort,
        minFanin: this.state.minFanin,
        includeFiltered: this.state.includeFiltered,
      });
      this.state.generation = response.generation;
      this.state.rows = response.methods;
      this.state.seeds = response.methods.filter((m) => m.status === "seed");
      this.view.clearError();
      this.view.renderTable(this.state);
      this.view.renderSummary(await this.api.summary());
      if (this.state.selected !== null) {
        await this.inspect(this.state.selected);
      }
    } catch (e) {
      this.view.showError(describe(e));
    }
  }

  async setSort(sort: "fanin" | "name"): Promise<void> {
    this.state.sort = sort;
    await this.refresh();
  }

  async setMinFanin(minFanin: number | null): Promise<void> {
    this.state.minFanin = minFanin;
    await this.refresh();
  }

  async setIncludeFiltered(include: boolean): Promise<void> {
    this.state.includeFiltered = include;
    await this.refresh();
  }

  async setGroupingMode(mode: GroupingMode, minShared?: number): Promise<void> {
    this.state.groupingMode = mode;
    if (minShared !== undefined) this.state.minShared = minShared;
    if (this.state.selected !== null) {
      await this.inspect(this.state.selected);
    }
  }

  /** Open the caller inspector for one candidate. */
  async inspect(method: string): Promise<void> {
    this.state.selected = method;
    try {
      const target = await this.api.detail(method);
      const model: InspectorModel = {
        target,
        callers: target.callers,
        mode: this.state.groupingMode,
      };
      if (this.state.groupingMode === "position") {
        model.positions = (await this.api.positions(method)).rows;
      } else {
        const response = await this.api.groupings(
          method, this.state.groupingMode, this.state.minShared);
        model.groups = response.groups.map((g) => ({
          key: g.key,
          color: colorForGroup(g.key),
          members: g.members,
        }));
      }
      this.view.renderInspector(model);
    } catch (e) {
      this.view.showError(describe(e));
    }
  }

  /** Mark the selected method as a seed. Requires a concern label; invalid
   * input never reaches the service. */
  async markSeed(method: string, concern: string): Promise<boolean> {
    if (!concern.trim()) {
      this.view.showError("a seed mark needs a non-empty concern label");
      return false;
    }
    return this.mutate(() =>
      this.api.mark({ method, status: "seed", concern: concern.trim() }));
  }

  async markNonSeed(method: string): Promise<boolean> {
    return this.mutate(() => this.api.mark({ method, status: "nonSeed" }));
  }

  /** Exclude the declaring type of a candidate as a utility; its methods
   * drop out of the candidate table on the refresh that follows. */
  async markUtilityType(declaringType: string | null): Promise<boolean> {
    if (!declaringType) {
      this.view.showError("library callees have no declaring type to exclude");
      return false;
    }
    return this.mutate(() => this.api.addUtilities({ types: [declaringType] }));
  }

  async excludeCallerType(declaringType: string): Promise<boolean> {
    return this.mutate(() =>
      this.api.addExcludedCallers({ types: [declaringType] }));
  }

  /** One in-flight mutation at a time: a rapid double-click sends one
   * request. Every mutation is followed by a full refresh, so the table
   * reflects the server's generation. */
  private async mutate(
    operation: () => Promise<{ generation: number }>,
  ): Promise<boolean> {
    if (this.busy) return false;
    this.busy = true;
    try {
      await operation();
      await this.refresh();
      return true;
    } catch (e) {
      this.view.showError(describe(e));
      return false;
    } finally {
      this.busy = false;
    }
  }
}
