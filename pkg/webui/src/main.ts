import { HttpApi } from "./api.js";
import { DomView } from "./render.js";
import { TriageController } from "./state.js";
import type { GroupingMode } from "./state.js";

const api = new HttpApi("");
const view = new DomView(document);
const controller = new TriageController(api, view);

view.actions = {
  onSelect: (method) => void controller.inspect(method),
  onSeed: (method, concern) => void controller.markSeed(method, concern),
  onNonSeed: (method) => void controller.markNonSeed(method),
  onUtility: (declaringType) => void controller.markUtilityType(declaringType),
};

const sortSelect = document.getElementById("sort") as HTMLSelectElement;
sortSelect.addEventListener("change", () => {
  void controller.setSort(sortSelect.value as "fanin" | "name");
});

const minFanin = document.getElementById("min-fanin") as HTMLInputElement;
minFanin.addEventListener("change", () => {
  const value = minFanin.value.trim();
  void controller.setMinFanin(value === "" ? null : Number(value));
});

const includeFiltered =
  document.getElementById("include-filtered") as HTMLInputElement;
includeFiltered.addEventListener("change", () => {
  void controller.setIncludeFiltered(includeFiltered.checked);
});

const modeSelect = document.getElementById("grouping-mode") as HTMLSelectElement;
const minShared = document.getElementById("min-shared") as HTMLInputElement;
const applyMode = () => {
  const shared = Number(minShared.value) || 2;
  void controller.setGroupingMode(modeSelect.value as GroupingMode, shared);
};
modeSelect.addEventListener("change", applyMode);
minShared.addEventListener("change", applyMode);

void controller.refresh();
