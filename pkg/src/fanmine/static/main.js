import { HttpApi } from "./api.js";
import { DomView } from "./render.js";
import { TriageController } from "./state.js";
const api = new HttpApi("");
const view = new DomView(document);
const controller = new TriageController(api, view);
view.actions = {
    onSelect: (method) => void controller.inspect(method),
    onSeed: (method, concern) => void controller.markSeed(method, concern),
    onNonSeed: (method) => void controller.markNonSeed(method),
    onUtility: (declaringType) => void controller.markUtilityType(declaringType),
};
const sortSelect = document.getElementById("sort");
sortSelect.addEventListener("change", () => {
    void controller.setSort(sortSelect.value);
});
const minFanin = document.getElementById("min-fanin");
minFanin.addEventListener("change", () => {
    const value = minFanin.value.trim();
    void controller.setMinFanin(value === "" ? null : Number(value));
});
const includeFiltered = document.getElementById("include-filtered");
includeFiltered.addEventListener("change", () => {
    void controller.setIncludeFiltered(includeFiltered.checked);
});
const modeSelect = document.getElementById("grouping-mode");
const minShared = document.getElementById("min-shared");
const applyMode = () => {
    const shared = Number(minShared.value) || 2;
    void controller.setGroupingMode(modeSelect.value, shared);
};
modeSelect.addEventListener("change", applyMode);
minShared.addEventListener("change", applyMode);
void controller.refresh();
