/** DOM rendering. All dynamic content goes through textContent. */
const NO_ACTIONS = {
    onSelect: () => undefined,
    onSeed: () => undefined,
    onNonSeed: () => undefined,
    onUtility: () => undefined,
};
export class DomView {
    doc;
    actions = NO_ACTIONS;
    constructor(doc) {
        this.doc = doc;
    }
    el(id) {
        const element = this.doc.getElementById(id);
        if (!element)
            throw new Error(`missing element #${id}`);
        return element;
    }
    cell(row, text, className) {
        const td = this.doc.createElement("td");
        td.textContent = text;
        if (className)
            td.className = className;
        row.appendChild(td);
        return td;
    }
    renderTable(state) {
        this.el("generation").textContent = `generation ${state.generation}`;
        const tbody = this.el("candidates-body");
        tbody.textContent = "";
        if (state.rows.length === 0) {
            const tr = this.doc.createElement("tr");
            const td = this.cell(tr, "no candidates survive the current filters");
            td.colSpan = 5;
            td.className = "empty";
            tbody.appendChild(tr);
        }
        for (const record of state.rows) {
            const tr = this.doc.createElement("tr");
            tr.dataset.method = record.method;
            if (record.method === state.selected)
                tr.classList.add("selected");
            this.cell(tr, String(record.fanin), "num");
            this.cell(tr, record.display);
            this.cell(tr, record.filteredBy.join(", "), "tags");
            this.cell(tr, record.status);
            this.cell(tr, record.concern);
            tr.addEventListener("click", () => this.actions.onSelect(record.method));
            tbody.appendChild(tr);
        }
        const seeds = this.el("seeds-body");
        seeds.textContent = "";
        for (const record of state.seeds) {
            const tr = this.doc.createElement("tr");
            this.cell(tr, record.display);
            this.cell(tr, record.concern);
            seeds.appendChild(tr);
        }
    }
    renderInspector(model) {
        const panel = this.el("inspector");
        panel.textContent = "";
        if (model === null)
            return;
        const title = this.doc.createElement("h2");
        title.textContent = `${model.target.display} — fan-in ${model.target.fanin}`;
        panel.appendChild(title);
        const bar = this.doc.createElement("div");
        bar.className = "actions";
        const concern = this.doc.createElement("input");
        concern.placeholder = "concern label";
        concern.value = model.target.concern;
        concern.id = "concern-input";
        bar.appendChild(concern);
        const mkButton = (label, handler) => {
            const button = this.doc.createElement("button");
            button.textContent = label;
            button.addEventListener("click", handler);
            bar.appendChild(button);
        };
        const method = model.target.method;
        mkButton("mark seed", () => this.actions.onSeed(method, concern.value));
        mkButton("mark non-seed", () => this.actions.onNonSeed(method));
        mkButton("declaring type is utility", () => this.actions.onUtility(model.target.declaringType));
        panel.appendChild(bar);
        if (model.groups) {
            for (const group of model.groups) {
                const block = this.doc.createElement("div");
                block.className = "group";
                block.style.backgroundColor = group.color;
                const head = this.doc.createElement("div");
                head.className = "group-key";
                head.textContent = `${group.key} (${group.members.length})`;
                block.appendChild(head);
                const list = this.doc.createElement("ul");
                for (const member of group.members) {
                    const item = this.doc.createElement("li");
                    item.textContent = member.display;
                    list.appendChild(item);
                }
                block.appendChild(list);
                panel.appendChild(block);
            }
        }
        if (model.positions) {
            const table = this.doc.createElement("table");
            table.className = "positions";
            const head = this.doc.createElement("tr");
            for (const label of ["caller", "first", "second", "before last",
                "last", "calls"]) {
                const th = this.doc.createElement("th");
                th.textContent = label;
                head.appendChild(th);
            }
            table.appendChild(head);
            for (const row of model.positions) {
                const tr = this.doc.createElement("tr");
                this.cell(tr, row.display);
                for (const flag of [row.isFirst, row.isSecond, row.isBeforeLast,
                    row.isLast]) {
                    this.cell(tr, flag ? "✓" : "", "num");
                }
                this.cell(tr, String(row.callCount), "num");
                table.appendChild(tr);
            }
            panel.appendChild(table);
        }
        const callersHead = this.doc.createElement("h3");
        callersHead.textContent = `callers (${model.callers.length})`;
        panel.appendChild(callersHead);
        const callers = this.doc.createElement("ul");
        callers.className = "callers";
        for (const caller of model.callers) {
            const item = this.doc.createElement("li");
            item.textContent = caller.loc
                ? `${caller.display} — ${caller.loc}`
                : caller.display;
            callers.appendChild(item);
        }
        panel.appendChild(callers);
    }
    renderSummary(summary) {
        const parts = [
            `methods ${summary.methodCount}`,
            `at/above threshold ${summary.atThresholdFormatted}`,
            `seeds ${summary.confirmedSeedsFormatted}`,
            `non-seeds ${summary.nonSeedsFormatted}`,
            `concerns ${summary.concerns}`,
        ];
        if (summary.linesOfCode != null) {
            parts.unshift(`NCLOC ${summary.linesOfCode}`);
        }
        this.el("summary").textContent = parts.join("  ·  ");
    }
    showError(message) {
        const banner = this.el("error-banner");
        banner.textContent = message;
        banner.hidden = false;
    }
    clearError() {
        this.el("error-banner").hidden = true;
    }
}
