/** Typed client for the fanmine analysis service. */
export class ApiError extends Error {
    status;
    constructor(message, status) {
        super(message);
        this.status = status;
        this.name = "ApiError";
    }
}
export class HttpApi {
    baseUrl;
    fetcher;
    constructor(baseUrl = "", fetcher) {
        this.baseUrl = baseUrl;
        this.fetcher = fetcher ?? ((input, init) => fetch(input, init));
    }
    async request(path, init) {
        let response;
        try {
            response = await this.fetcher(this.baseUrl + path, init);
        }
        catch (e) {
            throw new ApiError(`analysis service unreachable (${String(e)})`);
        }
        let body = null;
        try {
            body = await response.json();
        }
        catch {
            // non-JSON error bodies fall through to the status check
        }
        if (!response.ok) {
            const detail = body?.error;
            throw new ApiError(detail ?? `request failed (${response.status})`, response.status);
        }
        return body;
    }
    post(path, payload) {
        return this.request(path, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(payload),
        });
    }
    methods(query) {
        const params = new URLSearchParams({ sort: query.sort });
        if (query.minFanin != null)
            params.set("minFanin", String(query.minFanin));
        if (query.includeFiltered)
            params.set("includeFiltered", "true");
        return this.request(`/api/methods?${params}`);
    }
    detail(method) {
        return this.request(`/api/methods/${encodeURIComponent(method)}`);
    }
    groupings(method, mode, minShared = 1) {
        const params = new URLSearchParams({ mode });
        if (mode === "shared")
            params.set("minShared", String(minShared));
        return this.request(`/api/methods/${encodeURIComponent(method)}/groupings?${params}`);
    }
    positions(method) {
        return this.request(`/api/methods/${encodeURIComponent(method)}/groupings?mode=position`);
    }
    mark(request) {
        return this.post("/api/marks", request);
    }
    addUtilities(request) {
        return this.post("/api/utilities", request);
    }
    addExcludedCallers(request) {
        return this.post("/api/excluded-callers", request);
    }
    summary() {
        return this.request("/api/report/summary");
    }
}
