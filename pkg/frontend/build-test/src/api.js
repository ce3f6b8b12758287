/** Typed access to the registry API.
 *
 * Every network call goes through the ENDPOINTS table below; the contract
 * test checks that table against the server's route list, so the client
 * cannot quietly grow a request the service does not document.
 */
export const API_PREFIX = "/api/v1";
export const ENDPOINTS = {
    register: { method: "POST", template: "/users" },
    login: { method: "POST", template: "/sessions" },
    logout: { method: "DELETE", template: "/sessions" },
    listProjects: { method: "GET", template: "/projects" },
    createProject: { method: "POST", template: "/projects" },
    project: { method: "GET", template: "/projects/{project_id}" },
    copyProject: { method: "POST", template: "/projects/{project_id}/copies" },
    packageZip: { method: "GET", template: "/projects/{project_id}/package" },
    ratingSummary: { method: "GET", template: "/projects/{project_id}/rating" },
    setRating: { method: "PUT", template: "/projects/{project_id}/rating" },
    clearRating: { method: "DELETE", template: "/projects/{project_id}/rating" },
    events: { method: "GET", template: "/projects/{project_id}/events" },
    folder: { method: "GET", template: "/folders/{folder_id}" },
    searchAssets: { method: "GET", template: "/assets" },
};
export function endpointPath(name, params = {}) {
    const spec = ENDPOINTS[name];
    const filled = spec.template.replace(/\{(\w+)\}/g, (_, key) => {
        const value = params[key];
        if (value === undefined) {
            throw new Error(`missing path parameter ${key} for ${name}`);
        }
        return encodeURIComponent(value);
    });
    return API_PREFIX + filled;
}
// --- client --------------------------------------------------------------------
export class ApiError extends Error {
    code;
    status;
    constructor(code, message, status) {
        super(message);
        this.code = code;
        this.status = status;
        this.name = "ApiError";
    }
}
export class Client {
    base;
    token;
    onAuthFailure;
    constructor(base, token, onAuthFailure = null) {
        this.base = base;
        this.token = token;
        this.onAuthFailure = onAuthFailure;
    }
    url(name, opts = {}) {
        let url = this.base + endpointPath(name, opts.params);
        if (opts.query && Object.keys(opts.query).length > 0) {
            const encoded = new URLSearchParams(opts.query).toString();
            url += `?${encoded}`;
        }
        return url;
    }
    headers(withBody) {
        const headers = {};
        if (this.token !== null)
            headers["Authorization"] = `Bearer ${this.token}`;
        if (withBody)
            headers["Content-Type"] = "application/json";
        return headers;
    }
    async raw(name, opts) {
        const spec = ENDPOINTS[name];
        const response = await fetch(this.url(name, opts), {
            method: spec.method,
            headers: this.headers(opts.body !== undefined),
            body: opts.body !== undefined ? JSON.stringify(opts.body) : undefined,
        });
        if (!response.ok) {
            let code = "Unknown";
            let message = `request failed with status ${response.status}`;
            try {
                const payload = (await response.json());
                code = payload.error?.code ?? code;
                message = payload.error?.message ?? message;
            }
            catch {
                // non-JSON error body; keep the generic message
            }
            if (response.status === 401 && this.onAuthFailure !== null) {
                this.onAuthFailure();
            }
            throw new ApiError(code, message, response.status);
        }
        return response;
    }
    async request(name, opts = {}) {
        const response = await this.raw(name, opts);
        const totalHeader = response.headers.get("X-Total-Count");
        const total = totalHeader === null ? null : Number(totalHeader);
        if (response.status === 204) {
            return { body: undefined, total };
        }
        return { body: (await response.json()), total };
    }
    /** Fetch binary content (the package endpoint) with auth headers. */
    async requestBlob(name, opts = {}) {
        const response = await this.raw(name, opts);
        return response.blob();
    }
}
