/** Typed access to the registry API.
 *
 * Every network call goes through the ENDPOINTS table below; the contract
 * test checks that table against the server's route list, so the client
 * cannot quietly grow a request the service does not document.
 */

export const API_PREFIX = "/api/v1";

export type HttpMethod = "GET" | "POST" | "PUT" | "PATCH" | "DELETE";

export interface EndpointSpec {
  method: HttpMethod;
  template: string;
}

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
} as const satisfies Record<string, EndpointSpec>;

export type EndpointName = keyof typeof ENDPOINTS;

export function endpointPath(
  name: EndpointName,
  params: Record<string, string> = {},
): string {
  const spec: EndpointSpec = ENDPOINTS[name];
  const filled = spec.template.replace(/\{(\w+)\}/g, (_, key: string) => {
    const value = params[key];
    if (value === undefined) {
      throw new Error(`missing path parameter ${key} for ${name}`);
    }
    return encodeURIComponent(value);
  });
  return API_PREFIX + filled;
}

// --- wire shapes -------------------------------------------------------------

export interface User {
  id: string;
  email: string;
  display_name: string;
  created_at: string;
}

export interface Score {
  ups: number;
  downs: number;
  net: number;
}

export interface Project {
  id: string;
  owner: string;
  name: string;
  description: string;
  tags: string[];
  visibility: "Public" | "Private";
  version: number;
  copied_from: {
    project_id: string;
    source_version: number;
    source_name: string;
  } | null;
  created_at: string;
  updated_at: string;
}

export interface BrowseRow extends Project {
  score: Score;
}

export interface RootRef {
  id: string;
  kind: string;
  name: string;
}

export interface ProjectDetail extends Project {
  score: Score;
  roots: RootRef[];
  provenance?: {
    project_id: string;
    source_version: number;
    source_name: string;
    origin_available: boolean;
  };
}

export interface FolderInfo {
  id: string;
  project: string;
  parent: string | null;
  kind: string;
  name: string;
  path?: string;
}

export interface ArtifactInfo {
  id: string;
  folder: string;
  asset: string;
  selector: { type: string; [key: string]: unknown };
  display_name: string;
  added_by: string;
  added_at: string;
}

export interface AssetInfo {
  id: string;
  size_bytes: number;
  media_type: string;
  original_filename: string;
  uploader: string;
  tags: string[];
  created_at: string;
  refcount: number;
}

export interface FolderListing {
  folder: FolderInfo;
  artifacts: ArtifactInfo[];
  subfolders: FolderInfo[];
}

export interface EventRow {
  seq: number;
  project: string;
  actor: string;
  actor_name: string | null;
  action: string;
  target: string;
  at: string;
}

export interface RatingSummary {
  ups: number;
  downs: number;
  net: number;
  mine: "up" | "down" | null;
  eligible: boolean;
}

export interface ProjectHit {
  kind: "project";
  id: string;
  score: number;
  matched_fields: string[];
  project: Project;
}

export interface AssetHit {
  kind: "asset";
  id: string;
  score: number;
  matched_fields: string[];
  asset: AssetInfo;
}

export interface Session {
  token: string;
  user: User;
}

// --- client --------------------------------------------------------------------

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface RequestOptions {
  params?: Record<string, string>;
  query?: Record<string, string>;
  body?: unknown;
}

export interface ApiResponse<T> {
  body: T;
  total: number | null;
}

export class Client {
  constructor(
    private base: string,
    private token: string | null,
    private onAuthFailure: (() => void) | null = null,
  ) {}

  url(name: EndpointName, opts: RequestOptions = {}): string {
    let url = this.base + endpointPath(name, opts.params);
    if (opts.query && Object.keys(opts.query).length > 0) {
      const encoded = new URLSearchParams(opts.query).toString();
      url += `?${encoded}`;
    }
    return url;
  }

  private headers(withBody: boolean): Record<string, string> {
    const headers: Record<string, string> = {};
    if (this.token !== null) headers["Authorization"] = `Bearer ${this.token}`;
    if (withBody) headers["Content-Type"] = "application/json";
    return headers;
  }

  private async raw(name: EndpointName, opts: RequestOptions): Promise<Response> {
    const spec: EndpointSpec = ENDPOINTS[name];
    const response = await fetch(this.url(name, opts), {
      method: spec.method,
      headers: this.headers(opts.body !== undefined),
      body: opts.body !== undefined ? JSON.stringify(opts.body) : undefined,
    });
    if (!response.ok) {
      let code = "Unknown";
      let message = `request failed with status ${response.status}`;
      try {
        const payload = (await response.json()) as {
          error?: { code?: string; message?: string };
        };
        code = payload.error?.code ?? code;
        message = payload.error?.message ?? message;
      } catch {
        // non-JSON error body; keep the generic message
      }
      if (response.status === 401 && this.onAuthFailure !== null) {
        this.onAuthFailure();
      }
      throw new ApiError(code, message, response.status);
    }
    return response;
  }

  async request<T>(name: EndpointName, opts: RequestOptions = {}): Promise<ApiResponse<T>> {
    const response = await this.raw(name, opts);
    const totalHeader = response.headers.get("X-Total-Count");
    const total = totalHeader === null ? null : Number(totalHeader);
    if (response.status === 204) {
      return { body: undefined as T, total };
    }
    return { body: (await response.json()) as T, total };
  }

  /** Fetch binary content (the package endpoint) with auth headers. */
  async requestBlob(name: EndpointName, opts: RequestOptions = {}): Promise<Blob> {
    const response = await this.raw(name, opts);
    return response.blob();
  }
}
