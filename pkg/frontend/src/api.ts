/** Typed client for the dataref review service. All UI mutations go through
 * exactly one of these calls; the UI keeps no hidden state of its own. */

export interface FeatureRef {
  text: string;
  kind: "abbreviation" | "phrase";
}

export interface Reference {
  index: number;
  sentence: string;
  span: [number, number];
  segment: string;
  segment_index: number;
  feature: FeatureRef;
}

export interface Candidate {
  doi: string;
  title: string;
  score: number;
  rank: number;
}

export interface FeatureGroup {
  feature: { kind: string; text: string };
  candidates: Candidate[];
}

export interface DictionaryState {
  abbreviations: string[];
  phrases: string[];
  fp_abbreviations: string[];
  fp_phrases: string[];
  base_terms: string[];
}

export interface Session {
  session_id: string;
  article_id: string;
  workflow: "per_reference" | "per_feature";
  items: string[];
  pending: string[];
}

export class ServiceError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, init);
  if (!resp.ok) {
    const body = await resp.text();
    throw new ServiceError(resp.status, body || resp.statusText);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  url(path: string): string {
    return this.base + path;
  }

  getDictionary(): Promise<DictionaryState> {
    return request(this.url("/dictionary"));
  }

  flagFalsePositive(text: string, kind: string): Promise<unknown> {
    return request(this.url("/dictionary/false-positives"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text, kind }),
    });
  }

  getReferences(articleId: string): Promise<{ references: Reference[] }> {
    return request(this.url(`/articles/${articleId}/references`));
  }

  getCandidates(articleId: string, n: number): Promise<{ segment: string; candidates: Candidate[] }> {
    return request(this.url(`/articles/${articleId}/references/${n}/candidates`));
  }

  getFeatures(articleId: string): Promise<{ features: FeatureGroup[] }> {
    return request(this.url(`/articles/${articleId}/features`));
  }

  createSession(articleId: string, workflow: Session["workflow"]): Promise<Session> {
    return request(this.url("/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ article_id: articleId, workflow }),
    });
  }

  postDecision(sessionId: string, item: string, doi: string | null, reject = false): Promise<{ pending: string[] }> {
    return request(this.url(`/sessions/${sessionId}/decisions`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ item, doi, reject }),
    });
  }

  undoDecision(sessionId: string, item: string): Promise<{ pending: string[] }> {
    return request(this.url(`/sessions/${sessionId}/undo`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ item }),
    });
  }

  exportUrl(articleId: string, format: "nt" | "ttl" | "json"): string {
    return this.url(`/articles/${articleId}/export?format=${format}`);
  }
}
