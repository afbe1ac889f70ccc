/** M2 view: step through references (5 cards each) or feature groups
 * (6 cards each) and record one decision per item. The view renders exactly
 * the candidates the service returned — never more, never reordered. */

import { ApiClient, Candidate, Reference, ServiceError, Session } from "../api.js";
import { highlightSentence } from "../highlight.js";

function card(
  candidate: Candidate,
  scoreLabel: string,
  onSelect: (doi: string) => void,
): HTMLElement {
  const el = document.createElement("article");
  el.className = "candidate-card";
  el.dataset.doi = candidate.doi;
  const title = document.createElement("h4");
  title.textContent = `#${candidate.rank} ${candidate.title}`;
  const meta = document.createElement("p");
  meta.textContent = `${candidate.doi} — ${scoreLabel} ${candidate.score}`;
  const button = document.createElement("button");
  button.textContent = "this dataset";
  button.className = "select";
  button.addEventListener("click", () => onSelect(candidate.doi));
  el.append(title, meta, button);
  return el;
}

export class DisambiguationView {
  private session: Session | null = null;
  private decided = new Set<string>();
  private renderGeneration = 0;

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
    private articleId: string,
    // per_feature is the default: articles mention few distinct datasets,
    // so grouping by feature is the faster path for the curator
    private workflow: Session["workflow"] = "per_feature",
    private onError: (message: string) => void = () => {},
  ) {}

  async start(): Promise<void> {
    try {
      this.session = await this.api.createSession(this.articleId, this.workflow);
    } catch (err) {
      this.onError(`service unreachable: ${String(err)}`);
      return;
    }
    this.decided = new Set(
      this.session.items.filter((i) => !this.session!.pending.includes(i)),
    );
    await this.render();
  }

  private progress(): HTMLElement {
    const el = document.createElement("p");
    el.className = "progress";
    const total = this.session?.items.length ?? 0;
    el.textContent = `${this.decided.size} of ${total} decided`;
    return el;
  }

  private exportBar(): HTMLElement {
    const el = document.createElement("nav");
    el.className = "export-bar";
    const done =
      this.session !== null && this.decided.size === this.session.items.length;
    for (const format of ["nt", "ttl", "json"] as const) {
      const a = document.createElement("a");
      a.textContent = `download ${format}`;
      a.className = `export export-${format}`;
      if (done) {
        a.href = this.api.exportUrl(this.articleId, format);
      } else {
        a.setAttribute("aria-disabled", "true");
      }
      el.append(a);
    }
    return el;
  }

  async render(): Promise<void> {
    if (!this.session) return;
    // Build off-DOM and commit once: a decision mid-render triggers a new
    // render, and only the latest generation may touch the root.
    const generation = ++this.renderGeneration;
    const fragment = document.createDocumentFragment();
    fragment.append(this.progress());
    try {
      if (this.workflow === "per_reference") {
        await this.renderPerReference(fragment);
      } else {
        await this.renderPerFeature(fragment);
      }
    } catch (err) {
      this.onError(`service unreachable: ${String(err)}`);
      return;
    }
    fragment.append(this.exportBar());
    if (generation === this.renderGeneration) {
      this.root.replaceChildren(fragment);
    }
  }

  private async renderPerReference(target: DocumentFragment): Promise<void> {
    const { references } = await this.api.getReferences(this.articleId);
    for (const ref of references) {
      const item = `ref:${ref.index}`;
      const section = this.itemSection(item, ref);
      const { candidates } = await this.api.getCandidates(this.articleId, ref.index);
      this.appendCards(section, item, candidates, "score");
      target.append(section);
    }
  }

  private async renderPerFeature(target: DocumentFragment): Promise<void> {
    const { features } = await this.api.getFeatures(this.articleId);
    for (const group of features) {
      const item = `feature:${group.feature.kind}:${group.feature.text}`;
      const section = this.itemSection(item, null, group.feature.text);
      this.appendCards(section, item, group.candidates, "seen in references:");
      target.append(section);
    }
  }

  private itemSection(item: string, ref: Reference | null, label?: string): HTMLElement {
    const section = document.createElement("section");
    section.className = "review-item" + (this.decided.has(item) ? " decided" : "");
    section.dataset.item = item;
    const h = document.createElement("h3");
    if (ref) {
      h.append(highlightSentence(ref.sentence, ref.segment, ref.feature.text));
    } else {
      h.textContent = label ?? item;
    }
    const reject = document.createElement("button");
    reject.textContent = "no dataset reference";
    reject.className = "reject";
    reject.addEventListener("click", () => void this.decide(item, null, true));
    section.append(h, reject);
    return section;
  }

  private appendCards(
    section: HTMLElement,
    item: string,
    candidates: Candidate[],
    scoreLabel: string,
  ): void {
    const list = document.createElement("div");
    list.className = "cards";
    for (const candidate of candidates) {
      list.append(card(candidate, scoreLabel, (doi) => void this.decide(item, doi)));
    }
    section.append(list);
  }

  private async decide(item: string, doi: string | null, reject = false): Promise<void> {
    if (!this.session) return;
    try {
      await this.api.postDecision(this.session.session_id, item, doi, reject);
    } catch (err) {
      if (err instanceof ServiceError && err.status === 409) {
        // already decided elsewhere: lock the card group instead of erroring
        this.decided.add(item);
        await this.render();
        return;
      }
      this.onError(`decision failed: ${String(err)}`);
      return;
    }
    this.decided.add(item);
    await this.render();
  }
}
