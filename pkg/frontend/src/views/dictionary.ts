/** M1 view: review the auto-extracted feature lists and maintain the
 * false-positive lists. Flagging an entry sends exactly one POST and the
 * view is re-rendered from the service's response state. */

import { ApiClient, DictionaryState } from "../api.js";

function entryList(
  heading: string,
  kind: "abbreviation" | "phrase",
  entries: string[],
  onFlag: (text: string, kind: string) => void,
): HTMLElement {
  const section = document.createElement("section");
  const h = document.createElement("h3");
  h.textContent = heading;
  section.append(h);
  const ul = document.createElement("ul");
  ul.className = `live-${kind}`;
  for (const text of entries) {
    const li = document.createElement("li");
    li.dataset.text = text;
    const span = document.createElement("span");
    span.textContent = text;
    const button = document.createElement("button");
    button.textContent = "flag as false positive";
    button.className = "flag";
    button.addEventListener("click", () => onFlag(text, kind));
    li.append(span, button);
    ul.append(li);
  }
  if (!entries.length) {
    const li = document.createElement("li");
    li.className = "empty-state";
    li.textContent = "nothing extracted";
    ul.append(li);
  }
  section.append(ul);
  return section;
}

function fpList(heading: string, cls: string, entries: string[]): HTMLElement {
  const section = document.createElement("section");
  const h = document.createElement("h3");
  h.textContent = heading;
  const ul = document.createElement("ul");
  ul.className = cls;
  for (const text of entries) {
    const li = document.createElement("li");
    li.dataset.text = text;
    li.textContent = text;
    ul.append(li);
  }
  section.append(h, ul);
  return section;
}

export class DictionaryView {
  constructor(
    private api: ApiClient,
    private root: HTMLElement,
    private onError: (message: string) => void = () => {},
  ) {}

  async render(): Promise<void> {
    let state: DictionaryState;
    try {
      state = await this.api.getDictionary();
    } catch (err) {
      this.onError(`service unreachable: ${String(err)}`);
      return;
    }
    this.root.replaceChildren();
    const flag = (text: string, kind: string) => void this.flag(text, kind);
    if (!state.abbreviations.length && !state.phrases.length) {
      const p = document.createElement("p");
      p.className = "empty-state";
      p.textContent = "The dictionary is empty — harvest a snapshot and build it first.";
      this.root.append(p);
    }
    this.root.append(
      entryList("Abbreviations", "abbreviation", state.abbreviations, flag),
      entryList("Phrases", "phrase", state.phrases, flag),
      fpList("False-positive abbreviations", "fp-abbreviation", state.fp_abbreviations),
      fpList("False-positive phrases", "fp-phrase", state.fp_phrases),
    );
  }

  private async flag(text: string, kind: string): Promise<void> {
    try {
      await this.api.flagFalsePositive(text, kind);
    } catch (err) {
      this.onError(`could not flag ${text}: ${String(err)}`);
      return;
    }
    await this.render(); // re-render from service state, no client-side bookkeeping
  }
}
