/** App shell: a banner for service errors, a nav between the two views,
 * and wiring for the article id the curator is working on. */

import { ApiClient } from "./api.js";
import { DictionaryView } from "./views/dictionary.js";
import { DisambiguationView } from "./views/disambiguation.js";

export function mountApp(root: HTMLElement, api: ApiClient = new ApiClient()): void {
  root.replaceChildren();

  const banner = document.createElement("div");
  banner.className = "banner hidden";
  const showError = (message: string) => {
    banner.textContent = `${message} — retry when the service is back.`;
    banner.classList.remove("hidden");
  };
  const clearError = () => banner.classList.add("hidden");

  const nav = document.createElement("nav");
  nav.className = "topnav";
  const main = document.createElement("main");
  root.append(banner, nav, main);

  const articleInput = document.createElement("input");
  articleInput.placeholder = "article id";
  articleInput.className = "article-id";

  const dictButton = document.createElement("button");
  dictButton.textContent = "Dictionary review";
  dictButton.addEventListener("click", () => {
    clearError();
    void new DictionaryView(api, main, showError).render();
  });

  const featureButton = document.createElement("button");
  featureButton.textContent = "Disambiguate (per feature)";
  featureButton.addEventListener("click", () => {
    clearError();
    void new DisambiguationView(api, main, articleInput.value, "per_feature", showError).start();
  });

  const referenceButton = document.createElement("button");
  referenceButton.textContent = "Disambiguate (per reference)";
  referenceButton.addEventListener("click", () => {
    clearError();
    void new DisambiguationView(api, main, articleInput.value, "per_reference", showError).start();
  });

  nav.append(dictButton, articleInput, featureButton, referenceButton);
  void new DictionaryView(api, main, showError).render();
}

const rootEl = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootEl) {
  mountApp(rootEl);
}
