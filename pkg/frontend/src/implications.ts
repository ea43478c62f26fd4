// Implication listing pane.  Rows some object witnesses are blue,
// rows with no witness are red; the red remainder is hidden until
// asked for.

import { ApiClient, ImplicationRow } from "./api.js";

export function renderRule(row: ImplicationRow): HTMLElement {
  const div = document.createElement("div");
  div.className = "rule " + (row.support > 0 ? "blue" : "red");
  div.dataset.id = String(row.id);
  div.textContent = row.text;
  return div;
}

export class ImplicationsView {
  readonly root: HTMLElement;
  private showAll = false;

  constructor(private readonly api: ApiClient,
              private readonly name: string,
              private readonly onError: (message: string) => void) {
    this.root = document.createElement("div");
    this.root.className = "implications-view";
  }

  async refresh(): Promise<void> {
    let rows: ImplicationRow[];
    try {
      rows = await this.api.getImplications(this.name, this.showAll);
    } catch (err) {
      this.onError(err instanceof Error ? err.message : String(err));
      return;
    }
    this.root.textContent = "";

    const toggle = document.createElement("label");
    toggle.className = "show-all";
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = this.showAll;
    box.addEventListener("change", () => {
      this.showAll = box.checked;
      void this.refresh();
    });
    toggle.appendChild(box);
    toggle.appendChild(
      document.createTextNode(" include rules without witnesses"));
    this.root.appendChild(toggle);

    const list = document.createElement("div");
    list.className = "rule-list";
    if (rows.length === 0) {
      const empty = document.createElement("p");
      empty.textContent = "No implications.";
      list.appendChild(empty);
    }
    for (const row of rows) {
      list.appendChild(renderRule(row));
    }
    this.root.appendChild(list);
  }
}
