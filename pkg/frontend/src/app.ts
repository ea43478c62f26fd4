// Application shell: context picker, tab bar, status line, and the
// three panes plus the exploration dialog.

import { ApiClient, blankTable } from "./api.js";
import { CrossTableEditor } from "./table.js";
import { ExplorationDialog } from "./explore.js";
import { ImplicationsView } from "./implications.js";
import { LatticeView } from "./lattice.js";

export type TabName = "context" | "lattice" | "implications";

export class App {
  private selected: string | null = null;
  private tab: TabName = "context";
  editor: CrossTableEditor | null = null;
  lattice: LatticeView | null = null;
  implications: ImplicationsView | null = null;
  dialog: ExplorationDialog;
  private chain: Promise<void> = Promise.resolve();

  private picker!: HTMLSelectElement;
  private status!: HTMLElement;
  private panel!: HTMLElement;

  constructor(private readonly root: HTMLElement,
              private readonly api: ApiClient) {
    this.dialog = new ExplorationDialog(api, () => {
      this.enqueue(() => this.refresh());
    });
  }

  settle(): Promise<void> {
    const parts = [this.chain, this.dialog.settle()];
    if (this.editor) parts.push(this.editor.settle());
    if (this.lattice) parts.push(this.lattice.settle());
    return Promise.all(parts).then(() => undefined);
  }

  private enqueue(job: () => Promise<void>): void {
    this.chain = this.chain.then(job).catch(err => {
      this.setStatus(err instanceof Error ? err.message : String(err));
    });
  }

  async init(): Promise<void> {
    this.root.textContent = "";
    this.root.appendChild(this.buildHeader());
    this.root.appendChild(this.buildTabs());
    this.status = document.createElement("p");
    this.status.className = "status-line";
    this.root.appendChild(this.status);
    this.panel = document.createElement("div");
    this.panel.className = "panel";
    this.root.appendChild(this.panel);
    this.root.appendChild(this.dialog.root);
    await this.reloadContextList();
  }

  setStatus(text: string): void {
    this.status.textContent = text;
  }

  private buildHeader(): HTMLElement {
    const header = document.createElement("header");
    const title = document.createElement("h1");
    title.textContent = "fcakit";
    header.appendChild(title);

    this.picker = document.createElement("select");
    this.picker.className = "context-picker";
    this.picker.addEventListener("change", () => {
      this.selected = this.picker.value || null;
      this.enqueue(() => this.refresh());
    });
    header.appendChild(this.picker);

    const form = document.createElement("span");
    form.className = "new-context-form";
    const name = document.createElement("input");
    name.className = "new-name";
    name.placeholder = "new context name";
    const rows = document.createElement("input");
    rows.className = "new-rows";
    rows.type = "number";
    rows.value = "9";
    const cols = document.createElement("input");
    cols.className = "new-cols";
    cols.type = "number";
    cols.value = "7";
    const create = document.createElement("button");
    create.className = "new-create";
    create.textContent = "Create";
    create.addEventListener("click", () => {
      const contextName = name.value.trim();
      const table = blankTable(Number(rows.value), Number(cols.value));
      this.enqueue(async () => {
        await this.api.putContext(contextName, table, "create");
        this.selected = contextName;
        await this.reloadContextList();
      });
    });
    form.append(name, rows, cols, create);
    header.appendChild(form);

    const explore = document.createElement("button");
    explore.className = "explore-open";
    explore.textContent = "Explore";
    explore.addEventListener("click", () => {
      if (this.selected) this.dialog.open(this.selected);
    });
    header.appendChild(explore);
    return header;
  }

  private buildTabs(): HTMLElement {
    const bar = document.createElement("nav");
    bar.className = "tab-bar";
    const names: TabName[] = ["context", "lattice", "implications"];
    for (const tabName of names) {
      const btn = document.createElement("button");
      btn.className = `tab tab-${tabName}`;
      btn.textContent = tabName;
      btn.addEventListener("click", () => {
        this.tab = tabName;
        this.enqueue(() => this.refresh());
      });
      bar.appendChild(btn);
    }
    return bar;
  }

  async reloadContextList(): Promise<void> {
    const contexts = await this.api.listContexts();
    this.picker.textContent = "";
    const placeholder = document.createElement("option");
    placeholder.value = "";
    placeholder.textContent = "(pick a context)";
    this.picker.appendChild(placeholder);
    for (const ctx of contexts) {
      const option = document.createElement("option");
      option.value = ctx.name;
      option.textContent = ctx.name;
      this.picker.appendChild(option);
    }
    if (this.selected && contexts.some(c => c.name === this.selected)) {
      this.picker.value = this.selected;
    } else {
      this.selected = null;
    }
    await this.refresh();
  }

  async refresh(): Promise<void> {
    this.panel.textContent = "";
    this.editor = null;
    this.lattice = null;
    this.implications = null;
    for (const btn of this.root.querySelectorAll(".tab")) {
      btn.classList.toggle("active",
                           btn.classList.contains(`tab-${this.tab}`));
    }
    const name = this.selected;
    if (!name) {
      const hint = document.createElement("p");
      hint.className = "empty-hint";
      hint.textContent = "Create or pick a context to begin.";
      this.panel.appendChild(hint);
      return;
    }

    if (this.tab === "context") {
      const table = await this.api.getContext(name);
      this.editor = new CrossTableEditor(
        this.api, name, table,
        n => this.setStatus(n === null ? "concepts: many" : `concepts: ${n}`),
        message => this.setStatus(message));
      this.panel.appendChild(this.editor.root);
      try {
        const scene = await this.api.getLattice(name);
        this.setStatus(`concepts: ${scene.concepts}`);
      } catch {
        this.setStatus("concepts: n/a");
      }
    } else if (this.tab === "lattice") {
      this.lattice = new LatticeView(this.api, name,
                                     message => this.setStatus(message));
      this.panel.appendChild(this.lattice.root);
      await this.lattice.refresh();
    } else {
      this.implications = new ImplicationsView(
        this.api, name, message => this.setStatus(message));
      this.panel.appendChild(this.implications.root);
      await this.implications.refresh();
    }
  }
}
