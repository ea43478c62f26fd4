// Editable cross table.  Cells toggle with mouse or keyboard; object
// and attribute names are plain text inputs.  Every change is sent to
// the service through a single queue so edits never race each other.

import { ApiClient, JsonTable } from "./api.js";

export class CrossTableEditor {
  readonly root: HTMLElement;
  private table: JsonTable;
  private chain: Promise<void> = Promise.resolve();

  constructor(private readonly api: ApiClient,
              private readonly name: string,
              table: JsonTable,
              private readonly onCount: (n: number | null) => void,
              private readonly onError: (message: string) => void) {
    this.table = structuredClone(table);
    this.root = document.createElement("div");
    this.root.className = "cross-table-wrap";
    this.render();
  }

  /** Resolves when every queued edit has been acknowledged. */
  settle(): Promise<void> {
    return this.chain;
  }

  current(): JsonTable {
    return structuredClone(this.table);
  }

  private enqueue(job: () => Promise<void>): void {
    this.chain = this.chain.then(job).catch(err => {
      this.onError(err instanceof Error ? err.message : String(err));
    });
  }

  private render(): void {
    this.root.textContent = "";
    const grid = document.createElement("table");
    grid.className = "cross-table";

    const head = document.createElement("tr");
    head.appendChild(document.createElement("th"));
    this.table.attributes.forEach((attr, j) => {
      const th = document.createElement("th");
      const input = document.createElement("input");
      input.className = "attr-name";
      input.value = attr;
      input.dataset.col = String(j);
      this.wireNameInput(input);
      th.appendChild(input);
      head.appendChild(th);
    });
    grid.appendChild(head);

    this.table.objects.forEach((obj, i) => {
      const tr = document.createElement("tr");
      const th = document.createElement("th");
      const input = document.createElement("input");
      input.className = "obj-name";
      input.value = obj;
      input.dataset.row = String(i);
      this.wireNameInput(input);
      th.appendChild(input);
      tr.appendChild(th);
      this.table.attributes.forEach((_, j) => {
        const td = document.createElement("td");
        td.className = "cell";
        td.tabIndex = 0;
        td.dataset.row = String(i);
        td.dataset.col = String(j);
        td.textContent = this.table.incidence[i][j] ? "×" : "";
        td.addEventListener("click", () => this.toggle(i, j));
        td.addEventListener("keydown", ev => this.cellKey(ev, i, j));
        tr.appendChild(td);
      });
      grid.appendChild(tr);
    });
    this.root.appendChild(grid);
  }

  private wireNameInput(input: HTMLInputElement): void {
    input.addEventListener("change", () => this.commitNames());
    input.addEventListener("keydown", ev => {
      if (ev.key !== "Enter") return;
      ev.preventDefault();
      this.commitNames();
      this.focusNextName(input);
    });
  }

  private focusNextName(input: HTMLInputElement): void {
    // Enter walks down the object column, or right along the attribute row
    if (input.dataset.row !== undefined) {
      const next = this.root.querySelector<HTMLInputElement>(
        `input.obj-name[data-row="${Number(input.dataset.row) + 1}"]`);
      next?.focus();
    } else {
      const next = this.root.querySelector<HTMLInputElement>(
        `input.attr-name[data-col="${Number(input.dataset.col) + 1}"]`);
      next?.focus();
    }
  }

  private commitNames(): void {
    const objects = Array.from(
      this.root.querySelectorAll<HTMLInputElement>("input.obj-name"),
      el => el.value);
    const attributes = Array.from(
      this.root.querySelectorAll<HTMLInputElement>("input.attr-name"),
      el => el.value);
    const before = this.table;
    if (objects.join("\n") === before.objects.join("\n")
        && attributes.join("\n") === before.attributes.join("\n")) {
      return;
    }
    this.table = { objects, attributes, incidence: before.incidence };
    this.enqueue(async () => {
      const stored = await this.api.putContext(this.name, this.table);
      this.onCount(stored.concepts);
    });
  }

  private toggle(i: number, j: number): void {
    const value = !this.table.incidence[i][j];
    this.table.incidence[i][j] = value;
    const td = this.root.querySelector<HTMLElement>(
      `td.cell[data-row="${i}"][data-col="${j}"]`);
    if (td) td.textContent = value ? "×" : "";
    this.enqueue(async () => {
      const result = await this.api.setCell(this.name, i, j, value);
      this.table = result.table;
      this.onCount(result.concepts);
    });
  }

  private cellKey(ev: KeyboardEvent, i: number, j: number): void {
    const moves: Record<string, [number, number]> = {
      ArrowUp: [-1, 0], ArrowDown: [1, 0],
      ArrowLeft: [0, -1], ArrowRight: [0, 1],
    };
    if (ev.key in moves) {
      ev.preventDefault();
      const [di, dj] = moves[ev.key];
      const target = this.root.querySelector<HTMLElement>(
        `td.cell[data-row="${i + di}"][data-col="${j + dj}"]`);
      target?.focus();
      return;
    }
    if (ev.key === "Enter" || ev.key === " " || ev.key.toLowerCase() === "x") {
      ev.preventDefault();
      this.toggle(i, j);
    }
  }
}
