// Attribute exploration dialog.  Poses one question at a time; the
// user confirms it or supplies a counterexample object.  When the
// loop finishes, the confirmed rules are listed and the enlarged
// context can be saved under a new name.

import { ApiClient, ApiError, ExploreState, ViolationDetail } from "./api.js";
import { renderRule } from "./implications.js";

function isViolation(detail: unknown): detail is ViolationDetail {
  return typeof detail === "object" && detail !== null && "violated" in detail;
}

export class ExplorationDialog {
  readonly root: HTMLElement;
  state: ExploreState | null = null;
  private chain: Promise<void> = Promise.resolve();

  constructor(private readonly api: ApiClient,
              private readonly onClose: () => void) {
    this.root = document.createElement("div");
    this.root.className = "explore-overlay";
    this.root.hidden = true;
  }

  settle(): Promise<void> {
    return this.chain;
  }

  open(contextName: string): void {
    this.root.hidden = false;
    this.enqueue(async () => {
      this.state = await this.api.exploreStart(contextName);
      this.render();
    });
  }

  close(): void {
    this.root.hidden = true;
    this.state = null;
    this.onClose();
  }

  private enqueue(job: () => Promise<void>): void {
    this.chain = this.chain.then(job).catch(err => this.showError(err));
  }

  private showError(err: unknown): void {
    const box = this.root.querySelector(".explore-error");
    if (!box) return;
    if (err instanceof ApiError && isViolation(err.detail)) {
      const v = err.detail.violated;
      box.textContent = `${err.detail.error} `
        + `(${v.premise.join(", ")} ==> ${v.conclusion.join(", ")})`;
    } else {
      box.textContent = err instanceof Error ? err.message : String(err);
    }
  }

  private render(): void {
    const state = this.state;
    this.root.textContent = "";
    if (!state) return;

    const panel = document.createElement("div");
    panel.className = "explore-panel";

    const head = document.createElement("div");
    head.className = "explore-head";
    const title = document.createElement("strong");
    title.textContent = "Attribute exploration";
    head.appendChild(title);
    const closeBtn = document.createElement("button");
    closeBtn.className = "explore-close";
    closeBtn.textContent = "Close";
    closeBtn.addEventListener("click", () => this.close());
    head.appendChild(closeBtn);
    panel.appendChild(head);

    const error = document.createElement("p");
    error.className = "explore-error";
    panel.appendChild(error);

    if (state.finished) {
      this.renderFinished(panel);
    } else {
      this.renderQuestion(panel);
    }
    this.root.appendChild(panel);
  }

  private renderQuestion(panel: HTMLElement): void {
    const state = this.state!;
    const q = state.question!;
    const question = document.createElement("p");
    question.className = "explore-question";
    const premise = q.premise.length ? q.premise.join(", ") : "(anything)";
    question.textContent = `Does ${premise} imply ${q.conclusion.join(", ")}?`;
    panel.appendChild(question);

    const acceptBtn = document.createElement("button");
    acceptBtn.className = "explore-accept";
    acceptBtn.textContent = "Yes, always";
    acceptBtn.addEventListener("click", () => {
      this.enqueue(async () => {
        this.state = await this.api.exploreAccept(this.state!.session);
        this.render();
      });
    });
    panel.appendChild(acceptBtn);

    const form = document.createElement("div");
    form.className = "counterexample-form";
    const label = document.createElement("p");
    label.textContent = "No: name an object that breaks it";
    form.appendChild(label);
    const nameInput = document.createElement("input");
    nameInput.className = "counterexample-name";
    nameInput.placeholder = "object name";
    form.appendChild(nameInput);

    const boxes: HTMLInputElement[] = [];
    state.context.attributes.forEach((attr, j) => {
      const wrap = document.createElement("label");
      wrap.className = "counterexample-attr";
      const box = document.createElement("input");
      box.type = "checkbox";
      box.dataset.attrIndex = String(j);
      boxes.push(box);
      wrap.appendChild(box);
      wrap.appendChild(document.createTextNode(" " + attr));
      form.appendChild(wrap);
    });

    const submit = document.createElement("button");
    submit.className = "counterexample-submit";
    submit.textContent = "Add counterexample";
    submit.addEventListener("click", () => {
      const attrs = boxes.filter(b => b.checked)
        .map(b => Number(b.dataset.attrIndex));
      const objectName = nameInput.value.trim();
      this.enqueue(async () => {
        this.state = await this.api.exploreCounterexample(
          this.state!.session, objectName, attrs);
        this.render();
      });
    });
    form.appendChild(submit);
    panel.appendChild(form);

    if (state.accepted.length > 0) {
      const sofar = document.createElement("div");
      sofar.className = "accepted-so-far";
      for (const row of state.accepted) {
        sofar.appendChild(renderRule(row));
      }
      panel.appendChild(sofar);
    }
  }

  private renderFinished(panel: HTMLElement): void {
    const state = this.state!;
    const done = document.createElement("p");
    done.className = "explore-finished";
    done.textContent = `Exploration finished with `
      + `${state.context.objects.length} objects.`;
    panel.appendChild(done);

    const list = document.createElement("div");
    list.className = "final-rules";
    for (const row of state.accepted) {
      list.appendChild(renderRule(row));
    }
    panel.appendChild(list);

    const saveWrap = document.createElement("div");
    saveWrap.className = "save-form";
    const nameInput = document.createElement("input");
    nameInput.className = "save-name";
    nameInput.placeholder = "save context as";
    saveWrap.appendChild(nameInput);
    const saveBtn = document.createElement("button");
    saveBtn.className = "save-submit";
    saveBtn.textContent = "Save";
    saveBtn.addEventListener("click", () => {
      const saveAs = nameInput.value.trim();
      this.enqueue(async () => {
        await this.api.exploreSave(this.state!.session, saveAs);
        const note = this.root.querySelector(".explore-error");
        if (note) note.textContent = `Saved as ${saveAs}.`;
      });
    });
    saveWrap.appendChild(saveBtn);
    panel.appendChild(saveWrap);
  }
}
