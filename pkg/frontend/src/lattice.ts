// Line-diagram view.  The scene arrives fully laid out from the
// service; this file only scales it to pixels, draws SVG, and turns
// node drags into stored positions.

import { ApiClient, Scene, SceneNode } from "./api.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const STEP = 90;
const MARGIN = 70;
const RADIUS = 8;
const LABEL_GAP = 14;

interface DragState {
  node: SceneNode;
  group: SVGGElement;
  startX: number;
  startY: number;
  moved: boolean;
}

export class LatticeView {
  readonly root: HTMLElement;
  private scene: Scene | null = null;
  private minX = 0;
  private minY = 0;
  private drag: DragState | null = null;
  private chain: Promise<void> = Promise.resolve();

  constructor(private readonly api: ApiClient,
              private readonly name: string,
              private readonly onError: (message: string) => void) {
    this.root = document.createElement("div");
    this.root.className = "lattice-view";
  }

  settle(): Promise<void> {
    return this.chain;
  }

  currentScene(): Scene | null {
    return this.scene;
  }

  async refresh(): Promise<void> {
    try {
      this.scene = await this.api.getLattice(this.name);
    } catch (err) {
      this.root.textContent = err instanceof Error ? err.message : String(err);
      this.scene = null;
      return;
    }
    this.draw();
  }

  private px(x: number): number {
    return (x - this.minX) * STEP + MARGIN;
  }

  private py(y: number): number {
    return (y - this.minY) * STEP + MARGIN;
  }

  private draw(): void {
    const scene = this.scene;
    if (!scene) return;
    const xs = scene.nodes.map(n => n.x);
    const ys = scene.nodes.map(n => n.y);
    this.minX = Math.min(...xs);
    this.minY = Math.min(...ys);
    const width = (Math.max(...xs) - this.minX) * STEP + 2 * MARGIN;
    const height = (Math.max(...ys) - this.minY) * STEP + 2 * MARGIN;

    this.root.textContent = "";
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(width));
    svg.setAttribute("height", String(height));
    svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    svg.setAttribute("class", "lattice-svg");

    for (const [child, parent] of scene.edges) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("class", "edge");
      line.setAttribute("x1", String(this.px(scene.nodes[parent].x)));
      line.setAttribute("y1", String(this.py(scene.nodes[parent].y)));
      line.setAttribute("x2", String(this.px(scene.nodes[child].x)));
      line.setAttribute("y2", String(this.py(scene.nodes[child].y)));
      svg.appendChild(line);
    }

    for (const node of scene.nodes) {
      svg.appendChild(this.drawNode(node));
    }

    this.root.appendChild(svg);
  }

  private drawNode(node: SceneNode): SVGGElement {
    const group = document.createElementNS(SVG_NS, "g") as SVGGElement;
    group.setAttribute("class", "node" + (node.pinned ? " pinned" : ""));
    group.setAttribute("data-index", String(node.index));
    group.setAttribute("data-intent-key", node.intent_key);
    const cx = this.px(node.x);
    const cy = this.py(node.y);

    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(cx));
    circle.setAttribute("cy", String(cy));
    circle.setAttribute("r", String(RADIUS));
    group.appendChild(circle);

    if (node.has_attribute_label) {
      const arc = document.createElementNS(SVG_NS, "path");
      arc.setAttribute("class", "attr-cap");
      arc.setAttribute(
        "d",
        `M ${cx - RADIUS} ${cy} A ${RADIUS} ${RADIUS} 0 0 1 ${cx + RADIUS} ${cy} Z`);
      group.appendChild(arc);
    }
    if (node.has_object_label) {
      const arc = document.createElementNS(SVG_NS, "path");
      arc.setAttribute("class", "obj-cap");
      arc.setAttribute(
        "d",
        `M ${cx + RADIUS} ${cy} A ${RADIUS} ${RADIUS} 0 0 1 ${cx - RADIUS} ${cy} Z`);
      group.appendChild(arc);
    }

    node.attribute_label_names.forEach((name, k) => {
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("class", "attr-label");
      text.setAttribute("x", String(cx));
      text.setAttribute("y", String(cy - RADIUS - 6 - LABEL_GAP * k));
      text.textContent = name;
      group.appendChild(text);
    });
    node.object_label_names.forEach((name, k) => {
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("class", "obj-label");
      text.setAttribute("x", String(cx));
      text.setAttribute("y", String(cy + RADIUS + 14 + LABEL_GAP * k));
      text.textContent = name;
      group.appendChild(text);
    });

    group.addEventListener("mousedown", ev => this.beginDrag(ev, node, group));
    return group;
  }

  private beginDrag(ev: MouseEvent, node: SceneNode, group: SVGGElement): void {
    ev.preventDefault();
    this.drag = {
      node, group,
      startX: ev.clientX, startY: ev.clientY,
      moved: false,
    };
    const onMove = (move: MouseEvent) => this.dragMove(move);
    const onUp = (up: MouseEvent) => {
      document.removeEventListener("mousemove", onMove);
      document.removeEventListener("mouseup", onUp);
      this.endDrag(up);
    };
    document.addEventListener("mousemove", onMove);
    document.addEventListener("mouseup", onUp);
  }

  private dragMove(ev: MouseEvent): void {
    const drag = this.drag;
    if (!drag) return;
    drag.moved = true;
    const dx = ev.clientX - drag.startX;
    const dy = ev.clientY - drag.startY;
    drag.group.setAttribute("transform", `translate(${dx} ${dy})`);
  }

  private endDrag(ev: MouseEvent): void {
    const drag = this.drag;
    this.drag = null;
    if (!drag || !drag.moved) return;
    const dx = (ev.clientX - drag.startX) / STEP;
    const dy = (ev.clientY - drag.startY) / STEP;
    const key = drag.node.intent_key;
    const x = drag.node.x + dx;
    const y = drag.node.y + dy;
    this.chain = this.chain
      .then(async () => {
        await this.api.postPositions(this.name, { [key]: { x, y } });
        await this.refresh();
      })
      .catch(err => {
        this.onError(err instanceof Error ? err.message : String(err));
      });
  }
}
