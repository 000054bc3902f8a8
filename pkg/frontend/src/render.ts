/** Three-pane rendering: A document | agreement + paired difference
 * lists | B document. Pure DOM construction; all behaviour arrives via
 * the handlers object. */

import { DifferenceEntry, Side, SideView, SlotView, StateView } from "./types.js";

export interface Handlers {
  onMigrate(side: Side, index: number): void;
  onMerge(side: Side): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function documentTable(slots: SlotView[]): HTMLElement {
  const table = el("table", "document");
  if (slots.length === 0) {
    const caption = el("caption", "empty", "(empty document)");
    table.appendChild(caption);
    return table;
  }
  for (const slot of slots) {
    const row = el("tr", slot.error ? "slot slot-error" : "slot");
    row.appendChild(el("td", "slot-index", String(slot.index)));
    row.appendChild(el("td", "slot-type", slot.type));
    row.appendChild(el("td", "slot-value", slot.error ? "#err" : slot.display));
    table.appendChild(row);
  }
  return table;
}

/** A conflict pair gets exactly one badge. Mutual pairs (each entry
 * annotated with the other) are owned by the A-side entry; a one-sided
 * annotation keeps the badge on its own entry, and the peer is only
 * highlighted. */
function badgeOwners(state: StateView): Set<string> {
  const owners = new Set<string>();
  const peer = (side: Side, index: number): DifferenceEntry | undefined => {
    const list = side === "A" ? state.a.differences : state.b.differences;
    return list[index - 1];
  };
  for (const side of ["A", "B"] as Side[]) {
    const list = side === "A" ? state.a.differences : state.b.differences;
    const other: Side = side === "A" ? "B" : "A";
    for (const entry of list) {
      if (entry.conflictsWith === null) continue;
      const opposite = peer(other, entry.conflictsWith);
      const mutual = opposite?.conflictsWith === entry.index;
      if (!mutual || side === "A") owners.add(`${side}#${entry.index}`);
    }
  }
  return owners;
}

function differenceRow(
  side: Side,
  entry: DifferenceEntry,
  owners: Set<string>,
  handlers: Handlers,
): HTMLElement {
  const row = el("div", "difference");
  row.id = `diff-${side}-${entry.index}`;
  row.dataset.side = side;
  row.dataset.index = String(entry.index);

  row.appendChild(el("span", "difference-index", `${entry.index}.`));
  row.appendChild(el("code", "difference-text", entry.text));

  if (entry.dependsOn !== null) {
    const link = el(
      "a",
      "dependency-link",
      `needs #${entry.dependsOn}`,
    );
    link.href = `#diff-${side}-${entry.dependsOn}`;
    row.appendChild(link);
  }

  if (entry.conflictsWith !== null) {
    const other = side === "A" ? "B" : "A";
    if (owners.has(`${side}#${entry.index}`)) {
      row.appendChild(
        el("span", "badge-conflict", `conflicts with ${other}#${entry.conflictsWith}`),
      );
    } else {
      row.classList.add("conflict-peer");
    }
  }

  const button = el("button", "migrate", "migrate");
  button.addEventListener("click", () => handlers.onMigrate(side, entry.index));
  row.appendChild(button);
  return row;
}

function differenceColumn(
  side: Side,
  view: SideView,
  owners: Set<string>,
  handlers: Handlers,
): HTMLElement {
  const column = el("div", `diffs diffs-${side.toLowerCase()}`);
  column.appendChild(el("h3", undefined, `differences ${side}`));
  for (const entry of view.differences) {
    column.appendChild(differenceRow(side, entry, owners, handlers));
  }
  const merge = el("button", "merge-all", `merge all from ${side}`);
  merge.addEventListener("click", () => handlers.onMerge(side));
  column.appendChild(merge);
  return column;
}

function sidePane(label: Side, view: SideView): HTMLElement {
  const pane = el("section", `pane pane-${label.toLowerCase()}`);
  pane.appendChild(el("h2", undefined, `variant ${label}`));
  pane.appendChild(documentTable(view.document));
  return pane;
}

export function renderState(
  root: HTMLElement,
  state: StateView,
  handlers: Handlers,
): void {
  const panes = el("div", "panes");
  panes.appendChild(sidePane("A", state.a));

  const center = el("section", "pane pane-center");
  center.appendChild(el("h2", undefined, "agreement"));
  center.appendChild(documentTable(state.agreement));
  if (
    state.a.differences.length === 0 &&
    state.b.differences.length === 0
  ) {
    center.appendChild(el("p", "identical-notice", "variants identical"));
  } else {
    const owners = badgeOwners(state);
    const columns = el("div", "diff-columns");
    columns.appendChild(differenceColumn("A", state.a, owners, handlers));
    columns.appendChild(differenceColumn("B", state.b, owners, handlers));
    center.appendChild(columns);
  }
  panes.appendChild(center);

  panes.appendChild(sidePane("B", state.b));
  root.replaceChildren(panes);
}

export function renderErrorBanner(root: HTMLElement, message: string): void {
  root.replaceChildren(el("div", "error-banner", message));
}
