/** Payload shapes of the JSON API. The UI renders these verbatim and
 * performs no transformation logic of its own. */

export type Side = "A" | "B";

export interface SlotView {
  index: number;
  type: string;
  display: string;
  error: boolean;
}

export interface DifferenceEntry {
  index: number;
  text: string;
  edit: Record<string, unknown>;
  dependsOn: number | null;
  conflictsWith: number | null;
}

export interface SideView {
  document: SlotView[];
  differences: DifferenceEntry[];
}

export interface StateView {
  agreement: SlotView[];
  a: SideView;
  b: SideView;
}

export function isStateView(value: unknown): value is StateView {
  if (typeof value !== "object" || value === null) return false;
  const v = value as Record<string, unknown>;
  return (
    Array.isArray(v.agreement) &&
    isSideView(v.a) &&
    isSideView(v.b)
  );
}

function isSideView(value: unknown): value is SideView {
  if (typeof value !== "object" || value === null) return false;
  const v = value as Record<string, unknown>;
  return Array.isArray(v.document) && Array.isArray(v.differences);
}
