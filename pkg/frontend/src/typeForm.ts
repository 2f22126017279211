/** Sensor type form state: property rows with optional accuracy/frequency. */

import { SLUG_RE, IRI_RE, slugify } from "./types.js";
import type { CapabilityJson, SensorTypeJson, Violation } from "./types.js";

export interface PropertyRow {
  iri: string;
  label: string;
  accuracyValue: string; // raw input text; empty means "no accuracy"
  accuracyUnit: string;
  frequencyValue: string;
  frequencyUnit: string;
}

export interface TypeFormState {
  id: string;
  idTouched: boolean; // stop deriving id from name once the user edits it
  name: string;
  rows: PropertyRow[];
  dirty: boolean;
  serverViolations: Violation[];
}

export function emptyPropertyRow(): PropertyRow {
  return { iri: "", label: "", accuracyValue: "", accuracyUnit: "", frequencyValue: "", frequencyUnit: "" };
}

export function emptyTypeForm(): TypeFormState {
  return { id: "", idTouched: false, name: "", rows: [emptyPropertyRow()], dirty: false, serverViolations: [] };
}

export function setName(state: TypeFormState, name: string): TypeFormState {
  return {
    ...state,
    name,
    id: state.idTouched ? state.id : slugify(name),
    dirty: true,
    serverViolations: [],
  };
}

export function setId(state: TypeFormState, id: string): TypeFormState {
  return { ...state, id, idTouched: true, dirty: true, serverViolations: [] };
}

export function addRow(state: TypeFormState): TypeFormState {
  return { ...state, rows: [...state.rows, emptyPropertyRow()], dirty: true, serverViolations: [] };
}

export function removeRow(state: TypeFormState, index: number): TypeFormState {
  return { ...state, rows: state.rows.filter((_, i) => i !== index), dirty: true, serverViolations: [] };
}

export function updateRow(state: TypeFormState, index: number, patch: Partial<PropertyRow>): TypeFormState {
  const rows = state.rows.map((row, i) => (i === index ? { ...row, ...patch } : row));
  return { ...state, rows, dirty: true, serverViolations: [] };
}

export function setServerViolations(state: TypeFormState, violations: Violation[]): TypeFormState {
  return { ...state, serverViolations: violations };
}

function parseNumber(text: string): number | null {
  if (!text.trim()) return null;
  const value = Number(text);
  return Number.isFinite(value) ? value : null;
}

/** Client-side checks mirroring the server's violation codes. */
export function validateTypeForm(state: TypeFormState): Violation[] {
  const violations: Violation[] = [];
  if (!SLUG_RE.test(state.id)) {
    violations.push({ code: "BAD_SLUG", message: `id must match [a-z0-9-]+, got '${state.id}'` });
  }
  const filled = state.rows.filter((row) => row.iri.trim() !== "");
  if (filled.length === 0) {
    violations.push({ code: "EMPTY_OBSERVES", message: "at least one observed property is required" });
  }
  const seen = new Set<string>();
  const seenLocal = new Set<string>();
  for (const row of filled) {
    const iri = row.iri.trim();
    if (!IRI_RE.test(iri)) {
      violations.push({ code: "BAD_SHAPE", message: `'${iri}' is not an absolute IRI` });
      continue;
    }
    if (seen.has(iri)) {
      violations.push({ code: "DUP_PROPERTY", message: `property listed twice: ${iri}` });
    }
    seen.add(iri);
    const local = slugify(iri.split(/[#/]/).pop() ?? "");
    if (local && seenLocal.has(local)) {
      violations.push({ code: "DUP_PROPERTY", message: `property names collide: ${local}` });
    }
    seenLocal.add(local);
    const accuracy = parseNumber(row.accuracyValue);
    if (row.accuracyValue.trim() && (accuracy === null || accuracy < 0)) {
      violations.push({ code: "NEG_ACCURACY", message: "accuracy must be a number >= 0" });
    }
    const frequency = parseNumber(row.frequencyValue);
    if (row.frequencyValue.trim() && (frequency === null || frequency <= 0)) {
      violations.push({ code: "NONPOS_FREQUENCY", message: "frequency must be a number > 0" });
    }
  }
  return violations;
}

/** Register is enabled once there is a property row and no client-side violation. */
export function canRegister(state: TypeFormState): boolean {
  return validateTypeForm(state).length === 0;
}

export function typePayload(state: TypeFormState): SensorTypeJson {
  const filled = state.rows.filter((row) => row.iri.trim() !== "");
  const capabilities: CapabilityJson[] = [];
  for (const row of filled) {
    const accuracy = parseNumber(row.accuracyValue);
    const frequency = parseNumber(row.frequencyValue);
    if (accuracy === null && frequency === null) continue;
    const capability: CapabilityJson = { property: row.iri.trim() };
    if (accuracy !== null) capability.accuracy = { value: accuracy, unit: row.accuracyUnit.trim() };
    if (frequency !== null) capability.frequency = { value: frequency, unit: row.frequencyUnit.trim() };
    capabilities.push(capability);
  }
  return {
    id: state.id,
    name: state.name,
    observes: filled.map((row) => {
      const label = row.label.trim();
      return label ? { iri: row.iri.trim(), label } : { iri: row.iri.trim() };
    }),
    capabilities,
  };
}
