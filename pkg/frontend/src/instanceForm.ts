/** Sensor instance form state: binding rows are generated from, and locked
 * to, the selected type's property list. */

import { CUSTOM_UNIT, FIELD_NAME_RE, IRI_RE, SLUG_RE, UNIT_PRESETS, slugify } from "./types.js";
import type { SensorInstanceJson, SensorTypeJson, Violation } from "./types.js";

export interface BindingRow {
  property: string; // locked: the type's observed property IRI
  label: string;
  unitChoice: string; // a preset IRI or CUSTOM_UNIT
  customUnit: string;
  xgsnField: string;
}

export interface InstanceFormState {
  typeId: string | null;
  id: string;
  idTouched: boolean;
  name: string;
  owner: string;
  description: string;
  latitude: string;
  longitude: string;
  featureOfInterest: string;
  bindings: BindingRow[];
  dirty: boolean;
  serverViolations: Violation[];
}

export function emptyInstanceForm(): InstanceFormState {
  return {
    typeId: null,
    id: "",
    idTouched: false,
    name: "",
    owner: "",
    description: "",
    latitude: "",
    longitude: "",
    featureOfInterest: "",
    bindings: [],
    dirty: false,
    serverViolations: [],
  };
}

function defaultField(label: string, iri: string, index: number): string {
  const basis = (label || iri.split(/[#/]/).pop() || `field${index}`).toLowerCase();
  const cleaned = basis.replace(/[^a-z0-9_]+/g, "_").replace(/^_+|_+$/g, "");
  const name = cleaned && /^[a-z]/.test(cleaned) ? cleaned : `f_${cleaned || index}`;
  return name;
}

/** Selecting a type regenerates the binding rows, one per observed property. */
export function selectType(state: InstanceFormState, type: SensorTypeJson): InstanceFormState {
  return {
    ...state,
    typeId: type.id,
    bindings: type.observes.map((prop, index) => ({
      property: prop.iri,
      label: prop.label ?? "",
      unitChoice: UNIT_PRESETS[0].iri,
      customUnit: "",
      xgsnField: defaultField(prop.label ?? "", prop.iri, index),
    })),
    dirty: true,
    serverViolations: [],
  };
}

export function setField(
  state: InstanceFormState,
  field: "name" | "owner" | "description" | "latitude" | "longitude" | "featureOfInterest",
  value: string,
): InstanceFormState {
  const next = { ...state, [field]: value, dirty: true, serverViolations: [] };
  if (field === "name" && !state.idTouched) {
    next.id = slugify(value);
  }
  return next;
}

export function setId(state: InstanceFormState, id: string): InstanceFormState {
  return { ...state, id, idTouched: true, dirty: true, serverViolations: [] };
}

export function setLocation(state: InstanceFormState, lat: number, long: number): InstanceFormState {
  return {
    ...state,
    latitude: lat.toFixed(4),
    longitude: long.toFixed(4),
    dirty: true,
    serverViolations: [],
  };
}

/** Only the unit and field of a binding are editable; the property is locked. */
export function updateBinding(
  state: InstanceFormState,
  index: number,
  patch: Partial<Pick<BindingRow, "unitChoice" | "customUnit" | "xgsnField">>,
): InstanceFormState {
  const bindings = state.bindings.map((row, i) => (i === index ? { ...row, ...patch } : row));
  return { ...state, bindings, dirty: true, serverViolations: [] };
}

export function setServerViolations(state: InstanceFormState, violations: Violation[]): InstanceFormState {
  return { ...state, serverViolations: violations };
}

function chosenUnit(row: BindingRow): string {
  return row.unitChoice === CUSTOM_UNIT ? row.customUnit.trim() : row.unitChoice;
}

export function validateInstanceForm(state: InstanceFormState): Violation[] {
  const violations: Violation[] = [];
  if (state.typeId === null) {
    violations.push({ code: "UNKNOWN_TYPE", message: "select a sensor type first" });
  }
  if (!SLUG_RE.test(state.id)) {
    violations.push({ code: "BAD_SLUG", message: `id must match [a-z0-9-]+, got '${state.id}'` });
  }
  const lat = Number(state.latitude);
  if (!state.latitude.trim() || !Number.isFinite(lat) || lat < -90 || lat > 90) {
    violations.push({ code: "LAT_RANGE", message: "latitude must be within [-90, 90]" });
  }
  const long = Number(state.longitude);
  if (!state.longitude.trim() || !Number.isFinite(long) || long < -180 || long > 180) {
    violations.push({ code: "LON_RANGE", message: "longitude must be within [-180, 180]" });
  }
  const foi = state.featureOfInterest.trim();
  if (!foi || (!IRI_RE.test(foi) && !slugify(foi))) {
    violations.push({ code: "BAD_SLUG", message: "feature of interest must be an IRI or a name" });
  }
  const fields = new Set<string>();
  for (const row of state.bindings) {
    if (!FIELD_NAME_RE.test(row.xgsnField)) {
      violations.push({
        code: "BAD_FIELD_NAME",
        message: `field must match [a-zA-Z][a-zA-Z0-9_]*, got '${row.xgsnField}'`,
      });
    } else if (fields.has(row.xgsnField)) {
      violations.push({ code: "DUP_FIELD", message: `field used twice: '${row.xgsnField}'` });
    }
    fields.add(row.xgsnField);
    if (!IRI_RE.test(chosenUnit(row))) {
      violations.push({ code: "BAD_SHAPE", message: `unit for ${row.property} must be an IRI` });
    }
  }
  return violations;
}

export function canRegister(state: InstanceFormState): boolean {
  return validateInstanceForm(state).length === 0;
}

export function instancePayload(state: InstanceFormState): SensorInstanceJson {
  const payload: SensorInstanceJson = {
    id: state.id,
    name: state.name,
    typeId: state.typeId ?? "",
    latitude: Number(state.latitude),
    longitude: Number(state.longitude),
    featureOfInterest: state.featureOfInterest.trim(),
    bindings: state.bindings.map((row) => ({
      property: row.property,
      unit: chosenUnit(row),
      xgsnField: row.xgsnField,
    })),
  };
  if (state.owner.trim()) payload.owner = state.owner.trim();
  if (state.description.trim()) payload.description = state.description.trim();
  return payload;
}
