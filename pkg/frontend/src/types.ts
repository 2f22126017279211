/** JSON shapes exchanged with the registry service. */

export interface MeasurementJson {
  value: number;
  unit: string;
}

export interface CapabilityJson {
  property: string;
  accuracy?: MeasurementJson;
  frequency?: MeasurementJson;
}

export interface ObservedPropertyJson {
  iri: string;
  label?: string;
}

export interface SensorTypeJson {
  id: string;
  name: string;
  observes: ObservedPropertyJson[];
  capabilities: CapabilityJson[];
}

export interface BindingJson {
  property: string;
  unit: string;
  xgsnField: string;
}

export interface SensorInstanceJson {
  id: string;
  name: string;
  typeId: string;
  owner?: string;
  description?: string;
  latitude: number;
  longitude: number;
  featureOfInterest: string;
  bindings: BindingJson[];
}

export interface Violation {
  code: string;
  message: string;
}

export interface EntryInfo {
  kind: "type" | "instance";
  id: string;
  iri: string;
  graphIri: string;
  registeredAt: string;
  tripleCount: number;
  definition: SensorTypeJson | SensorInstanceJson;
}

export interface RegisteredInfo {
  id: string;
  iri: string;
  graphIri: string;
  tripleCount: number;
}

export const UNIT_PRESETS = [
  { label: "Kelvin", iri: "http://qudt.org/vocab/unit#Kelvin" },
  { label: "Degree Celsius", iri: "http://qudt.org/vocab/unit#DegreeCelsius" },
  { label: "Percent", iri: "http://qudt.org/vocab/unit#Percent" },
  { label: "Hertz", iri: "http://qudt.org/vocab/unit#Hertz" },
] as const;

export const CUSTOM_UNIT = "custom";

/** Mirror of the server's slug rule: lowercase, [a-z0-9-] runs, no edge dashes. */
export function slugify(text: string): string {
  return text
    .toLowerCase()
    .replace(/[^a-z0-9-]+/g, "-")
    .replace(/-{2,}/g, "-")
    .replace(/^-+|-+$/g, "");
}

export const SLUG_RE = /^[a-z0-9-]+$/;
export const FIELD_NAME_RE = /^[a-zA-Z][a-zA-Z0-9_]*$/;
export const IRI_RE = /^[A-Za-z][A-Za-z0-9+.-]*:[^\s<>]+$/;
