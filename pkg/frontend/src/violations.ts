/** Inline messages for server violation codes; unknown codes fall back to a banner. */

import type { Violation } from "./types.js";

/** Which form field a violation code belongs next to. */
export type FieldKey =
  | "id"
  | "name"
  | "properties"
  | "accuracy"
  | "frequency"
  | "latitude"
  | "longitude"
  | "featureOfInterest"
  | "bindings";

interface CodeInfo {
  field: FieldKey;
  message: string;
}

const CODE_MAP: Record<string, CodeInfo> = {
  EMPTY_OBSERVES: { field: "properties", message: "Add at least one observed property." },
  DUP_PROPERTY: { field: "properties", message: "Each observed property must be distinct (and have a distinct name)." },
  BAD_SLUG: { field: "id", message: "Use only lowercase letters, digits, and dashes." },
  NEG_ACCURACY: { field: "accuracy", message: "Accuracy must be zero or a positive number." },
  NONPOS_FREQUENCY: { field: "frequency", message: "Frequency must be a positive number." },
  CAP_UNKNOWN_PROPERTY: { field: "properties", message: "A capability refers to a property that is not observed." },
  LAT_RANGE: { field: "latitude", message: "Latitude must be between -90 and 90." },
  LON_RANGE: { field: "longitude", message: "Longitude must be between -180 and 180." },
  BINDING_MISMATCH: { field: "bindings", message: "Bindings must cover exactly the type's observed properties." },
  DUP_FIELD: { field: "bindings", message: "Each stream field name may be used only once." },
  BAD_FIELD_NAME: { field: "bindings", message: "Stream fields start with a letter and use letters, digits, or underscores." },
  UNKNOWN_TYPE: { field: "id", message: "The selected sensor type is not registered." },
  ALREADY_EXISTS: { field: "id", message: "This id already exists." },
  ID_MISMATCH: { field: "id", message: "The id may not change on update." },
};

export function describeViolation(v: Violation): { field: FieldKey | null; message: string } {
  const info = CODE_MAP[v.code];
  if (info) {
    return { field: info.field, message: info.message };
  }
  return { field: null, message: v.message || "The server rejected the request." };
}

/** Group violations by target field; unmapped codes land under the `banner` key. */
export function groupViolations(violations: Violation[]): {
  byField: Map<FieldKey, string[]>;
  banner: string[];
} {
  const byField = new Map<FieldKey, string[]>();
  const banner: string[] = [];
  for (const v of violations) {
    const { field, message } = describeViolation(v);
    if (field === null) {
      banner.push(message);
    } else {
      const bucket = byField.get(field) ?? [];
      bucket.push(message);
      byField.set(field, bucket);
    }
  }
  return { byField, banner };
}
