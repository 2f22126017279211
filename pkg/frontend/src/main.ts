/** Editor application: sensor type and instance forms with live RDF preview,
 * registration against the registry service, and metadata download. The UI
 * never builds RDF itself; every Turtle snippet comes from the server. */

import { ApiError, Client, NetworkError } from "./api.js";
import * as instanceForm from "./instanceForm.js";
import { MapPicker } from "./mapPicker.js";
import { PreviewController } from "./preview.js";
import * as typeForm from "./typeForm.js";
import { CUSTOM_UNIT, UNIT_PRESETS } from "./types.js";
import type { EntryInfo, SensorTypeJson, Violation } from "./types.js";
import { groupViolations, type FieldKey } from "./violations.js";

const client = new Client("");

// ---------------------------------------------------------------------------
// small DOM helpers

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function labeled(labelText: string, input: HTMLElement, hint = ""): HTMLElement {
  const wrap = el("div", "field");
  const label = el("label", "", labelText);
  wrap.appendChild(label);
  wrap.appendChild(input);
  if (hint) wrap.appendChild(el("div", "hint", hint));
  return wrap;
}

function textInput(value: string, onInput: (value: string) => void, placeholder = ""): HTMLInputElement {
  const input = el("input");
  input.type = "text";
  input.value = value;
  input.placeholder = placeholder;
  input.addEventListener("input", () => onInput(input.value));
  return input;
}

function unitSelect(choice: string, custom: string, onChange: (choice: string, custom: string) => void): HTMLElement {
  const wrap = el("span", "unit-select");
  const select = el("select");
  for (const preset of UNIT_PRESETS) {
    const option = el("option", "", preset.label);
    option.value = preset.iri;
    select.appendChild(option);
  }
  const customOption = el("option", "", "Custom IRI…");
  customOption.value = CUSTOM_UNIT;
  select.appendChild(customOption);
  select.value = UNIT_PRESETS.some((p) => p.iri === choice) || choice === CUSTOM_UNIT ? choice : CUSTOM_UNIT;

  const customInput = textInput(custom, (value) => onChange(select.value, value), "http://…/unit");
  customInput.classList.add("unit-custom");
  customInput.hidden = select.value !== CUSTOM_UNIT;
  select.addEventListener("change", () => {
    customInput.hidden = select.value !== CUSTOM_UNIT;
    onChange(select.value, customInput.value);
  });
  wrap.appendChild(select);
  wrap.appendChild(customInput);
  return wrap;
}

// ---------------------------------------------------------------------------
// violations + banners

class ViolationArea {
  private slots = new Map<FieldKey, HTMLElement>();
  readonly banner = el("div", "banner banner-error");

  constructor() {
    this.banner.hidden = true;
  }

  slot(field: FieldKey): HTMLElement {
    let node = this.slots.get(field);
    if (!node) {
      node = el("div", "violations");
      this.slots.set(field, node);
    }
    return node;
  }

  show(violations: Violation[]): void {
    this.clear();
    const { byField, banner } = groupViolations(violations);
    for (const [field, messages] of byField) {
      const node = this.slots.get(field);
      if (!node) {
        banner.push(...messages);
        continue;
      }
      for (const message of messages) node.appendChild(el("div", "violation", message));
    }
    if (banner.length > 0) {
      this.banner.textContent = banner.join(" ");
      this.banner.hidden = false;
    }
  }

  showNetworkFailure(): void {
    this.banner.textContent = "Could not reach the registry service. Your input is untouched; try again.";
    this.banner.hidden = false;
  }

  clear(): void {
    for (const node of this.slots.values()) node.replaceChildren();
    this.banner.hidden = true;
    this.banner.textContent = "";
  }
}

function successBanner(target: HTMLElement, message: string): void {
  const banner = el("div", "banner banner-ok", message);
  target.replaceChildren(banner);
}

// ---------------------------------------------------------------------------
// preview pane

class PreviewPane {
  readonly element: HTMLElement;
  private code: HTMLElement;
  private status: HTMLElement;
  private controller = new PreviewController();

  constructor(title: string) {
    this.element = el("section", "preview-pane");
    this.element.appendChild(el("h3", "", title));
    this.status = el("div", "hint", "The generated description appears here.");
    this.code = el("pre", "turtle");
    this.element.appendChild(this.status);
    this.element.appendChild(this.code);
  }

  update(fetchPreview: (signal: AbortSignal) => Promise<string>, onViolations: (violations: Violation[]) => void): void {
    this.controller.request(fetchPreview, {
      ok: (turtle) => {
        this.status.textContent = "";
        this.code.textContent = turtle;
      },
      fail: (error) => {
        if (error instanceof ApiError) {
          this.status.textContent = "The current input does not map to a description yet.";
          onViolations(error.details.length > 0 ? error.details : [{ code: error.code, message: error.message }]);
        } else {
          this.status.textContent = "Preview unavailable (server unreachable).";
        }
      },
    });
  }

  clear(message: string): void {
    this.controller.cancel();
    this.status.textContent = message;
    this.code.textContent = "";
  }
}

// ---------------------------------------------------------------------------
// sensor type editor

function buildTypeEditor(onRegistered: () => void): HTMLElement {
  let state = typeForm.emptyTypeForm();
  const root = el("section", "editor");
  const violations = new ViolationArea();
  const preview = new PreviewPane("RDF preview");
  const result = el("div", "result-slot");
  let busy = false;

  const nameInput = textInput(state.name, (value) => {
    state = typeForm.setName(state, value);
    idInput.value = state.id;
    refresh();
  }, "WeatherStation");
  const idInput = textInput(state.id, (value) => {
    state = typeForm.setId(state, value);
    refresh();
  }, "weatherstation");

  const rowsContainer = el("div", "rows");
  const addButton = el("button", "secondary", "Add observed property");
  addButton.type = "button";
  addButton.addEventListener("click", () => {
    state = typeForm.addRow(state);
    renderRows();
    refresh();
  });

  const registerButton = el("button", "primary", "Register sensor type");
  registerButton.type = "button";
  registerButton.addEventListener("click", async () => {
    if (busy || !typeForm.canRegister(state)) return;
    busy = true;
    registerButton.disabled = true;
    try {
      const info = await client.registerType(typeForm.typePayload(state));
      successBanner(result, `Registered ${info.iri} (${info.tripleCount} triples).`);
      state = { ...state, dirty: false, serverViolations: [] };
      onRegistered();
    } catch (error) {
      if (error instanceof ApiError) {
        const details = error.details.length > 0 ? error.details : [{ code: error.code, message: error.message }];
        state = typeForm.setServerViolations(state, details);
        violations.show(details);
      } else if (error instanceof NetworkError) {
        violations.showNetworkFailure();
      } else {
        throw error;
      }
    } finally {
      busy = false;
      refresh();
    }
  });

  function renderRows(): void {
    rowsContainer.replaceChildren();
    state.rows.forEach((row, index) => {
      const rowEl = el("div", "property-row");
      rowEl.appendChild(labeled("Property IRI", textInput(row.iri, (v) => {
        state = typeForm.updateRow(state, index, { iri: v });
        refresh();
      }, "http://example.org/properties/AirTemperature")));
      rowEl.appendChild(labeled("Label", textInput(row.label, (v) => {
        state = typeForm.updateRow(state, index, { label: v });
        refresh();
      })));

      const accuracy = el("div", "measure");
      accuracy.appendChild(labeled("Accuracy", textInput(row.accuracyValue, (v) => {
        state = typeForm.updateRow(state, index, { accuracyValue: v });
        refresh();
      }, "0.5")));
      accuracy.appendChild(unitSelect(row.accuracyUnit || UNIT_PRESETS[0].iri, row.accuracyUnit, (choice, custom) => {
        state = typeForm.updateRow(state, index, { accuracyUnit: choice === CUSTOM_UNIT ? custom : choice });
        refresh();
      }));
      rowEl.appendChild(accuracy);

      const frequency = el("div", "measure");
      frequency.appendChild(labeled("Frequency", textInput(row.frequencyValue, (v) => {
        state = typeForm.updateRow(state, index, { frequencyValue: v });
        refresh();
      }, "1.0")));
      frequency.appendChild(unitSelect(row.frequencyUnit || UNIT_PRESETS[3].iri, row.frequencyUnit, (choice, custom) => {
        state = typeForm.updateRow(state, index, { frequencyUnit: choice === CUSTOM_UNIT ? custom : choice });
        refresh();
      }));
      rowEl.appendChild(frequency);

      const remove = el("button", "remove", "✕");
      remove.type = "button";
      remove.title = "Remove this property";
      remove.addEventListener("click", () => {
        state = typeForm.removeRow(state, index);
        renderRows();
        refresh();
      });
      rowEl.appendChild(remove);
      rowsContainer.appendChild(rowEl);
    });
  }

  function refresh(): void {
    const clientViolations = typeForm.validateTypeForm(state);
    violations.show([...clientViolations, ...state.serverViolations]);
    registerButton.disabled = busy || clientViolations.length > 0;
    if (clientViolations.length === 0) {
      preview.update((signal) => client.previewType(typeForm.typePayload(state), signal), (vs) => violations.show(vs));
    } else {
      preview.clear("Fix the highlighted fields to see the generated description.");
    }
  }

  const form = el("div", "form-column");
  form.appendChild(el("h3", "", "Sensor type"));
  form.appendChild(violations.banner);
  form.appendChild(labeled("Name", nameInput));
  form.appendChild(violations.slot("name"));
  form.appendChild(labeled("Id (slug)", idInput));
  form.appendChild(violations.slot("id"));
  form.appendChild(el("h4", "", "Observed properties"));
  form.appendChild(violations.slot("properties"));
  form.appendChild(rowsContainer);
  form.appendChild(violations.slot("accuracy"));
  form.appendChild(violations.slot("frequency"));
  form.appendChild(addButton);
  form.appendChild(registerButton);
  form.appendChild(result);

  renderRows();
  refresh();
  root.appendChild(form);
  root.appendChild(preview.element);
  return root;
}

// ---------------------------------------------------------------------------
// sensor instance editor

function buildInstanceEditor(onRegistered: () => void): HTMLElement {
  let state = instanceForm.emptyInstanceForm();
  let types: SensorTypeJson[] = [];
  const root = el("section", "editor");
  const violations = new ViolationArea();
  const preview = new PreviewPane("RDF preview");
  const result = el("div", "result-slot");
  let busy = false;

  const typeSelect = el("select");
  typeSelect.addEventListener("change", () => {
    const chosen = types.find((t) => t.id === typeSelect.value);
    if (chosen) {
      state = instanceForm.selectType(state, chosen);
      renderBindings();
      refresh();
    }
  });

  async function reloadTypes(): Promise<void> {
    try {
      const entries = await client.listTypes();
      types = entries.map((entry) => entry.definition as SensorTypeJson);
      typeSelect.replaceChildren();
      const placeholder = el("option", "", types.length > 0 ? "Select a sensor type…" : "No types registered yet");
      placeholder.value = "";
      typeSelect.appendChild(placeholder);
      for (const t of types) {
        const option = el("option", "", `${t.name} (${t.id})`);
        option.value = t.id;
        typeSelect.appendChild(option);
      }
      if (state.typeId !== null) typeSelect.value = state.typeId;
    } catch {
      // the picker stays as it is; a later registration attempt will surface the failure
    }
  }

  const nameInput = textInput(state.name, (value) => {
    state = instanceForm.setField(state, "name", value);
    idInput.value = state.id;
    refresh();
  }, "demo-weatherstation");
  const idInput = textInput(state.id, (value) => {
    state = instanceForm.setId(state, value);
    refresh();
  });
  const ownerInput = textInput(state.owner, (value) => {
    state = instanceForm.setField(state, "owner", value);
    refresh();
  });
  const descriptionInput = textInput(state.description, (value) => {
    state = instanceForm.setField(state, "description", value);
    refresh();
  });
  const foiInput = textInput(state.featureOfInterest, (value) => {
    state = instanceForm.setField(state, "featureOfInterest", value);
    refresh();
  }, "crop-growth");

  const mapPicker = new MapPicker(({ lat, long }) => {
    state = instanceForm.setLocation(state, lat, long);
    latInput.value = state.latitude;
    longInput.value = state.longitude;
    refresh();
  });
  const latInput = textInput(state.latitude, (value) => {
    state = instanceForm.setField(state, "latitude", value);
    syncMarker();
    refresh();
  }, "46.52");
  const longInput = textInput(state.longitude, (value) => {
    state = instanceForm.setField(state, "longitude", value);
    syncMarker();
    refresh();
  }, "6.565");

  function syncMarker(): void {
    const lat = Number(state.latitude);
    const long = Number(state.longitude);
    if (Number.isFinite(lat) && Number.isFinite(long) && state.latitude.trim() && state.longitude.trim()) {
      mapPicker.setMarker({ lat, long });
    } else {
      mapPicker.setMarker(null);
    }
  }

  const bindingsContainer = el("div", "rows");

  function renderBindings(): void {
    bindingsContainer.replaceChildren();
    if (state.bindings.length === 0) {
      bindingsContainer.appendChild(el("div", "hint", "The observed properties of the selected type appear here."));
      return;
    }
    state.bindings.forEach((row, index) => {
      const rowEl = el("div", "property-row");
      const caption = row.label ? `${row.label}` : row.property;
      const locked = el("div", "locked-property", caption);
      locked.title = row.property;
      rowEl.appendChild(labeled("Observed property", locked));
      rowEl.appendChild(
        labeled(
          "Unit",
          unitSelect(row.unitChoice, row.customUnit, (choice, custom) => {
            state = instanceForm.updateBinding(state, index, { unitChoice: choice, customUnit: custom });
            refresh();
          }),
        ),
      );
      rowEl.appendChild(labeled("Stream field", textInput(row.xgsnField, (v) => {
        state = instanceForm.updateBinding(state, index, { xgsnField: v });
        refresh();
      }, "temp")));
      bindingsContainer.appendChild(rowEl);
    });
  }

  const registerButton = el("button", "primary", "Register & generate metadata");
  registerButton.type = "button";
  registerButton.addEventListener("click", async () => {
    if (busy || !instanceForm.canRegister(state)) return;
    busy = true;
    registerButton.disabled = true;
    try {
      const info = await client.registerInstance(instanceForm.instancePayload(state));
      result.replaceChildren();
      const banner = el("div", "banner banner-ok", `Registered ${info.iri} (${info.tripleCount} triples). `);
      const download = el("button", "secondary", "Download metadata file");
      download.type = "button";
      download.addEventListener("click", () => downloadMetadata(info.id));
      banner.appendChild(download);
      result.appendChild(banner);
      state = { ...state, dirty: false, serverViolations: [] };
      onRegistered();
    } catch (error) {
      if (error instanceof ApiError) {
        const details = error.details.length > 0 ? error.details : [{ code: error.code, message: error.message }];
        state = instanceForm.setServerViolations(state, details);
        violations.show(details);
      } else if (error instanceof NetworkError) {
        violations.showNetworkFailure();
      } else {
        throw error;
      }
    } finally {
      busy = false;
      refresh();
    }
  });

  function refresh(): void {
    const clientViolations = instanceForm.validateInstanceForm(state);
    violations.show([...clientViolations, ...state.serverViolations]);
    registerButton.disabled = busy || clientViolations.length > 0;
    if (clientViolations.length === 0) {
      preview.update(
        (signal) => client.previewInstance(instanceForm.instancePayload(state), signal),
        (vs) => violations.show(vs),
      );
    } else {
      preview.clear("Fix the highlighted fields to see the generated description.");
    }
  }

  const form = el("div", "form-column");
  form.appendChild(el("h3", "", "Sensor instance"));
  form.appendChild(violations.banner);
  form.appendChild(labeled("Sensor type", typeSelect));
  form.appendChild(labeled("Name", nameInput));
  form.appendChild(violations.slot("name"));
  form.appendChild(labeled("Id (slug)", idInput));
  form.appendChild(violations.slot("id"));
  form.appendChild(labeled("Owner", ownerInput));
  form.appendChild(labeled("Description", descriptionInput));
  form.appendChild(el("h4", "", "Location"));
  form.appendChild(mapPicker.element);
  const coords = el("div", "coords");
  coords.appendChild(labeled("Latitude", latInput));
  coords.appendChild(labeled("Longitude", longInput));
  form.appendChild(coords);
  form.appendChild(violations.slot("latitude"));
  form.appendChild(violations.slot("longitude"));
  form.appendChild(labeled("Feature of interest", foiInput, "An IRI, or a name like crop-growth"));
  form.appendChild(violations.slot("featureOfInterest"));
  form.appendChild(el("h4", "", "Observed properties"));
  form.appendChild(violations.slot("bindings"));
  form.appendChild(bindingsContainer);
  form.appendChild(registerButton);
  form.appendChild(result);

  renderBindings();
  refresh();
  void reloadTypes();
  root.appendChild(form);
  root.appendChild(preview.element);
  (root as HTMLElement & { reloadTypes?: () => Promise<void> }).reloadTypes = reloadTypes;
  return root;
}

async function downloadMetadata(instanceId: string): Promise<void> {
  const text = await client.metadata(instanceId);
  const blob = new Blob([text], { type: "text/plain" });
  const anchor = document.createElement("a");
  anchor.href = URL.createObjectURL(blob);
  anchor.download = `${instanceId}.metadata`;
  anchor.click();
  URL.revokeObjectURL(anchor.href);
}

// ---------------------------------------------------------------------------
// registered listing

function buildListing(): HTMLElement & { reload: () => Promise<void> } {
  const root = el("section", "listing") as HTMLElement & { reload: () => Promise<void> };
  const typesTable = el("div", "entry-table");
  const instancesTable = el("div", "entry-table");
  root.appendChild(el("h3", "", "Registered sensor types"));
  root.appendChild(typesTable);
  root.appendChild(el("h3", "", "Registered sensor instances"));
  root.appendChild(instancesTable);

  function entryRow(entry: EntryInfo, withMetadata: boolean): HTMLElement {
    const row = el("div", "entry-row");
    row.appendChild(el("span", "entry-id", entry.id));
    row.appendChild(el("span", "entry-iri", entry.iri));
    row.appendChild(el("span", "entry-count", `${entry.tripleCount} triples`));
    if (withMetadata) {
      const button = el("button", "secondary", "Metadata");
      button.type = "button";
      button.addEventListener("click", () => downloadMetadata(entry.id));
      row.appendChild(button);
    }
    return row;
  }

  root.reload = async () => {
    try {
      const [typeEntries, instanceEntries] = await Promise.all([client.listTypes(), client.listInstances()]);
      typesTable.replaceChildren(
        ...(typeEntries.length > 0 ? typeEntries.map((e) => entryRow(e, false)) : [el("div", "hint", "None yet.")]),
      );
      instancesTable.replaceChildren(
        ...(instanceEntries.length > 0
          ? instanceEntries.map((e) => entryRow(e, true))
          : [el("div", "hint", "None yet.")]),
      );
    } catch {
      typesTable.replaceChildren(el("div", "hint", "Could not load the registry."));
      instancesTable.replaceChildren();
    }
  };
  return root;
}

// ---------------------------------------------------------------------------
// application shell

export function mountApp(target: HTMLElement): void {
  const listing = buildListing();
  let instanceEditor: HTMLElement & { reloadTypes?: () => Promise<void> };

  const onRegistered = () => {
    void listing.reload();
    void instanceEditor.reloadTypes?.();
  };

  const typeEditor = buildTypeEditor(onRegistered);
  instanceEditor = buildInstanceEditor(onRegistered);

  const views: Record<string, HTMLElement> = {
    "Sensor type": typeEditor,
    "Sensor instance": instanceEditor,
    "Registered": listing,
  };

  const nav = el("nav", "tabs");
  const body = el("main", "view");
  const buttons = new Map<string, HTMLButtonElement>();
  for (const name of Object.keys(views)) {
    const button = el("button", "tab", name);
    button.type = "button";
    button.addEventListener("click", () => show(name));
    buttons.set(name, button);
    nav.appendChild(button);
  }

  function show(name: string): void {
    body.replaceChildren(views[name]);
    for (const [label, button] of buttons) {
      button.classList.toggle("active", label === name);
    }
    if (name === "Registered") void listing.reload();
    if (name === "Sensor instance") void instanceEditor.reloadTypes?.();
  }

  const header = el("header");
  header.appendChild(el("h1", "", "Sensor Schema Editor"));
  header.appendChild(el("p", "subtitle", "Define sensor types and deployed instances; descriptions register as Linked Data."));
  target.appendChild(header);
  target.appendChild(nav);
  target.appendChild(body);
  show("Sensor type");
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(document.getElementById("app")!);
}
