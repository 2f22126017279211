// @vitest-environment happy-dom
import { beforeEach, describe, expect, test, vi } from "vitest";

import { mountApp } from "../src/main.js";

describe("application shell", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
    // no server in these tests; the UI must degrade gracefully
    vi.stubGlobal("fetch", () => Promise.reject(new TypeError("offline")));
  });

  test("mounts with three tabs and opens the type editor", () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    mountApp(root);

    const tabs = [...root.querySelectorAll("button.tab")].map((b) => b.textContent);
    expect(tabs).toEqual(["Sensor type", "Sensor instance", "Registered"]);
    expect(root.querySelector("h3")?.textContent).toBe("Sensor type");
    // register starts disabled: the form has no property rows filled in yet
    const register = root.querySelector("button.primary") as HTMLButtonElement;
    expect(register.disabled).toBe(true);
  });

  test("switching tabs swaps the view", () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    mountApp(root);

    const tabs = [...root.querySelectorAll("button.tab")] as HTMLButtonElement[];
    tabs[1].click();
    expect(root.querySelector("main h3")?.textContent).toBe("Sensor instance");
    expect(root.querySelector(".map-picker")).not.toBeNull();
    tabs[2].click();
    expect(root.querySelector("main h3")?.textContent).toBe("Registered sensor types");
  });

  test("type form: filling a property row enables register", () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    mountApp(root);

    const inputs = [...root.querySelectorAll("main input")] as HTMLInputElement[];
    const nameInput = inputs[0];
    const iriInput = inputs.find((i) => i.placeholder.includes("AirTemperature"))!;

    nameInput.value = "WeatherStation";
    nameInput.dispatchEvent(new Event("input", { bubbles: true }));
    iriInput.value = "http://example.org/properties/AirTemperature";
    iriInput.dispatchEvent(new Event("input", { bubbles: true }));

    const register = root.querySelector("button.primary") as HTMLButtonElement;
    expect(register.disabled).toBe(false);
  });
});
