/** End-to-end: drive the type form and instance form against a live server,
 * registering the demo weather-station pair. Asserts the listing shows both
 * entries, preview Turtle equals the stored Turtle, and the downloaded
 * metadata equals the API body byte for byte. */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, test } from "vitest";

import { ApiError, Client } from "../src/api.js";
import * as instanceForm from "../src/instanceForm.js";
import * as typeForm from "../src/typeForm.js";

const AIR = "http://example.org/properties/AirTemperature";
const HUM = "http://example.org/properties/Humidity";
const CELSIUS = "http://qudt.org/vocab/unit#DegreeCelsius";
const PERCENT = "http://qudt.org/vocab/unit#Percent";
const HERTZ = "http://qudt.org/vocab/unit#Hertz";

let server: ChildProcess;
let dataDir: string;
let client: Client;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port assigned"));
        return;
      }
      probe.close(() => resolve(address.port));
    });
  });
}

async function waitForHealth(base: string, proc: ChildProcess): Promise<void> {
  const deadline = Date.now() + 20_000;
  for (;;) {
    if (proc.exitCode !== null) throw new Error(`server exited with code ${proc.exitCode}`);
    try {
      const response = await fetch(`${base}/health`);
      if (response.ok) return;
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) throw new Error("server did not become ready");
    await new Promise((r) => setTimeout(r, 100));
  }
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "ssnforge-e2e-"));
  const port = await freePort();
  server = spawn(
    "python3",
    ["-m", "ssnforge.cli", "--data-dir", join(dataDir, "data"), "serve", "--port", String(port)],
    { stdio: "ignore" },
  );
  const base = `http://127.0.0.1:${port}`;
  await waitForHealth(base, server);
  client = new Client(base);
});

afterAll(async () => {
  server?.kill("SIGTERM");
  await new Promise<void>((resolve) => {
    if (server.exitCode !== null) return resolve();
    server.once("exit", () => resolve());
    setTimeout(() => {
      server.kill("SIGKILL");
      resolve();
    }, 5_000).unref?.();
  });
  rmSync(dataDir, { recursive: true, force: true });
});

function buildDemoTypeForm() {
  let state = typeForm.setName(typeForm.emptyTypeForm(), "WeatherStation");
  state = typeForm.updateRow(state, 0, {
    iri: AIR,
    label: "Air temperature",
    accuracyValue: "0.5",
    accuracyUnit: CELSIUS,
    frequencyValue: "1.0",
    frequencyUnit: HERTZ,
  });
  state = typeForm.addRow(state);
  state = typeForm.updateRow(state, 1, {
    iri: HUM,
    label: "Relative humidity",
    accuracyValue: "2.0",
    accuracyUnit: PERCENT,
    frequencyValue: "0.5",
    frequencyUnit: HERTZ,
  });
  return state;
}

describe("editor end to end", () => {
  test("register the demo pair through the form state machinery", async () => {
    // sensor type form
    const tfState = buildDemoTypeForm();
    expect(typeForm.canRegister(tfState)).toBe(true);
    const typeInfo = await client.registerType(typeForm.typePayload(tfState));
    expect(typeInfo.id).toBe("weatherstation");
    expect(typeInfo.tripleCount).toBe(27);

    // instance form: binding rows come from the type definition fetched off the server
    const typeEntries = await client.listTypes();
    expect(typeEntries).toHaveLength(1);
    let inState = instanceForm.selectType(
      instanceForm.emptyInstanceForm(),
      typeEntries[0].definition as never,
    );
    expect(inState.bindings.map((b) => b.property)).toEqual([AIR, HUM]);

    inState = instanceForm.setField(inState, "name", "Demo weather station");
    inState = instanceForm.setId(inState, "demo-weatherstation");
    inState = instanceForm.setField(inState, "owner", "OpenIoT demo");
    inState = instanceForm.setField(inState, "description", "Demonstration weather station on the test field");
    inState = instanceForm.setLocation(inState, 46.52, 6.565);
    inState = instanceForm.setField(inState, "featureOfInterest", "crop-growth");
    inState = instanceForm.updateBinding(inState, 0, { unitChoice: CELSIUS, xgsnField: "temp" });
    inState = instanceForm.updateBinding(inState, 1, { unitChoice: PERCENT, xgsnField: "hum" });
    expect(instanceForm.canRegister(inState)).toBe(true);

    const instanceInfo = await client.registerInstance(instanceForm.instancePayload(inState));
    expect(instanceInfo.id).toBe("demo-weatherstation");
    expect(instanceInfo.tripleCount).toBe(18);
  });

  test("the listing shows both registered entries", async () => {
    const [types, instances] = await Promise.all([client.listTypes(), client.listInstances()]);
    expect(types.map((e) => e.id)).toEqual(["weatherstation"]);
    expect(instances.map((e) => e.id)).toEqual(["demo-weatherstation"]);
    expect(types[0].tripleCount).toBe(27);
    expect(instances[0].tripleCount).toBe(18);
  });

  test("preview Turtle equals the stored Turtle", async () => {
    const typePreview = await client.previewType(typeForm.typePayload(buildDemoTypeForm()));
    const typeStored = await client.getTurtle("types", "weatherstation");
    expect(typePreview).toBe(typeStored);

    const instanceEntries = await client.listInstances();
    const instancePreview = await client.previewInstance(instanceEntries[0].definition as never);
    const instanceStored = await client.getTurtle("instances", "demo-weatherstation");
    expect(instancePreview).toBe(instanceStored);
  });

  test("the metadata download equals the API body byte for byte", async () => {
    const viaClient = Buffer.from(await client.metadata("demo-weatherstation"), "utf-8");
    const raw = await fetch(`${client.base}/api/instances/demo-weatherstation/metadata`);
    const viaApi = Buffer.from(await raw.arrayBuffer());
    expect(viaClient.equals(viaApi)).toBe(true);
    expect(viaClient.toString()).toContain("temp.propertyName=");
  });

  test("server violations surface with their codes", async () => {
    const payload = {
      id: "busted",
      name: "Busted",
      typeId: "weatherstation",
      latitude: 91,
      longitude: 0,
      featureOfInterest: "field",
      bindings: [
        { property: AIR, unit: CELSIUS, xgsnField: "temp" },
        { property: HUM, unit: PERCENT, xgsnField: "hum" },
      ],
    };
    await expect(client.registerInstance(payload)).rejects.toMatchObject({
      status: 422,
      code: "LAT_RANGE",
    });
  });

  test("duplicate registration raises ALREADY_EXISTS for the id field", async () => {
    try {
      await client.registerType(typeForm.typePayload(buildDemoTypeForm()));
      expect.unreachable("duplicate registration must fail");
    } catch (error) {
      expect(error).toBeInstanceOf(ApiError);
      expect((error as ApiError).status).toBe(409);
      expect((error as ApiError).code).toBe("ALREADY_EXISTS");
    }
  });
});
