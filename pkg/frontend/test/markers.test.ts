import { describe, expect, it } from "vitest";

import { buildMapModel, haversineKm } from "../src/markers.js";
import type { FacilityCollection, WomanJson } from "../src/types.js";

// the demo city: three centres around a source at (36.19, 44.01)
const facilities: FacilityCollection = {
  type: "FeatureCollection",
  features: [
    feature(1, "Ankawa", 36.194497, 44.01, 10, 10),
    feature(2, "Tayrawa", 36.131544, 44.01, 4, 15),
    feature(3, "Maternity Hospital", 36.19, 44.05123, 7, 25),
  ],
};

function feature(
  id: number, name: string, lat: number, lon: number, registered: number, capacity: number,
) {
  return {
    type: "Feature" as const,
    geometry: { type: "Point" as const, coordinates: [lon, lat] as [number, number] },
    properties: { id, name, zone: "Z", registered, capacity, vehicles: "CAR" },
  };
}

const sara: WomanJson = {
  phone: "07504432147",
  id_code: 1000,
  name: "Sara",
  age: 27,
  home_location: { lat_deg: 36.19, lon_deg: 44.01 },
  assigned_facility: 3,
  registered_at: "2012-11-01T08:00:00",
  gestation_start: null,
  conditions: [],
  active: true,
};

describe("haversineKm", () => {
  it("matches the demo geometry", () => {
    expect(haversineKm(36.19, 44.01, 36.194497, 44.01)).toBeCloseTo(0.5, 2);
    expect(haversineKm(36.19, 44.01, 36.19, 44.05123)).toBeCloseTo(3.7, 2);
    expect(haversineKm(36.19, 44.01, 36.131544, 44.01)).toBeCloseTo(6.5, 2);
  });

  it("is zero for identical points and symmetric", () => {
    expect(haversineKm(10, 20, 10, 20)).toBe(0);
    expect(haversineKm(1, 2, 3, 4)).toBeCloseTo(haversineKm(3, 4, 1, 2), 12);
  });
});

describe("buildMapModel", () => {
  it("plots all facilities and women", () => {
    const model = buildMapModel(facilities, [sara], null);
    expect(model.markers.filter((m) => m.kind === "facility")).toHaveLength(3);
    expect(model.markers.filter((m) => m.kind === "woman")).toHaveLength(1);
    expect(model.link).toBeNull();
  });

  it("highlights the selected woman's assigned facility", () => {
    const model = buildMapModel(facilities, [sara], sara.phone);
    const highlighted = model.markers.filter((m) => m.highlighted);
    expect(highlighted.map((m) => m.key).sort()).toEqual([
      "facility-3",
      "woman-07504432147",
    ]);
  });

  it("link distance matches the assignment distance within 0.1 km", () => {
    const model = buildMapModel(facilities, [sara], sara.phone);
    expect(model.link).not.toBeNull();
    expect(Math.abs(model.link!.distanceKm - 3.7)).toBeLessThan(0.1);
  });

  it("marks full facilities", () => {
    const model = buildMapModel(facilities, [], null);
    const ankawa = model.markers.find((m) => m.key === "facility-1")!;
    expect(ankawa.full).toBe(true);
    const hospital = model.markers.find((m) => m.key === "facility-3")!;
    expect(hospital.full).toBe(false);
  });

  it("empty inputs give an empty model", () => {
    const model = buildMapModel({ type: "FeatureCollection", features: [] }, [], null);
    expect(model.markers).toEqual([]);
  });

  it("keeps every marker inside the viewport", () => {
    const model = buildMapModel(facilities, [sara], null, 640, 480, 30);
    for (const marker of model.markers) {
      expect(marker.x).toBeGreaterThanOrEqual(0);
      expect(marker.x).toBeLessThanOrEqual(640);
      expect(marker.y).toBeGreaterThanOrEqual(0);
      expect(marker.y).toBeLessThanOrEqual(480);
    }
  });
});
