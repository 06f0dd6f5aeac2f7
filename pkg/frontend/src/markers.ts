// Pure map model: turns the facilities export plus the women list into
// positioned markers, with the selected woman's assigned facility highlighted.

import type { FacilityCollection, WomanJson } from "./types.js";

const EARTH_RADIUS_KM = 6371.0088;

export function haversineKm(
  latA: number, lonA: number, latB: number, lonB: number,
): number {
  const rad = Math.PI / 180;
  const dPhi = (latB - latA) * rad;
  const dLam = (lonB - lonA) * rad;
  const h =
    Math.sin(dPhi / 2) ** 2 +
    Math.cos(latA * rad) * Math.cos(latB * rad) * Math.sin(dLam / 2) ** 2;
  return 2 * EARTH_RADIUS_KM * Math.asin(Math.min(1, Math.sqrt(h)));
}

export interface Marker {
  kind: "facility" | "woman";
  key: string;
  x: number;
  y: number;
  label: string;
  detail: string;
  highlighted: boolean;
  full?: boolean;
}

export interface MapModel {
  width: number;
  height: number;
  markers: Marker[];
  // from the selected woman to her assigned facility, when both are present
  link: { x1: number; y1: number; x2: number; y2: number; distanceKm: number } | null;
}

interface RawPoint {
  lat: number;
  lon: number;
}

function project(points: RawPoint[], width: number, height: number, pad: number) {
  const lats = points.map((p) => p.lat);
  const lons = points.map((p) => p.lon);
  const minLat = Math.min(...lats);
  const maxLat = Math.max(...lats);
  const minLon = Math.min(...lons);
  const maxLon = Math.max(...lons);
  const midLat = (minLat + maxLat) / 2;
  const stretch = Math.max(0.1, Math.cos((midLat * Math.PI) / 180));
  const spanX = Math.max(1e-6, (maxLon - minLon) * stretch);
  const spanY = Math.max(1e-6, maxLat - minLat);
  const scale = Math.min((width - 2 * pad) / spanX, (height - 2 * pad) / spanY);
  return (p: RawPoint) => ({
    x: pad + (p.lon - minLon) * stretch * scale,
    y: pad + (maxLat - p.lat) * scale,
  });
}

export function buildMapModel(
  facilities: FacilityCollection,
  women: WomanJson[],
  selectedPhone: string | null,
  width = 640,
  height = 480,
  pad = 30,
): MapModel {
  const raw: RawPoint[] = [
    ...facilities.features.map((f) => ({
      lat: f.geometry.coordinates[1],
      lon: f.geometry.coordinates[0],
    })),
    ...women.map((w) => ({ lat: w.home_location.lat_deg, lon: w.home_location.lon_deg })),
  ];
  if (raw.length === 0) {
    return { width, height, markers: [], link: null };
  }
  const toXY = project(raw, width, height, pad);
  const selected = women.find((w) => w.phone === selectedPhone) ?? null;

  const markers: Marker[] = facilities.features.map((f) => {
    const p = f.properties;
    const lat = f.geometry.coordinates[1];
    const lon = f.geometry.coordinates[0];
    const { x, y } = toXY({ lat, lon });
    const free = p.capacity - p.registered;
    let detail = `${p.name}: ${p.registered}/${p.capacity} registered, vehicles ${p.vehicles || "none"}`;
    if (selected) {
      const km = haversineKm(
        selected.home_location.lat_deg, selected.home_location.lon_deg, lat, lon,
      );
      detail += `, ${km.toFixed(1)} km from ${selected.name}`;
    }
    return {
      kind: "facility" as const,
      key: `facility-${p.id}`,
      x,
      y,
      label: p.name,
      detail,
      highlighted: selected !== null && selected.assigned_facility === p.id,
      full: free <= 0,
    };
  });

  for (const woman of women) {
    const { x, y } = toXY({
      lat: woman.home_location.lat_deg,
      lon: woman.home_location.lon_deg,
    });
    markers.push({
      kind: "woman",
      key: `woman-${woman.phone}`,
      x,
      y,
      label: woman.name,
      detail: `${woman.name} (${woman.phone}), facility ${woman.assigned_facility}`,
      highlighted: woman.phone === selectedPhone,
    });
  }

  let link: MapModel["link"] = null;
  if (selected) {
    const facility = facilities.features.find(
      (f) => f.properties.id === selected.assigned_facility,
    );
    if (facility) {
      const from = toXY({
        lat: selected.home_location.lat_deg,
        lon: selected.home_location.lon_deg,
      });
      const to = toXY({
        lat: facility.geometry.coordinates[1],
        lon: facility.geometry.coordinates[0],
      });
      link = {
        x1: from.x,
        y1: from.y,
        x2: to.x,
        y2: to.y,
        distanceKm: haversineKm(
          selected.home_location.lat_deg,
          selected.home_location.lon_deg,
          facility.geometry.coordinates[1],
          facility.geometry.coordinates[0],
        ),
      };
    }
  }
  return { width, height, markers, link };
}
