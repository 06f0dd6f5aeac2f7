// JSON shapes served by the service API, field names as the server sends them.

export interface GeoPointJson {
  lat_deg: number;
  lon_deg: number;
}

export interface WomanJson {
  phone: string;
  id_code: number;
  name: string;
  age: number;
  home_location: GeoPointJson;
  assigned_facility: number;
  registered_at: string;
  gestation_start: string | null;
  conditions: string[];
  active: boolean;
}

export interface PrimeInfoJson {
  name: string;
  age: number;
  home_location: GeoPointJson;
  assigned_facility: number;
}

export interface ReviewJson {
  phone: string;
  seq: number;
  prime_info: PrimeInfoJson;
  review_date: string;
  gestational_week: number;
  weight_kg: number | null;
  blood_pressure: string | null;
  notes: string | null;
  next_review: string;
  confirmed: boolean;
  reminder_sent: boolean;
  reschedules: number;
}

export interface AdviceJson {
  id_code: number;
  phone: string;
  trimester: number;
  advice_done: boolean;
  type_of_advice: string;
  who_advisement: string;
  message: string;
}

export interface OrderJson {
  order_id: number;
  phone: string;
  location: GeoPointJson;
  origin_facility: number;
  vehicle: string;
  kit: string;
  distance_km: number;
  created_at: string;
  status: string;
  outcome: string | null;
}

export interface WomanDetailJson {
  woman: WomanJson;
  reviews: ReviewJson[];
  advice: AdviceJson[];
}

export interface FacilityProperties {
  id: number;
  name: string;
  zone: string;
  registered: number;
  capacity: number;
  vehicles: string;
}

export interface FacilityFeature {
  type: "Feature";
  geometry: { type: "Point"; coordinates: [number, number] };
  properties: FacilityProperties;
}

export interface FacilityCollection {
  type: "FeatureCollection";
  features: FacilityFeature[];
}

export interface ReviewSubmission {
  gestational_week: number;
  next_review: string;
  weight_kg?: number;
  blood_pressure?: string;
  notes?: string;
  conditions?: string[];
}

export interface ApiErrorBody {
  error: string;
  detail: string;
}
