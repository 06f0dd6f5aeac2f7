import { ApiClient, ApiError } from "../api.js";
import type { ReviewSubmission, WomanDetailJson } from "../types.js";
import {
  bloodPressureProblem,
  gestationalWeekProblem,
  nextReviewProblem,
  weightProblem,
} from "../validate.js";
import { escapeHtml } from "./women-list.js";

const CONDITIONS = ["Hypertension", "Diabetes", "Cardiac", "Asthma"];

export function renderReviewForm(
  host: HTMLElement,
  api: ApiClient,
  detail: WomanDetailJson,
  today: string,
  onSaved: () => void,
): void {
  const { woman, reviews } = detail;
  host.replaceChildren();

  const prime = document.createElement("div");
  prime.className = "prime-info";
  prime.innerHTML =
    `<h3>Review entry, visit ${reviews.length + 1}</h3>` +
    `<p class="muted">Carried over automatically, read-only:</p>` +
    `<dl><dt>Name</dt><dd>${escapeHtml(woman.name)}</dd>` +
    `<dt>Phone</dt><dd>${woman.phone}</dd>` +
    `<dt>Age</dt><dd>${woman.age}</dd>` +
    `<dt>Home</dt><dd>${woman.home_location.lat_deg.toFixed(6)}, ${woman.home_location.lon_deg.toFixed(6)}</dd>` +
    `<dt>Facility</dt><dd>#${woman.assigned_facility}</dd></dl>`;
  host.appendChild(prime);

  const form = document.createElement("form");
  form.innerHTML = `
    <label>Gestational week <input name="week" type="number" min="1" max="45" required></label>
    <label>Weight kg <input name="weight" type="text" placeholder="optional"></label>
    <label>Blood pressure <input name="bp" type="text" placeholder="118/76"></label>
    <label>Notes <input name="notes" type="text" placeholder="optional"></label>
    <label>Next review <input name="next" type="date" required></label>
    <fieldset><legend>Conditions</legend>
      ${CONDITIONS.map(
        (c) => `<label class="inline"><input type="checkbox" name="cond" value="${c}"> ${c}</label>`,
      ).join("")}
    </fieldset>
    <button type="submit">Save review</button>
    <span class="error" role="alert"></span>
  `;
  const errorBox = form.querySelector(".error") as HTMLElement;

  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    errorBox.textContent = "";
    const data = new FormData(form);
    const week = Number(data.get("week"));
    const next = String(data.get("next") ?? "");
    const weight = String(data.get("weight") ?? "").trim();
    const bp = String(data.get("bp") ?? "").trim();
    const problem =
      gestationalWeekProblem(week) ??
      nextReviewProblem(next, today) ??
      weightProblem(weight) ??
      bloodPressureProblem(bp);
    if (problem) {
      errorBox.textContent = problem;
      return;
    }
    const body: ReviewSubmission = { gestational_week: week, next_review: next };
    if (weight) body.weight_kg = Number(weight);
    if (bp) body.blood_pressure = bp;
    const notes = String(data.get("notes") ?? "").trim();
    if (notes) body.notes = notes;
    const conditions = data.getAll("cond").map(String);
    if (conditions.length) body.conditions = conditions;
    try {
      await api.submitReview(woman.phone, body);
      onSaved();
    } catch (err) {
      errorBox.textContent = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    }
  });
  host.appendChild(form);
  host.appendChild(renderHistory(detail));
}

function renderHistory(detail: WomanDetailJson): HTMLElement {
  const wrap = document.createElement("div");
  const title = document.createElement("h4");
  title.textContent = "Review history";
  wrap.appendChild(title);
  if (detail.reviews.length === 0) {
    const p = document.createElement("p");
    p.className = "muted";
    p.textContent = "No reviews recorded yet.";
    wrap.appendChild(p);
    return wrap;
  }
  const table = document.createElement("table");
  table.innerHTML =
    "<thead><tr><th>#</th><th>Date</th><th>Week</th><th>Weight</th><th>BP</th>" +
    "<th>Next</th><th>Confirmed</th><th>Notes</th></tr></thead>";
  const body = document.createElement("tbody");
  for (const review of detail.reviews) {
    const row = document.createElement("tr");
    row.innerHTML =
      `<td>${review.seq}</td><td>${review.review_date}</td><td>${review.gestational_week}</td>` +
      `<td>${review.weight_kg ?? ""}</td><td>${review.blood_pressure ?? ""}</td>` +
      `<td>${review.next_review}</td><td>${review.confirmed ? "yes" : "no"}</td>` +
      `<td>${escapeHtml(review.notes ?? "")}</td>`;
    body.appendChild(row);
  }
  table.appendChild(body);
  wrap.appendChild(table);
  return wrap;
}
