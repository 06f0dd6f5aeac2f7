import type { WomanJson } from "../types.js";

export function renderWomenList(
  host: HTMLElement,
  women: WomanJson[],
  selectedPhone: string | null,
  onSelect: (phone: string) => void,
): void {
  host.replaceChildren();
  if (women.length === 0) {
    const empty = document.createElement("p");
    empty.className = "muted";
    empty.textContent = "No registered women yet.";
    host.appendChild(empty);
    return;
  }
  const table = document.createElement("table");
  table.innerHTML =
    "<thead><tr><th>Phone</th><th>Name</th><th>Age</th><th>Facility</th><th>Status</th></tr></thead>";
  const body = document.createElement("tbody");
  for (const woman of women) {
    const row = document.createElement("tr");
    row.className = woman.phone === selectedPhone ? "selected" : "";
    row.innerHTML =
      `<td>${woman.phone}</td><td>${escapeHtml(woman.name)}</td>` +
      `<td>${woman.age}</td><td>#${woman.assigned_facility}</td>` +
      `<td>${woman.active ? "active" : "released"}</td>`;
    row.addEventListener("click", () => onSelect(woman.phone));
    body.appendChild(row);
  }
  table.appendChild(body);
  host.appendChild(table);
}

export function escapeHtml(value: string): string {
  return value
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
