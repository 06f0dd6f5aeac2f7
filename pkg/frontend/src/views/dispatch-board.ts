import { ApiClient, ApiError } from "../api.js";
import type { OrderJson } from "../types.js";
import { escapeHtml } from "./women-list.js";

export function renderDispatchBoard(
  host: HTMLElement,
  api: ApiClient,
  orders: OrderJson[],
  onChanged: () => void,
): void {
  host.replaceChildren();
  if (orders.length === 0) {
    const p = document.createElement("p");
    p.className = "muted";
    p.textContent = "No rescue orders.";
    host.appendChild(p);
    return;
  }
  const table = document.createElement("table");
  table.innerHTML =
    "<thead><tr><th>#</th><th>Phone</th><th>Vehicle</th><th>Kit</th><th>From</th>" +
    "<th>km</th><th>Opened</th><th>Status</th><th></th></tr></thead>";
  const body = document.createElement("tbody");
  for (const order of [...orders].sort((a, b) => b.order_id - a.order_id)) {
    const row = document.createElement("tr");
    const status =
      order.status === "Open" ? "Open" : `Closed: ${escapeHtml(order.outcome ?? "")}`;
    row.innerHTML =
      `<td>${order.order_id}</td><td>${order.phone}</td><td>${order.vehicle}</td>` +
      `<td>${order.kit}</td><td>#${order.origin_facility}</td>` +
      `<td>${order.distance_km.toFixed(1)}</td><td>${order.created_at}</td><td>${status}</td>`;
    const cell = document.createElement("td");
    if (order.status === "Open") {
      const button = document.createElement("button");
      button.textContent = "Close";
      button.addEventListener("click", async () => {
        const outcome = window.prompt("Outcome?", "resolved") ?? "";
        button.disabled = true;
        try {
          await api.closeOrder(order.order_id, outcome);
        } catch (err) {
          // a dispatcher on another session may have won the race
          if (!(err instanceof ApiError && err.code === "AlreadyClosed")) {
            window.alert(String(err));
          }
        }
        onChanged();
      });
      cell.appendChild(button);
    }
    row.appendChild(cell);
    body.appendChild(row);
  }
  table.appendChild(body);
  host.appendChild(table);
}
