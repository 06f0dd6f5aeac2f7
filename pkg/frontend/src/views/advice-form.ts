import { ApiClient, ApiError } from "../api.js";
import type { AdviceJson, WomanJson } from "../types.js";
import { MAX_ADVICE_CHARS, adviceProblem } from "../validate.js";
import { escapeHtml } from "./women-list.js";

export function renderAdviceForm(
  host: HTMLElement,
  api: ApiClient,
  women: WomanJson[],
  ledger: AdviceJson[],
  onSent: () => void,
): void {
  host.replaceChildren();
  const form = document.createElement("form");
  const options = women
    .filter((w) => w.active)
    .map((w) => `<option value="${w.phone}">${escapeHtml(w.name)} (${w.phone})</option>`)
    .join("");
  form.innerHTML = `
    <label>From <select name="who"><option>MD</option><option>Admin</option></select></label>
    <label>To <select name="target"><option value="ALL">ALL active women</option>${options}</select></label>
    <label>Message <textarea name="text" rows="3" maxlength="400"></textarea></label>
    <p class="muted"><span class="count">0</span>/${MAX_ADVICE_CHARS} characters</p>
    <button type="submit">Send advice</button>
    <span class="error" role="alert"></span>
  `;
  const text = form.querySelector("textarea") as HTMLTextAreaElement;
  const counter = form.querySelector(".count") as HTMLElement;
  const errorBox = form.querySelector(".error") as HTMLElement;
  text.addEventListener("input", () => {
    counter.textContent = String(text.value.length);
    counter.parentElement!.classList.toggle("over", text.value.length > MAX_ADVICE_CHARS);
  });
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    errorBox.textContent = "";
    const problem = adviceProblem(text.value);
    if (problem) {
      errorBox.textContent = problem;
      return;
    }
    const data = new FormData(form);
    try {
      const result = await api.sendAdvice(
        data.get("who") as "MD" | "Admin",
        String(data.get("target")),
        text.value,
      );
      text.value = "";
      counter.textContent = "0";
      errorBox.textContent = "";
      form.querySelector("button")!.textContent = `Send advice (last: ${result.sent} sent)`;
      onSent();
    } catch (err) {
      errorBox.textContent = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    }
  });
  host.appendChild(form);
  host.appendChild(renderLedger(ledger));
}

function renderLedger(ledger: AdviceJson[]): HTMLElement {
  const wrap = document.createElement("div");
  const title = document.createElement("h4");
  title.textContent = "Advice history";
  wrap.appendChild(title);
  if (ledger.length === 0) {
    const p = document.createElement("p");
    p.className = "muted";
    p.textContent = "Nothing sent yet.";
    wrap.appendChild(p);
    return wrap;
  }
  const table = document.createElement("table");
  table.innerHTML =
    "<thead><tr><th>Phone</th><th>Trimester</th><th>Type</th><th>Who</th><th>Message</th></tr></thead>";
  const body = document.createElement("tbody");
  for (const row of [...ledger].reverse()) {
    const tr = document.createElement("tr");
    tr.innerHTML =
      `<td>${row.phone}</td><td>${row.trimester}</td><td>${row.type_of_advice}</td>` +
      `<td>${row.who_advisement}</td><td>${escapeHtml(row.message)}</td>`;
    body.appendChild(tr);
  }
  table.appendChild(body);
  wrap.appendChild(table);
  return wrap;
}
