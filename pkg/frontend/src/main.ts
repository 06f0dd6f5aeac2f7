// Console shell: tab navigation plus a 2 s polling loop per active view.

import { ApiClient } from "./api.js";
import { buildMapModel } from "./markers.js";
import { startPolling } from "./poll.js";
import { renderAdviceForm } from "./views/advice-form.js";
import { renderDispatchBoard } from "./views/dispatch-board.js";
import { renderMap } from "./views/map-view.js";
import { renderReviewForm } from "./views/review-form.js";
import { renderWomenList } from "./views/women-list.js";

const POLL_MS = 2000;
const api = new ApiClient("");

type Tab = "women" | "advice" | "dispatch" | "map";

const state = {
  tab: "women" as Tab,
  selectedPhone: null as string | null,
  stop: null as (() => void) | null,
};

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function setStatus(message: string, isError = false): void {
  const bar = el("status");
  bar.textContent = message;
  bar.classList.toggle("error", isError);
}

async function refreshClock(): Promise<void> {
  const clock = await api.clock();
  el("clock").textContent = `${clock.now} (${clock.mode} clock)`;
}

async function refreshWomenTab(): Promise<void> {
  const women = await api.listWomen();
  renderWomenList(el("women-list"), women, state.selectedPhone, (phone) => {
    state.selectedPhone = phone;
    void refreshWomenTab();
  });
  const formHost = el("review-form");
  if (state.selectedPhone) {
    const detail = await api.womanDetail(state.selectedPhone);
    const today = (await api.clock()).now.slice(0, 10);
    renderReviewForm(formHost, api, detail, today, () => {
      setStatus(`review saved for ${state.selectedPhone}`);
      void refreshWomenTab();
    });
  } else {
    formHost.innerHTML = '<p class="muted">Select a woman to enter a review.</p>';
  }
}

async function refreshAdviceTab(): Promise<void> {
  const [women, ledger] = await Promise.all([api.listWomen(), api.adviceLedger()]);
  renderAdviceForm(el("advice-host"), api, women, ledger, () => {
    setStatus("advice queued");
    void refreshAdviceTab();
  });
}

async function refreshDispatchTab(): Promise<void> {
  const orders = await api.dispatchBoard();
  renderDispatchBoard(el("dispatch-host"), api, orders, () => void refreshDispatchTab());
}

async function refreshMapTab(): Promise<void> {
  const [facilities, women] = await Promise.all([api.facilities(), api.listWomen()]);
  const picker = el("map-picker") as HTMLSelectElement;
  const current = state.selectedPhone ?? "";
  picker.replaceChildren(new Option("nobody selected", ""));
  for (const woman of women) {
    picker.appendChild(new Option(`${woman.name} (${woman.phone})`, woman.phone));
  }
  picker.value = current;
  renderMap(el("map-host"), buildMapModel(facilities, women, state.selectedPhone));
}

const REFRESH: Record<Tab, () => Promise<void>> = {
  women: refreshWomenTab,
  advice: refreshAdviceTab,
  dispatch: refreshDispatchTab,
  map: refreshMapTab,
};

function activate(tab: Tab): void {
  state.tab = tab;
  for (const button of document.querySelectorAll<HTMLButtonElement>("nav button[data-tab]")) {
    button.classList.toggle("active", button.dataset.tab === tab);
  }
  for (const section of document.querySelectorAll<HTMLElement>("main > section")) {
    section.hidden = section.id !== `tab-${tab}`;
  }
  state.stop?.();
  state.stop = startPolling(
    async () => {
      await REFRESH[tab]();
      await refreshClock();
      setStatus("connected");
    },
    POLL_MS,
    (err) => setStatus(String(err), true),
  );
}

function init(): void {
  for (const button of document.querySelectorAll<HTMLButtonElement>("nav button[data-tab]")) {
    button.addEventListener("click", () => activate(button.dataset.tab as Tab));
  }
  (el("map-picker") as HTMLSelectElement).addEventListener("change", (event) => {
    const value = (event.target as HTMLSelectElement).value;
    state.selectedPhone = value || null;
    void refreshMapTab();
  });
  el("tick-button").addEventListener("click", async () => {
    try {
      const result = await api.tick(24 * 60);
      setStatus(`advanced one day, ${result.sent} messages sent`);
      await REFRESH[state.tab]();
      await refreshClock();
    } catch (err) {
      setStatus(String(err), true);
    }
  });
  activate("women");
}

document.addEventListener("DOMContentLoaded", init);
