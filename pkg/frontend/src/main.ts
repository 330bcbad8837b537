/** Browser entry point: wires the textarea, the service client, the review
 * session, and export.  State of record is the ReviewSession; every user
 * action re-renders from it and saves a draft to localStorage.
 */

import { ApiError, CheckScheduler, SpellkitClient } from "./api.js";
import { renderServiceError, renderSession } from "./render.js";
import { ReviewSession } from "./session.js";
import type { Decision } from "./session.js";

const DRAFT_KEY = "spellkit-review-draft";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const sourceInput = byId<HTMLTextAreaElement>("source");
const baseUrlInput = byId<HTMLInputElement>("base-url");
const checkButton = byId<HTMLButtonElement>("check");
const exportButton = byId<HTMLButtonElement>("export");
const copyButton = byId<HTMLButtonElement>("copy");
const downloadLink = byId<HTMLAnchorElement>("download");
const reviewRoot = byId<HTMLDivElement>("review");
const exportBox = byId<HTMLDivElement>("export-box");
const exportText = byId<HTMLParagraphElement>("export-text");
const healthLine = byId<HTMLParagraphElement>("health");

let session: ReviewSession | null = null;

const params = new URLSearchParams(window.location.search);
baseUrlInput.value = params.get("api") ?? window.location.origin;

const client = () => new SpellkitClient(baseUrlInput.value);

function saveDraft(): void {
  if (session) window.localStorage.setItem(DRAFT_KEY, session.serialize());
}

function handlers() {
  return {
    onDecide(si: number, ti: number, decision: Decision): void {
      session?.decide(si, ti, decision);
      rerender();
    },
    onUndecide(si: number, ti: number): void {
      session?.undecide(si, ti);
      rerender();
    },
  };
}

function rerender(): void {
  if (!session) return;
  renderSession(reviewRoot, session, handlers());
  exportBox.hidden = true;
  saveDraft();
}

async function runCheck(text: string): Promise<void> {
  if (text.trim().length === 0) {
    reviewRoot.textContent = "";
    return;
  }
  try {
    const response = await client().check(text);
    session = new ReviewSession(text, response);
    rerender();
  } catch (error) {
    const message = error instanceof ApiError ? error.message : String(error);
    renderServiceError(reviewRoot, message);
    reviewRoot
      .querySelector<HTMLButtonElement>("button.retry")
      ?.addEventListener("click", () => scheduler.flush(sourceInput.value));
  }
}

const scheduler = new CheckScheduler(runCheck);

sourceInput.addEventListener("input", () => scheduler.request(sourceInput.value));
checkButton.addEventListener("click", () => scheduler.flush(sourceInput.value));

byId<HTMLInputElement>("load-file").addEventListener("change", (event) => {
  const file = (event.target as HTMLInputElement).files?.[0];
  if (!file) return;
  void file.text().then((text) => {
    sourceInput.value = text;
    scheduler.flush(text);
  });
});

exportButton.addEventListener("click", async () => {
  if (!session) return;
  const preview = session.resolvedText();
  try {
    const result = await client().apply(
      session.check.text,
      session.appliedCorrections(),
    );
    if (result.text !== preview) {
      console.warn("preview/export mismatch", { preview, exported: result.text });
    }
    exportText.textContent = result.text;
    downloadLink.href = URL.createObjectURL(
      new Blob([result.text], { type: "text/plain;charset=utf-8" }),
    );
    exportBox.hidden = false;
  } catch (error) {
    const message = error instanceof ApiError ? error.message : String(error);
    exportText.textContent = `Export failed: ${message} — decisions kept, retry when the service is back.`;
    exportBox.hidden = false;
  }
});

copyButton.addEventListener("click", () => {
  const text = exportText.textContent ?? "";
  void navigator.clipboard.writeText(text);
});

function restoreDraft(): void {
  const raw = window.localStorage.getItem(DRAFT_KEY);
  if (!raw) return;
  try {
    session = ReviewSession.deserialize(raw);
    sourceInput.value = session.source;
    renderSession(reviewRoot, session, handlers());
  } catch {
    window.localStorage.removeItem(DRAFT_KEY);
  }
}

async function showHealth(): Promise<void> {
  try {
    const health = await client().health();
    healthLine.textContent =
      `service ${health.status} · ${health.lexicon_entries} lexicon entries · ` +
      `${health.scorer_backend}/${health.distance_backend}`;
  } catch {
    healthLine.textContent = "service unreachable";
  }
}

restoreDraft();
void showHealth();
