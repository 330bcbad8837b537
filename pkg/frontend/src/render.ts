/** DOM rendering for the review workflow.  Framework-free: each render
 * rebuilds the review container from the session state.
 *
 * Bidirectional text is handled natively by stamping dir="auto" on every
 * element that shows document text, so mixed Persian/Latin content lays
 * out correctly without any direction detection of our own.
 */

import type { Correction, SentenceResult } from "./api.js";
import type { Decision, ReviewSession } from "./session.js";
import { tokenSpans } from "./session.js";

export interface RenderHandlers {
  onDecide(sentenceIndex: number, tokenIndex: number, decision: Decision): void;
  onUndecide(sentenceIndex: number, tokenIndex: number): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function bidi<T extends HTMLElement>(node: T): T {
  node.setAttribute("dir", "auto");
  return node;
}

export function renderCandidatePanel(
  doc: Document,
  correction: Correction,
): HTMLElement {
  const panel = el(doc, "div", "candidate-panel");
  const list = el(doc, "ol", "candidates");
  for (const candidate of correction.candidates) {
    const row = el(doc, "li", "candidate");
    row.dataset.word = candidate.word;
    if (candidate.word === correction.suggested) row.classList.add("suggested");
    row.appendChild(bidi(el(doc, "span", "candidate-word", candidate.word)));
    row.appendChild(el(doc, "span", "candidate-score", candidate.score.toFixed(3)));
    row.appendChild(el(doc, "span", "candidate-distance", `d${candidate.distance}`));
    if (candidate.perto_match) {
      row.appendChild(el(doc, "span", "badge badge-perto", "shape match"));
    }
    list.appendChild(row);
  }
  panel.appendChild(list);
  return panel;
}

function renderFlagControls(
  doc: Document,
  si: number,
  ti: number,
  correction: Correction | undefined,
  decision: Decision | undefined,
  handlers: RenderHandlers,
): HTMLElement {
  const controls = el(doc, "div", "flag-controls");

  if (correction) {
    const accept = el(doc, "button", "accept", `accept ${correction.suggested}`);
    bidi(accept);
    accept.addEventListener("click", () =>
      handlers.onDecide(si, ti, { kind: "accept" }),
    );
    controls.appendChild(accept);
  }

  const reject = el(doc, "button", "reject", "keep original");
  reject.addEventListener("click", () => handlers.onDecide(si, ti, { kind: "reject" }));
  controls.appendChild(reject);

  const manual = bidi(el(doc, "input", "manual"));
  manual.type = "text";
  manual.placeholder = "replace with…";
  const applyManual = el(doc, "button", "manual-apply", "replace");
  applyManual.addEventListener("click", () => {
    if (manual.value.trim().length > 0) {
      handlers.onDecide(si, ti, { kind: "manual", replacement: manual.value.trim() });
    }
  });
  controls.appendChild(manual);
  controls.appendChild(applyManual);

  if (decision) {
    const undo = el(doc, "button", "undo", "undo decision");
    undo.addEventListener("click", () => handlers.onUndecide(si, ti));
    controls.appendChild(undo);
  }

  return controls;
}

function decisionLabel(decision: Decision | undefined): string {
  if (!decision) return "undecided";
  if (decision.kind === "manual") return `manual: ${decision.replacement}`;
  return decision.kind === "accept" ? "accepted" : "rejected";
}

export function renderSentence(
  doc: Document,
  sentence: SentenceResult,
  si: number,
  session: ReviewSession,
  handlers: RenderHandlers,
): HTMLElement {
  const container = el(doc, "section", "sentence");
  container.dataset.sentenceIndex = String(si);

  const paragraph = bidi(el(doc, "p", "sentence-text"));
  const spans = tokenSpans(sentence.text);
  const flagged = new Map(sentence.detections.map((d) => [d.token_index, d]));
  let pos = 0;
  spans.forEach((span, ti) => {
    if (span.start > pos) {
      paragraph.appendChild(doc.createTextNode(sentence.text.slice(pos, span.start)));
    }
    const detection = flagged.get(ti);
    if (detection) {
      const mark = el(doc, "mark", `flag flag-${detection.error_class.toLowerCase()}`);
      mark.dataset.tokenIndex = String(ti);
      mark.textContent = span.surface;
      const decision = session.decisionFor(si, ti);
      if (decision?.kind === "reject") mark.classList.add("dimmed");
      paragraph.appendChild(mark);
    } else {
      paragraph.appendChild(doc.createTextNode(span.surface));
    }
    pos = span.end;
  });
  if (pos < sentence.text.length) {
    paragraph.appendChild(doc.createTextNode(sentence.text.slice(pos)));
  }
  container.appendChild(paragraph);

  if (sentence.error) {
    container.appendChild(
      el(doc, "p", "sentence-error", `scorer error: ${sentence.error}`),
    );
  }

  for (const detection of sentence.detections) {
    const ti = detection.token_index;
    const correction = session.correctionAt(si, ti);
    const decision = session.decisionFor(si, ti);
    const flagBox = el(doc, "div", "flag-box");
    flagBox.dataset.tokenIndex = String(ti);
    flagBox.appendChild(
      el(
        doc,
        "p",
        "flag-title",
        `${detection.error_class} · token ${ti} · ${decisionLabel(decision)}`,
      ),
    );
    if (correction) flagBox.appendChild(renderCandidatePanel(doc, correction));
    flagBox.appendChild(
      renderFlagControls(doc, si, ti, correction, decision, handlers),
    );
    container.appendChild(flagBox);
  }

  return container;
}

export function renderSession(
  root: HTMLElement,
  session: ReviewSession,
  handlers: RenderHandlers,
): void {
  const doc = root.ownerDocument;
  root.textContent = "";

  const hasSentenceErrors = session.check.sentences.some((s) => s.error);
  if (session.flagCount() === 0 && !hasSentenceErrors) {
    root.appendChild(el(doc, "p", "no-issues", "No issues found."));
  } else {
    const status = el(
      doc,
      "p",
      "review-status",
      `${session.flagCount()} flagged, ${session.decisionCount()} decided`,
    );
    root.appendChild(status);
    session.check.sentences.forEach((sentence, si) => {
      root.appendChild(renderSentence(doc, sentence, si, session, handlers));
    });
  }

  const preview = bidi(el(doc, "div", "preview"));
  preview.appendChild(el(doc, "h2", undefined, "Preview"));
  preview.appendChild(bidi(el(doc, "p", "preview-text", session.resolvedText())));
  root.appendChild(preview);
}

export function renderServiceError(root: HTMLElement, message: string): void {
  const doc = root.ownerDocument;
  root.textContent = "";
  const box = el(doc, "div", "service-error");
  box.appendChild(el(doc, "p", undefined, `Service error: ${message}`));
  box.appendChild(el(doc, "p", undefined, "Your text is unchanged; retry below."));
  const retry = el(doc, "button", "retry", "retry");
  box.appendChild(retry);
  root.appendChild(box);
}
