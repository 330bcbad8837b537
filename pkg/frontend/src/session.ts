/** Review session state: the checked text, the service's findings, and the
 * reviewer's per-flag decisions.
 *
 * The one piece of text manipulation done client-side is the preview
 * splice, and it must agree byte-for-byte with the service's /v1/apply:
 * sentences are located in order inside the checked text, tokens are
 * non-whitespace runs with edge punctuation stripped, and replacements
 * are spliced at the token's character span.  Everything else defers to
 * the service.
 */

import type { ApplyCorrection, CheckResponse, Correction, Detection } from "./api.js";

export type Decision =
  | { kind: "accept" }
  | { kind: "reject" }
  | { kind: "manual"; replacement: string };

export interface TokenSpan {
  start: number;
  end: number;
  surface: string;
}

const isPunct = (ch: string): boolean => /\p{P}/u.test(ch);

/** Token character spans within one sentence string: non-whitespace runs
 * with leading/trailing punctuation stripped; all-punctuation runs are
 * skipped.  Mirrors the service's tokenizer. */
export function tokenSpans(sentenceText: string): TokenSpan[] {
  const spans: TokenSpan[] = [];
  for (const match of sentenceText.matchAll(/\S+/gu)) {
    const chunk = match[0];
    let lead = 0;
    while (lead < chunk.length && isPunct(chunk.charAt(lead))) lead += 1;
    let tail = chunk.length;
    while (tail > lead && isPunct(chunk.charAt(tail - 1))) tail -= 1;
    if (tail === lead) continue;
    spans.push({
      start: match.index + lead,
      end: match.index + tail,
      surface: chunk.slice(lead, tail),
    });
  }
  return spans;
}

const key = (sentenceIndex: number, tokenIndex: number): string =>
  `${sentenceIndex}:${tokenIndex}`;

interface SessionState {
  source: string;
  check: CheckResponse;
  decisions: [string, Decision][];
}

export class ReviewSession {
  private readonly decisions = new Map<string, Decision>();

  constructor(
    readonly source: string,
    readonly check: CheckResponse,
  ) {}

  detectionAt(sentenceIndex: number, tokenIndex: number): Detection | undefined {
    return this.check.sentences[sentenceIndex]?.detections.find(
      (d) => d.token_index === tokenIndex,
    );
  }

  correctionAt(sentenceIndex: number, tokenIndex: number): Correction | undefined {
    return this.check.sentences[sentenceIndex]?.corrections.find(
      (c) => c.token_index === tokenIndex,
    );
  }

  decisionFor(sentenceIndex: number, tokenIndex: number): Decision | undefined {
    return this.decisions.get(key(sentenceIndex, tokenIndex));
  }

  /** Record a reviewer decision for a flagged token.  Decisions are
   * reversible until export; deciding again overwrites. */
  decide(sentenceIndex: number, tokenIndex: number, decision: Decision): void {
    if (!this.detectionAt(sentenceIndex, tokenIndex)) {
      throw new Error(`no detection at sentence ${sentenceIndex}, token ${tokenIndex}`);
    }
    if (decision.kind === "accept" && !this.correctionAt(sentenceIndex, tokenIndex)) {
      throw new Error(
        `nothing to accept at sentence ${sentenceIndex}, token ${tokenIndex}`,
      );
    }
    if (decision.kind === "manual" && decision.replacement.length === 0) {
      throw new Error("manual replacement must be non-empty");
    }
    this.decisions.set(key(sentenceIndex, tokenIndex), decision);
  }

  undecide(sentenceIndex: number, tokenIndex: number): void {
    this.decisions.delete(key(sentenceIndex, tokenIndex));
  }

  decisionCount(): number {
    return this.decisions.size;
  }

  flagCount(): number {
    return this.check.sentences.reduce((n, s) => n + s.detections.length, 0);
  }

  /** The replacement a decision implies, or null when the token stays. */
  private replacementFor(sentenceIndex: number, tokenIndex: number): string | null {
    const decision = this.decisions.get(key(sentenceIndex, tokenIndex));
    if (!decision || decision.kind === "reject") return null;
    if (decision.kind === "manual") return decision.replacement;
    const correction = this.correctionAt(sentenceIndex, tokenIndex);
    return correction ? correction.suggested : null;
  }

  /** Accepted and manual decisions in service order, ready for /v1/apply. */
  appliedCorrections(): ApplyCorrection[] {
    const out: ApplyCorrection[] = [];
    this.check.sentences.forEach((sentence, si) => {
      for (const detection of sentence.detections) {
        const replacement = this.replacementFor(si, detection.token_index);
        if (replacement !== null) {
          out.push({
            sentence_index: si,
            token_index: detection.token_index,
            replacement,
          });
        }
      }
    });
    return out;
  }

  /** Client-side preview of the export: the checked text with accepted and
   * manual replacements spliced in.  Undecided and rejected flags leave the
   * original text.  Must equal the service's /v1/apply result for the same
   * decision set. */
  resolvedText(): string {
    const text = this.check.text;
    const edits: { start: number; end: number; replacement: string }[] = [];
    let cursor = 0;
    this.check.sentences.forEach((sentence, si) => {
      const start = text.indexOf(sentence.text, cursor);
      if (start < 0) {
        throw new Error(`sentence ${si} not found in checked text`);
      }
      cursor = start + sentence.text.length;
      const spans = tokenSpans(sentence.text);
      for (const detection of sentence.detections) {
        const replacement = this.replacementFor(si, detection.token_index);
        if (replacement === null) continue;
        const span = spans[detection.token_index];
        if (!span) {
          throw new Error(
            `token ${detection.token_index} out of range in sentence ${si}`,
          );
        }
        edits.push({ start: start + span.start, end: start + span.end, replacement });
      }
    });
    edits.sort((a, b) => a.start - b.start);
    let resolved = "";
    let pos = 0;
    for (const edit of edits) {
      resolved += text.slice(pos, edit.start) + edit.replacement;
      pos = edit.end;
    }
    return resolved + text.slice(pos);
  }

  /** Lossless draft serialization (save/restore across page loads). */
  serialize(): string {
    const state: SessionState = {
      source: this.source,
      check: this.check,
      decisions: [...this.decisions.entries()],
    };
    return JSON.stringify(state);
  }

  static deserialize(raw: string): ReviewSession {
    const state = JSON.parse(raw) as SessionState;
    if (
      typeof state.source !== "string" ||
      typeof state.check !== "object" ||
      !Array.isArray(state.decisions)
    ) {
      throw new Error("malformed session draft");
    }
    const session = new ReviewSession(state.source, state.check);
    for (const [k, decision] of state.decisions) {
      session.decisions.set(k, decision);
    }
    return session;
  }
}
