/** Caption editor: a textarea with a mirrored overlay for highlights.
 *
 * Shift-Enter sends the caption to the service exactly once; while the
 * request is in flight the textarea is disabled and further Shift-Enters
 * are ignored.  Reference spans render as palette-colored highlights,
 * factual errors as red squiggles, emphasis mismatches as blue squiggles.
 * The service reports byte offsets into the UTF-8 caption, so offsets are
 * translated to JS string indices before rendering.
 */

import type { CheckResult, ServiceClient } from "./api.js";
import type { Store } from "./state.js";

function utf8Length(codePoint: number): number {
  if (codePoint < 0x80) return 1;
  if (codePoint < 0x800) return 2;
  if (codePoint < 0x10000) return 3;
  return 4;
}

/** Converter from UTF-8 byte offsets to UTF-16 code-unit offsets. */
export function byteToCharConverter(text: string): (byte: number) => number {
  const starts: number[] = []; // byte offset at which each code unit begins
  let byte = 0;
  for (const cp of text) {
    const bytes = utf8Length(cp.codePointAt(0)!);
    starts.push(byte);
    if (cp.length === 2) starts.push(byte); // low surrogate shares the start
    byte += bytes;
  }
  const total = byte;
  return (b: number) => {
    if (b <= 0) return 0;
    if (b >= total) return text.length;
    // binary search: last code unit starting at or before b
    let lo = 0;
    let hi = starts.length - 1;
    while (lo < hi) {
      const mid = (lo + hi + 1) >> 1;
      if (starts[mid]! <= b) lo = mid;
      else hi = mid - 1;
    }
    return lo;
  };
}

interface CharStyle {
  palette: number | null;
  squiggle: "factual" | "mismatch" | null;
  refIndex: number | null;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

/** Overlay HTML for a caption and its check result. */
export function renderOverlayHtml(caption: string, result: CheckResult | null): string {
  if (!result || caption.length === 0) return escapeHtml(caption);
  const toChar = byteToCharConverter(caption);
  const styles: CharStyle[] = Array.from(caption, () => ({
    palette: null,
    squiggle: null,
    refIndex: null,
  }));

  const paint = (
    spans: [number, number][],
    apply: (style: CharStyle) => void,
  ): void => {
    for (const [lo, hi] of spans) {
      const from = toChar(lo);
      const to = toChar(hi);
      for (let i = from; i < to && i < styles.length; i++) apply(styles[i]!);
    }
  };

  result.references.forEach((ref, index) => {
    paint([ref.span, ...ref.timeSpans], (s) => {
      s.palette = ref.palette;
      s.refIndex = index;
    });
  });
  for (const diag of result.diagnostics) {
    paint(diag.spans, (s) => {
      if (s.squiggle !== "factual") s.squiggle = diag.kind;
    });
  }

  const pieces: string[] = [];
  let i = 0;
  while (i < caption.length) {
    const style = styles[i]!;
    let j = i + 1;
    while (
      j < caption.length &&
      styles[j]!.palette === style.palette &&
      styles[j]!.squiggle === style.squiggle &&
      styles[j]!.refIndex === style.refIndex
    ) {
      j++;
    }
    const text = escapeHtml(caption.slice(i, j));
    if (style.palette === null && style.squiggle === null) {
      pieces.push(text);
    } else {
      const classes: string[] = [];
      if (style.palette !== null) classes.push("ref-highlight", `palette-${style.palette}`);
      if (style.squiggle !== null) classes.push(`squiggle-${style.squiggle}`);
      const refAttr = style.refIndex !== null ? ` data-ref="${style.refIndex}"` : "";
      pieces.push(`<span class="${classes.join(" ")}"${refAttr}>${text}</span>`);
    }
    i = j;
  }
  return pieces.join("");
}

export interface Editor {
  root: HTMLElement;
  textarea: HTMLTextAreaElement;
  /** Runs one check round trip; resolves false if one was already running. */
  runCheck(): Promise<boolean>;
}

export function createEditor(
  container: HTMLElement,
  store: Store,
  client: ServiceClient,
): Editor {
  const root = document.createElement("div");
  root.className = "editor";
  const overlay = document.createElement("div");
  overlay.className = "caption-overlay";
  overlay.setAttribute("aria-hidden", "true");
  const textarea = document.createElement("textarea");
  textarea.className = "caption-input";
  textarea.placeholder = "Describe the chart, then press Shift-Enter to check";
  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.hidden = true;
  root.append(overlay, textarea, banner);
  container.append(root);

  let lastOverlayHtml: string | null = null;
  const refreshOverlay = (): void => {
    const { result, emphasisDisplayMode, captionText } = store.get();
    const html = emphasisDisplayMode
      ? renderOverlayHtml(captionText, result)
      : renderOverlayHtml(captionText, null);
    // skip identical rebuilds so hovering doesn't detach the node under
    // the cursor
    if (html !== lastOverlayHtml) {
      overlay.innerHTML = html;
      lastOverlayHtml = html;
    }
  };

  textarea.addEventListener("input", () => {
    store.update({ captionText: textarea.value });
  });
  textarea.addEventListener("scroll", () => {
    overlay.scrollTop = textarea.scrollTop;
    overlay.scrollLeft = textarea.scrollLeft;
  });

  const setReferenceHover = (node: Element | null): void => {
    const ref = node?.closest?.("[data-ref]")?.getAttribute("data-ref");
    const current = store.get().hoverTarget;
    if (ref !== null && ref !== undefined) {
      const index = Number(ref);
      if (current?.kind !== "reference" || current.index !== index) {
        store.update({ hoverTarget: { kind: "reference", index } });
      }
    } else if (current?.kind === "reference") {
      store.update({ hoverTarget: null });
    }
  };

  overlay.addEventListener("mouseover", (event) => {
    setReferenceHover(event.target as Element);
  });
  overlay.addEventListener("mouseout", () => {
    if (store.get().hoverTarget?.kind === "reference") {
      store.update({ hoverTarget: null });
    }
  });

  // The textarea paints above the overlay, so highlight hovers are found by
  // hit-testing the point with the textarea briefly removed from the pointer
  // path.  Keeping the overlay inert otherwise leaves caret clicks intact.
  textarea.addEventListener("mousemove", (event) => {
    if (typeof document.elementFromPoint !== "function") return;
    textarea.style.pointerEvents = "none";
    overlay.style.pointerEvents = "auto";
    const hit = document.elementFromPoint(event.clientX, event.clientY);
    textarea.style.pointerEvents = "";
    overlay.style.pointerEvents = "";
    setReferenceHover(hit);
  });
  textarea.addEventListener("mouseleave", () => {
    if (store.get().hoverTarget?.kind === "reference") {
      store.update({ hoverTarget: null });
    }
  });

  async function runCheck(): Promise<boolean> {
    const { sessionId, spec } = store.get();
    if (sessionId === null) return false;
    if (!store.beginCheck()) return false;
    textarea.disabled = true;
    banner.hidden = true;
    try {
      const result = await client.checkCaption(
        sessionId,
        textarea.value,
        spec ?? undefined,
      );
      store.update({ captionText: textarea.value, result });
    } catch (err) {
      banner.textContent =
        err instanceof Error ? `check failed: ${err.message}` : "check failed";
      banner.hidden = false;
    } finally {
      textarea.disabled = false;
      store.endCheck();
    }
    return true;
  }

  textarea.addEventListener("keydown", (event) => {
    if (event.key === "Enter" && event.shiftKey) {
      event.preventDefault();
      void runCheck();
    }
  });

  store.subscribe(refreshOverlay);
  refreshOverlay();
  return { root, textarea, runCheck };
}
