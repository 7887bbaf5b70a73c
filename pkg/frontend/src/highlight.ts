/** Syntax highlighting for inclusion text: conjunction symbols and
 * `some(...)` restrictions get their own spans.  Output is HTML with all
 * source text escaped. */

const escapeHtml = (text: string): string =>
  text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");

const PIECE_RE = /some\s*\(|[(),&]|<=|[A-Za-z_][A-Za-z0-9_]*\s*:|[A-Za-z_][A-Za-z0-9_]*/g;

/** One line of the TBox grammar to highlighted HTML. */
export function highlightLine(line: string): string {
  let html = "";
  let cursor = 0;
  for (const match of line.matchAll(PIECE_RE)) {
    const start = match.index ?? 0;
    html += escapeHtml(line.slice(cursor, start));
    const piece = match[0];
    if (piece.startsWith("some")) {
      html += `<span class="kw-some">${escapeHtml(piece)}</span>`;
    } else if (piece === "&") {
      html += `<span class="op-conj">&amp;</span>`;
    } else if (piece === "<=" || piece === "(" || piece === ")" || piece === ",") {
      html += `<span class="op">${escapeHtml(piece)}</span>`;
    } else if (piece.endsWith(":")) {
      html += `<span class="kw-head">${escapeHtml(piece)}</span>`;
    } else if (piece === "top") {
      html += `<span class="kw-top">${escapeHtml(piece)}</span>`;
    } else {
      html += `<span class="name">${escapeHtml(piece)}</span>`;
    }
    cursor = start + piece.length;
  }
  html += escapeHtml(line.slice(cursor));
  return html;
}

/** Multi-line payloads (equivalence-query hypotheses) line by line. */
export function highlightBlock(text: string): string {
  return text
    .split("\n")
    .map((line) => (line ? highlightLine(line) : ""))
    .join("<br>");
}
