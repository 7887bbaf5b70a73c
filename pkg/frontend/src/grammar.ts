/** Client-side validation of counterexample lines, mirroring the server
 * grammar so malformed input never leaves the browser:
 *
 *   line    := "ci:" concept "<=" concept | "ri:" IDENT "<=" IDENT
 *   concept := term { "&" term }
 *   term    := "top" | IDENT | "some" "(" IDENT "," concept ")" | "(" concept ")"
 *
 * A counterexample is a single inclusion, so the `==` shorthand (which
 * expands to two) is rejected here.
 */

export const RESERVED_WORDS = new Set(["top", "some", "role"]);

export interface ValidationResult {
  ok: boolean;
  message?: string;
  column?: number; // 1-based position of the offending token
}

interface Token {
  text: string;
  column: number;
}

const TOKEN_RE = /[A-Za-z_][A-Za-z0-9_]*|<=|==|[(),&]|\S/g;

function tokenize(text: string): Token[] {
  const tokens: Token[] = [];
  for (const match of text.matchAll(TOKEN_RE)) {
    tokens.push({ text: match[0], column: (match.index ?? 0) + 1 });
  }
  return tokens;
}

const IDENT_RE = /^[A-Za-z_][A-Za-z0-9_]*$/;

class Parser {
  private pos = 0;

  constructor(
    private readonly tokens: Token[],
    private readonly lineLength: number,
  ) {}

  private fail(message: string): never {
    const column =
      this.pos < this.tokens.length
        ? this.tokens[this.pos]!.column
        : this.lineLength + 1;
    throw { message, column };
  }

  peek(): string | null {
    return this.pos < this.tokens.length ? this.tokens[this.pos]!.text : null;
  }

  take(): Token {
    if (this.pos >= this.tokens.length) this.fail("unexpected end of line");
    return this.tokens[this.pos++]!;
  }

  expect(text: string): void {
    const token = this.take();
    if (token.text !== text) {
      this.pos -= 1;
      this.fail(`expected '${text}', got '${token.text}'`);
    }
  }

  identifier(what: string): string {
    const token = this.take();
    if (RESERVED_WORDS.has(token.text)) {
      this.pos -= 1;
      this.fail(`reserved word '${token.text}' cannot be used as ${what}`);
    }
    if (!IDENT_RE.test(token.text)) {
      this.pos -= 1;
      this.fail(`expected ${what}, got '${token.text}'`);
    }
    return token.text;
  }

  concept(): void {
    this.term();
    while (this.peek() === "&") {
      this.take();
      this.term();
    }
  }

  term(): void {
    const token = this.take();
    if (token.text === "top") return;
    if (token.text === "some") {
      if (this.peek() !== "(") {
        this.pos -= 1;
        this.fail("reserved word 'some' cannot be used as a concept name");
      }
      this.expect("(");
      this.identifier("a role name");
      this.expect(",");
      this.concept();
      this.expect(")");
      return;
    }
    if (token.text === "(") {
      this.concept();
      this.expect(")");
      return;
    }
    if (RESERVED_WORDS.has(token.text)) {
      this.pos -= 1;
      this.fail(`reserved word '${token.text}' cannot be used as a concept name`);
    }
    if (!IDENT_RE.test(token.text)) {
      this.pos -= 1;
      this.fail(`unexpected token '${token.text}'`);
    }
  }

  end(): void {
    if (this.pos < this.tokens.length) {
      this.fail(`trailing input '${this.tokens[this.pos]!.text}'`);
    }
  }
}

/** Validate one `ci:`/`ri:` counterexample line. */
export function validateCounterexample(line: string): ValidationResult {
  const headMatch = /^\s*(ci|ri)\s*:/.exec(line);
  if (!headMatch) {
    return {
      ok: false,
      message: "a counterexample starts with 'ci:' or 'ri:'",
      column: 1,
    };
  }
  const kind = headMatch[1];
  const rest = line.slice(headMatch[0].length);
  const offset = headMatch[0].length;
  const tokens = tokenize(rest).map((t) => ({
    text: t.text,
    column: t.column + offset,
  }));
  const parser = new Parser(tokens, line.length);
  try {
    if (kind === "ri") {
      parser.identifier("a role name");
      parser.expect("<=");
      parser.identifier("a role name");
      parser.end();
      return { ok: true };
    }
    parser.concept();
    const op = parser.take();
    if (op.text === "==") {
      return {
        ok: false,
        message: "a counterexample is a single inclusion; use '<=', not '=='",
        column: op.column,
      };
    }
    if (op.text !== "<=") {
      return { ok: false, message: `expected '<=', got '${op.text}'`, column: op.column };
    }
    parser.concept();
    parser.end();
    return { ok: true };
  } catch (err) {
    const { message, column } = err as { message: string; column: number };
    return { ok: false, message, column };
  }
}
