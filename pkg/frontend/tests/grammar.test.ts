import { describe, expect, it } from "vitest";

import { validateCounterexample } from "../src/grammar.js";

describe("counterexample validation", () => {
  it("accepts plain inclusions", () => {
    expect(validateCounterexample("ci: A <= B").ok).toBe(true);
    expect(validateCounterexample("ri: r <= s").ok).toBe(true);
  });

  it("accepts conjunctions, top and nested restrictions", () => {
    expect(validateCounterexample("ci: A & B <= C").ok).toBe(true);
    expect(validateCounterexample("ci: top <= A").ok).toBe(true);
    expect(
      validateCounterexample("ci: P <= R & some(f, K) & some(c, Pe)").ok,
    ).toBe(true);
    expect(validateCounterexample("ci: some(r, some(s, A & B)) <= (A & B)").ok).toBe(true);
  });

  it("tolerates odd spacing", () => {
    expect(validateCounterexample("  ci:A<=B  ").ok).toBe(true);
    expect(validateCounterexample("ci: some( r ,  A )<=B").ok).toBe(true);
  });

  it("rejects a truncated inclusion with a position", () => {
    const verdict = validateCounterexample("ci: A <= ");
    expect(verdict.ok).toBe(false);
    expect(verdict.message).toMatch(/unexpected end/);
    expect(verdict.column).toBeGreaterThan(8);
  });

  it("rejects lines that are not inclusions", () => {
    expect(validateCounterexample("A <= B").ok).toBe(false);
    expect(validateCounterexample("hello").ok).toBe(false);
    expect(validateCounterexample("").ok).toBe(false);
  });

  it("rejects the == shorthand", () => {
    const verdict = validateCounterexample("ci: A == B");
    expect(verdict.ok).toBe(false);
    expect(verdict.message).toMatch(/single inclusion/);
  });

  it("rejects reserved words as identifiers", () => {
    expect(validateCounterexample("ci: some <= B").ok).toBe(false);
    expect(validateCounterexample("ri: role <= s").ok).toBe(false);
    expect(validateCounterexample("ci: some(top, A) <= B").ok).toBe(false);
  });

  it("rejects trailing garbage and unbalanced parens", () => {
    expect(validateCounterexample("ci: A <= B extra").ok).toBe(false);
    expect(validateCounterexample("ci: (A & B <= C").ok).toBe(false);
    expect(validateCounterexample("ci: A <= B)").ok).toBe(false);
  });
});
