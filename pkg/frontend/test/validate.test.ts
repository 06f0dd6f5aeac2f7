import { describe, expect, it } from "vitest";

import {
  MAX_ADVICE_CHARS,
  adviceProblem,
  bloodPressureProblem,
  gestationalWeekProblem,
  nextReviewProblem,
  phoneProblem,
  weightProblem,
} from "../src/validate.js";

describe("adviceProblem", () => {
  it("accepts text at exactly the limit", () => {
    expect(adviceProblem("x".repeat(MAX_ADVICE_CHARS))).toBeNull();
  });

  it("rejects 251 characters", () => {
    const problem = adviceProblem("x".repeat(251));
    expect(problem).toMatch(/251/);
  });

  it("rejects empty, pipes and newlines", () => {
    expect(adviceProblem("")).not.toBeNull();
    expect(adviceProblem("a|b")).not.toBeNull();
    expect(adviceProblem("a\nb")).not.toBeNull();
  });
});

describe("nextReviewProblem", () => {
  it("requires a strictly future date", () => {
    expect(nextReviewProblem("2012-11-01", "2012-11-01")).not.toBeNull();
    expect(nextReviewProblem("2012-10-31", "2012-11-01")).not.toBeNull();
    expect(nextReviewProblem("2012-11-02", "2012-11-01")).toBeNull();
  });

  it("rejects malformed dates", () => {
    expect(nextReviewProblem("11/02/2012", "2012-11-01")).not.toBeNull();
    expect(nextReviewProblem("2012-13-45", "2012-11-01")).not.toBeNull();
  });
});

describe("field checks", () => {
  it("gestational week bounds", () => {
    expect(gestationalWeekProblem(1)).toBeNull();
    expect(gestationalWeekProblem(45)).toBeNull();
    expect(gestationalWeekProblem(0)).not.toBeNull();
    expect(gestationalWeekProblem(46)).not.toBeNull();
    expect(gestationalWeekProblem(12.5)).not.toBeNull();
  });

  it("blood pressure format, optional", () => {
    expect(bloodPressureProblem("")).toBeNull();
    expect(bloodPressureProblem("118/76")).toBeNull();
    expect(bloodPressureProblem("high")).not.toBeNull();
  });

  it("weight and phone", () => {
    expect(weightProblem("")).toBeNull();
    expect(weightProblem("63.5")).toBeNull();
    expect(weightProblem("-2")).not.toBeNull();
    expect(phoneProblem("07504432147")).toBeNull();
    expect(phoneProblem("12ab")).not.toBeNull();
  });
});
