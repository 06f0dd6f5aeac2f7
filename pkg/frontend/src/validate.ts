// Client-side input checks. Every rule here is enforced by the server too;
// the console only short-circuits the obvious mistakes for faster feedback.

export const MAX_ADVICE_CHARS = 250;

export function adviceProblem(text: string): string | null {
  if (text.length === 0) return "advice text is empty";
  if (text.length > MAX_ADVICE_CHARS) {
    return `advice is ${text.length} characters, the limit is ${MAX_ADVICE_CHARS}`;
  }
  if (text.includes("|")) return "advice may not contain '|'";
  if (text.includes("\n") || text.includes("\r")) return "advice must be a single line";
  return null;
}

export function nextReviewProblem(isoDate: string, today: string): string | null {
  if (!/^\d{4}-\d{2}-\d{2}$/.test(isoDate)) return "date must be YYYY-MM-DD";
  if (Number.isNaN(Date.parse(isoDate))) return "not a real calendar date";
  if (isoDate <= today) return "next review must be after today";
  return null;
}

export function gestationalWeekProblem(week: number): string | null {
  if (!Number.isInteger(week)) return "week must be a whole number";
  if (week < 1 || week > 45) return "week must be between 1 and 45";
  return null;
}

export function bloodPressureProblem(value: string): string | null {
  if (value === "") return null; // optional field
  if (!/^\d{2,3}\/\d{2,3}$/.test(value)) return "blood pressure looks like 118/76";
  return null;
}

export function weightProblem(value: string): string | null {
  if (value === "") return null; // optional field
  const parsed = Number(value);
  if (Number.isNaN(parsed) || parsed <= 0 || parsed > 300) return "weight must be in kilograms";
  return null;
}

export function phoneProblem(phone: string): string | null {
  if (!/^[0-9]{7,15}$/.test(phone)) return "phone must be 7 to 15 digits";
  return null;
}
