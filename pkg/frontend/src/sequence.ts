// Option-sequence helpers shared by the login view and the tests.

const LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";

export function optionLetter(position: number): string {
  const letter = LETTERS[position];
  if (letter === undefined) throw new Error(`no option letter for ${position}`);
  return letter;
}

/** Echo field contents: selected letters in question order, dots for gaps. */
export function sequenceEcho(selections: ReadonlyArray<number | null>): string {
  return selections.map((s) => (s === null ? "·" : optionLetter(s))).join("");
}

/** The submittable sequence, or null while any question is unanswered. */
export function completeSequence(
  selections: ReadonlyArray<number | null>,
): string | null {
  if (selections.some((s) => s === null)) return null;
  return selections.map((s) => optionLetter(s as number)).join("");
}

/** Validates faster-login input: exactly `length` of the first `d` letters. */
export function isValidSequence(text: string, d: number, length: number): boolean {
  if (text.length !== length) return false;
  const allowed = LETTERS.slice(0, d);
  return [...text].every((ch) => allowed.includes(ch));
}
