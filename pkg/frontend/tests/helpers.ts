// Small DOM-driving helpers shared by the component specs.

export async function until(
  condition: () => boolean,
  timeoutMs = 5000,
): Promise<void> {
  const start = Date.now();
  while (!condition()) {
    if (Date.now() - start > timeoutMs) throw new Error("timed out waiting for condition");
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
}

export function setInput(field: HTMLInputElement | HTMLSelectElement, value: string): void {
  field.value = value;
  field.dispatchEvent(new Event("input", { bubbles: true }));
  field.dispatchEvent(new Event("change", { bubbles: true }));
}

export function check(box: HTMLInputElement, checked = true): void {
  box.checked = checked;
  box.dispatchEvent(new Event("change", { bubbles: true }));
}

export function pickRadio(radio: HTMLInputElement): void {
  radio.checked = true;
  radio.dispatchEvent(new Event("change", { bubbles: true }));
}

export function submit(form: HTMLFormElement): void {
  form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
}

export function mount<T extends HTMLElement>(element: T): T {
  document.body.append(element);
  return element;
}

export function unmountAll(): void {
  document.body.replaceChildren();
}
