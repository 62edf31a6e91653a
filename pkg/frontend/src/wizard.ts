// <registration-wizard> — pick q of the 10 questions, answer them, submit.
// Selection uses one checkbox per question, so duplicate picks are
// impossible by construction. A rejected question (decoy pool too small
// for its letter) is flagged so the user can substitute another one.

import { ApiError, AuthApi, Catalog, CatalogQuestion } from "./api.js";

export class RegistrationWizard extends HTMLElement {
  api!: AuthApi;
  private catalog: Catalog | null = null;

  async connectedCallback(): Promise<void> {
    this.innerHTML = `<p class="loading">Loading questions…</p>`;
    try {
      this.catalog = await this.api.catalog();
    } catch (err) {
      this.innerHTML = `<p class="banner error">Service unreachable: ${(err as Error).message}</p>`;
      return;
    }
    this.render();
  }

  private render(): void {
    const { questions, params } = this.catalog!;
    const rows = questions.map((q) => this.questionRow(q)).join("");
    this.innerHTML = `
      <form id="wizard">
        <label>Username <input name="username" autocomplete="off" /></label>
        <p id="counter">Pick ${params.q} questions (0 selected)</p>
        <ol>${rows}</ol>
        <button type="submit" disabled>Register</button>
        <p id="status"></p>
      </form>
    `;
    this.querySelector("#wizard")!.addEventListener("input", () => this.refresh());
    this.querySelector("#wizard")!.addEventListener("change", () => this.refresh());
    this.querySelector("#wizard")!.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
  }

  private questionRow(q: CatalogQuestion): string {
    let field: string;
    if (q.kind === "fixed_choice") {
      const options = (q.labels ?? [])
        .map((label) => `<option value="${label}">${label}</option>`)
        .join("");
      field = `<select data-answer="${q.id}" disabled><option value=""></option>${options}</select>`;
    } else if (q.kind === "numeric_range") {
      field = `<input data-answer="${q.id}" type="number" min="${q.lo}" max="${q.hi}" disabled />`;
    } else {
      field = `<input data-answer="${q.id}" type="text" disabled />`;
    }
    return `
      <li data-question="${q.id}">
        <label><input type="checkbox" data-pick="${q.id}" /> ${q.text}</label>
        ${field}
        <span class="flag" hidden></span>
      </li>
    `;
  }

  private picks(): number[] {
    return [...this.querySelectorAll<HTMLInputElement>("input[data-pick]")]
      .filter((box) => box.checked)
      .map((box) => Number(box.dataset.pick));
  }

  private answerField(id: number): HTMLInputElement | HTMLSelectElement {
    return this.querySelector(`[data-answer="${id}"]`)!;
  }

  private refresh(): void {
    const q = this.catalog!.params.q;
    const picks = this.picks();
    for (const box of this.querySelectorAll<HTMLInputElement>("input[data-pick]")) {
      const field = this.answerField(Number(box.dataset.pick));
      field.disabled = !box.checked;
      if (!box.checked) field.value = "";
    }
    this.querySelector("#counter")!.textContent =
      `Pick ${q} questions (${picks.length} selected)`;
    const username = this.querySelector<HTMLInputElement>("input[name=username]")!.value;
    const complete =
      picks.length === q &&
      username.trim() !== "" &&
      picks.every((id) => this.answerField(id).value.trim() !== "");
    this.querySelector<HTMLButtonElement>("button[type=submit]")!.disabled = !complete;
  }

  answers(): { question: number; answer: string }[] {
    return this.picks().map((id) => ({
      question: id,
      answer: this.answerField(id).value.trim(),
    }));
  }

  private async submit(): Promise<void> {
    const status = this.querySelector("#status")!;
    const username = this.querySelector<HTMLInputElement>("input[name=username]")!.value.trim();
    for (const flag of this.querySelectorAll<HTMLElement>(".flag")) {
      flag.hidden = true;
      flag.textContent = "";
    }
    try {
      await this.api.register(username, this.answers());
    } catch (err) {
      if (err instanceof ApiError) {
        status.textContent = `Registration failed: ${err.detail.error}`;
        if (err.detail.question != null) {
          const row = this.querySelector(`li[data-question="${err.detail.question}"]`)!;
          const flag = row.querySelector<HTMLElement>(".flag")!;
          flag.hidden = false;
          flag.textContent =
            err.detail.message ?? "This answer cannot be used; pick a different question.";
        }
      } else {
        status.textContent = `Service unreachable: ${(err as Error).message}`;
      }
      return;
    }
    this.innerHTML = `<p class="banner success">Registered. You can log in now.</p>`;
    this.dispatchEvent(new CustomEvent("registered", { detail: { username }, bubbles: true }));
  }
}

customElements.define("registration-wizard", RegistrationWizard);
