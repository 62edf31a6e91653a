// <login-view> — the questionnaire login screen.
//
// Naive path: read each card, pick a radio; the echo line always shows the
// letters picked so far, in question order. Faster path: type the
// remembered option sequence into the box and submit without touching a
// single radio. Every DENY renders the same generic failure, so the page
// leaks nothing about *why* a submission failed.

import { ApiError, AuthApi, Challenge } from "./api.js";
import { completeSequence, isValidSequence, sequenceEcho } from "./sequence.js";

export class LoginView extends HTMLElement {
  api!: AuthApi;
  private challenge: Challenge | null = null;

  connectedCallback(): void {
    this.innerHTML = `
      <form id="who">
        <label>Username <input name="username" autocomplete="off" /></label>
        <button type="submit">Show my questions</button>
        <p id="who-status"></p>
      </form>
      <div id="cards"></div>
    `;
    this.querySelector("#who")!.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.load();
    });
  }

  private async load(): Promise<void> {
    const username = this.querySelector<HTMLInputElement>("input[name=username]")!.value.trim();
    const status = this.querySelector("#who-status")!;
    try {
      this.challenge = await this.api.challenge(username);
    } catch (err) {
      status.textContent =
        err instanceof ApiError && err.status === 404
          ? "Unknown user."
          : `Service unreachable: ${(err as Error).message}`;
      return;
    }
    status.textContent = "";
    this.renderChallenge();
  }

  private renderChallenge(): void {
    const { items } = this.challenge!;
    const cards = items
      .map((item, i) => {
        const radios = item.alternatives
          .map(
            (alt) => `
              <label>
                <input type="radio" name="q${i}" value="${alt.label}" />
                (${alt.label}) ${alt.value}
              </label>`,
          )
          .join("");
        const hint = item.hint ? `<p class="hint">${item.hint}</p>` : "";
        return `<fieldset data-card="${i}"><legend>${item.text}</legend>${hint}${radios}</fieldset>`;
      })
      .join("");
    this.querySelector("#cards")!.innerHTML = `
      <form id="answers">
        ${cards}
        <p>Sequence: <output id="echo">${sequenceEcho(items.map(() => null))}</output></p>
        <button type="submit" id="submit-radios" disabled>Log in</button>
      </form>
      <form id="faster">
        <label>Faster login — type your sequence
          <input name="sequence" autocomplete="off" maxlength="${items.length}" />
        </label>
        <button type="submit">Submit sequence</button>
      </form>
      <div id="outcome"></div>
    `;
    this.querySelector("#answers")!.addEventListener("change", () => this.refreshEcho());
    this.querySelector("#answers")!.addEventListener("submit", (event) => {
      event.preventDefault();
      const sequence = completeSequence(this.selections());
      if (sequence !== null) void this.submit(sequence);
    });
    this.querySelector("#faster")!.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitFaster();
    });
  }

  selections(): (number | null)[] {
    const { items } = this.challenge!;
    return items.map((item, i) => {
      const checked = this.querySelector<HTMLInputElement>(`input[name=q${i}]:checked`);
      if (!checked) return null;
      return item.alternatives.findIndex((alt) => alt.label === checked.value);
    });
  }

  private refreshEcho(): void {
    const selections = this.selections();
    this.querySelector("#echo")!.textContent = sequenceEcho(selections);
    this.querySelector<HTMLButtonElement>("#submit-radios")!.disabled =
      completeSequence(selections) === null;
  }

  private async submitFaster(): Promise<void> {
    const items = this.challenge!.items;
    const d = items[0]?.alternatives.length ?? 4;
    const box = this.querySelector<HTMLInputElement>("input[name=sequence]")!;
    const text = box.value.trim().toUpperCase();
    if (!isValidSequence(text, d, items.length)) {
      this.querySelector("#outcome")!.innerHTML =
        `<p class="banner error">A sequence is ${items.length} letters from the first ${d} option letters.</p>`;
      return;
    }
    await this.submit(text);
  }

  private async submit(sequence: string): Promise<void> {
    const outcome = this.querySelector("#outcome")!;
    let result: string;
    try {
      result = await this.api.login(this.challenge!.username, sequence);
    } catch (err) {
      outcome.innerHTML = `<p class="banner error">Service unreachable: ${(err as Error).message}</p>`;
      return;
    }
    if (result === "ALLOW") {
      outcome.innerHTML = `<p class="banner success">Welcome back, ${this.challenge!.username}.</p>`;
      this.dispatchEvent(new CustomEvent("authenticated", { bubbles: true }));
    } else {
      // one generic failure for every DENY
      outcome.innerHTML = `<p class="banner error">Login failed. Check your answers and try again.</p>`;
    }
  }
}

customElements.define("login-view", LoginView);
