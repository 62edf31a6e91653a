import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { AuthApi } from "../src/api.js";
import { RegistrationWizard } from "../src/wizard.js";
import { FakeService, installFakeFetch } from "./fake-service.js";
import { check, mount, setInput, submit, unmountAll, until } from "./helpers.js";

const PICKS: Array<[number, string]> = [
  [1, "Rita"],
  [2, "Titanic"],
  [5, "Morning"],
  [6, "18"],
  [9, "7"],
  [10, "Apr-Jun"],
];

describe("<registration-wizard>", () => {
  let service: FakeService;
  let wizard: RegistrationWizard;

  beforeEach(async () => {
    service = new FakeService();
    installFakeFetch(service);
    wizard = new RegistrationWizard();
    wizard.api = new AuthApi("http://fake");
    mount(wizard);
    await until(() => wizard.querySelector("#wizard") !== null);
  });

  afterEach(unmountAll);

  function pickBox(id: number): HTMLInputElement {
    return wizard.querySelector(`input[data-pick="${id}"]`)!;
  }

  function answerField(id: number): HTMLInputElement | HTMLSelectElement {
    return wizard.querySelector(`[data-answer="${id}"]`)!;
  }

  function submitButton(): HTMLButtonElement {
    return wizard.querySelector("button[type=submit]")!;
  }

  function fillAll(): void {
    setInput(wizard.querySelector<HTMLInputElement>("input[name=username]")!, "alex");
    for (const [id, answer] of PICKS) {
      check(pickBox(id));
      setInput(answerField(id), answer);
    }
  }

  it("renders all ten questions with one checkbox each", () => {
    expect(wizard.querySelectorAll("li[data-question]")).toHaveLength(10);
    expect(wizard.querySelectorAll("input[data-pick]")).toHaveLength(10);
  });

  it("keeps submit disabled until exactly q answered questions", () => {
    expect(submitButton().disabled).toBe(true);
    setInput(wizard.querySelector<HTMLInputElement>("input[name=username]")!, "alex");
    for (const [id, answer] of PICKS.slice(0, 5)) {
      check(pickBox(id));
      setInput(answerField(id), answer);
    }
    expect(submitButton().disabled).toBe(true); // only 5 picked
    check(pickBox(10));
    expect(submitButton().disabled).toBe(true); // 6 picked, answer missing
    setInput(answerField(10), "Apr-Jun");
    expect(submitButton().disabled).toBe(false);
  });

  it("disables answer fields for unpicked questions", () => {
    expect((answerField(1) as HTMLInputElement).disabled).toBe(true);
    check(pickBox(1));
    expect((answerField(1) as HTMLInputElement).disabled).toBe(false);
    check(pickBox(1), false);
    expect((answerField(1) as HTMLInputElement).disabled).toBe(true);
  });

  it("cannot produce duplicate question ids", () => {
    fillAll();
    const ids = wizard.answers().map((a) => a.question);
    expect(new Set(ids).size).toBe(ids.length);
  });

  it("registers and fires the registered event", async () => {
    fillAll();
    let fired = "";
    wizard.addEventListener("registered", (event) => {
      fired = (event as CustomEvent).detail.username;
    });
    submit(wizard.querySelector("#wizard")!);
    await until(() => wizard.querySelector(".banner.success") !== null);
    expect(fired).toBe("alex");
    expect(service.users.has("alex")).toBe(true);
  });

  it("flags the offending question for substitution", async () => {
    fillAll();
    setInput(answerField(1), "Xavier"); // fake rejects X letters
    submit(wizard.querySelector("#wizard")!);
    await until(() => wizard.querySelector("#status")!.textContent !== "");
    expect(wizard.querySelector("#status")!.textContent).toContain("group_too_small");
    const flag = wizard.querySelector<HTMLElement>('li[data-question="1"] .flag')!;
    expect(flag.hidden).toBe(false);
    expect(flag.textContent).toContain("decoy pool too small");
    expect(service.users.has("alex")).toBe(false);
  });

  it("shows a banner when the service is down", async () => {
    service.down = true;
    const broken = new RegistrationWizard();
    broken.api = new AuthApi("http://fake");
    mount(broken);
    await until(() => broken.querySelector(".banner.error") !== null);
    expect(broken.querySelector(".banner.error")!.textContent).toContain("unreachable");
  });
});
