import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { AuthApi } from "../src/api.js";
import { LoginView } from "../src/login.js";
import { FakeService, installFakeFetch } from "./fake-service.js";
import { mount, pickRadio, setInput, submit, unmountAll, until } from "./helpers.js";

const ANSWERS = [
  { question: 1, answer: "Rita" },
  { question: 2, answer: "Titanic" },
  { question: 5, answer: "Morning" },
  { question: 6, answer: "18" },
  { question: 9, answer: "7" },
  { question: 10, answer: "Apr-Jun" },
];

describe("<login-view>", () => {
  let service: FakeService;
  let view: LoginView;

  beforeEach(async () => {
    service = new FakeService();
    installFakeFetch(service);
    service.register("alex", ANSWERS);
    view = new LoginView();
    view.api = new AuthApi("http://fake");
    mount(view);
    setInput(view.querySelector("input[name=username]")!, "alex");
    submit(view.querySelector("#who")!);
    await until(() => view.querySelector("#answers") !== null);
  });

  afterEach(unmountAll);

  function radio(card: number, label: string): HTMLInputElement {
    return view.querySelector(`input[name=q${card}][value=${label}]`)!;
  }

  function echo(): string {
    return view.querySelector("#echo")!.textContent ?? "";
  }

  function outcome(): string {
    return view.querySelector("#outcome")!.innerHTML;
  }

  it("renders q cards with d labeled radios each", () => {
    const cards = view.querySelectorAll("fieldset");
    expect(cards).toHaveLength(6);
    for (const card of cards) {
      expect(card.querySelectorAll("input[type=radio]")).toHaveLength(4);
    }
    expect(view.textContent).toContain("(A)");
    expect(echo()).toBe("·".repeat(6));
  });

  it("echo tracks the selected letters in question order", () => {
    pickRadio(radio(0, "B"));
    expect(echo()).toBe("B" + "·".repeat(5));
    pickRadio(radio(2, "D"));
    expect(echo()).toBe("B·D" + "·".repeat(3));
    pickRadio(radio(0, "C")); // change of mind on the first card
    expect(echo()).toBe("C·D" + "·".repeat(3));
  });

  it("logs in through the radios", async () => {
    const truth = service.users.get("alex")!.trueSequence;
    truth.split("").forEach((label, card) => pickRadio(radio(card, label)));
    expect(echo()).toBe(truth);
    expect(view.querySelector<HTMLButtonElement>("#submit-radios")!.disabled).toBe(false);
    submit(view.querySelector("#answers")!);
    await until(() => outcome() !== "");
    expect(outcome()).toContain("Welcome back");
  });

  it("keeps submit disabled until every card is answered", () => {
    expect(view.querySelector<HTMLButtonElement>("#submit-radios")!.disabled).toBe(true);
    pickRadio(radio(0, "A"));
    expect(view.querySelector<HTMLButtonElement>("#submit-radios")!.disabled).toBe(true);
  });

  it("wrong selections get the generic failure view", async () => {
    const truth = service.users.get("alex")!.trueSequence;
    const wrong = truth[0] === "A" ? "B" : "A";
    [wrong, ...truth.slice(1)].forEach((label, card) => pickRadio(radio(card, label)));
    submit(view.querySelector("#answers")!);
    await until(() => outcome() !== "");
    expect(outcome()).toContain("Login failed");
  });

  it("faster-login box submits a typed sequence without radios", async () => {
    const truth = service.users.get("alex")!.trueSequence;
    setInput(view.querySelector("input[name=sequence]")!, truth.toLowerCase());
    submit(view.querySelector("#faster")!);
    await until(() => outcome() !== "");
    expect(outcome()).toContain("Welcome back");
    // no radio was ever touched
    expect(view.querySelectorAll("input[type=radio]:checked")).toHaveLength(0);
  });

  it("decoy and garbage submissions render byte-identical failures", async () => {
    const decoy = [...service.users.get("alex")!.decoys][0]!;
    setInput(view.querySelector("input[name=sequence]")!, decoy);
    submit(view.querySelector("#faster")!);
    await until(() => outcome() !== "");
    const decoyView = outcome();

    view.querySelector("#outcome")!.innerHTML = "";
    const garbage = "A".repeat(6) === decoy ? "B".repeat(6) : "A".repeat(6);
    setInput(view.querySelector("input[name=sequence]")!, garbage);
    submit(view.querySelector("#faster")!);
    await until(() => outcome() !== "");
    expect(outcome()).toBe(decoyView);
    // the decoy tripped one alarm server-side; the page can't tell
    expect(service.alarms).toHaveLength(1);
  });

  it("rejects malformed faster-login input locally", async () => {
    setInput(view.querySelector("input[name=sequence]")!, "ABZ");
    submit(view.querySelector("#faster")!);
    await until(() => outcome() !== "");
    expect(outcome()).toContain("6 letters");
    expect(service.alarms).toHaveLength(0);
  });

  it("reports unknown users on the who form", async () => {
    const fresh = new LoginView();
    fresh.api = new AuthApi("http://fake");
    mount(fresh);
    setInput(fresh.querySelector("input[name=username]")!, "ghost");
    submit(fresh.querySelector("#who")!);
    await until(() => fresh.querySelector("#who-status")!.textContent !== "");
    expect(fresh.querySelector("#who-status")!.textContent).toContain("Unknown user");
  });
});
