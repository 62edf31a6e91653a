// Page shell: three tabs over one AuthApi instance. The service base URL
// comes from ?api=... or defaults to the page origin.

import { AuthApi } from "./api.js";
import { AdminAlarms } from "./alarms.js";
import { LoginView } from "./login.js";
import { RegistrationWizard } from "./wizard.js";

function serviceUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? window.location.origin;
}

export function mountApp(root: HTMLElement, api = new AuthApi(serviceUrl())): void {
  root.innerHTML = `
    <nav>
      <button data-tab="register">Register</button>
      <button data-tab="login">Log in</button>
      <button data-tab="alarms">Alarms</button>
    </nav>
    <main></main>
  `;
  const main = root.querySelector("main")!;

  const show = (tab: string): void => {
    main.replaceChildren();
    if (tab === "register") {
      const wizard = new RegistrationWizard();
      wizard.api = api;
      main.append(wizard);
    } else if (tab === "login") {
      const login = new LoginView();
      login.api = api;
      main.append(login);
    } else {
      const alarms = new AdminAlarms();
      alarms.api = api;
      main.append(alarms);
    }
  };

  root.querySelector("nav")!.addEventListener("click", (event) => {
    const tab = (event.target as HTMLElement).dataset.tab;
    if (tab) show(tab);
  });
  root.addEventListener("registered", () => show("login"));
  show("register");
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(document.getElementById("app")!);
}
