// <admin-alarms> — polls the alarm feed and lists (time, user) rows.
// An unreachable service shows a banner and keeps the last good rows.

import { AlarmRow, AuthApi } from "./api.js";

export class AdminAlarms extends HTMLElement {
  api!: AuthApi;
  pollMs = 5000;
  private timer: ReturnType<typeof setInterval> | null = null;
  private rows: AlarmRow[] = [];

  connectedCallback(): void {
    this.innerHTML = `
      <p id="alarm-status"></p>
      <table>
        <thead><tr><th>Time</th><th>User</th></tr></thead>
        <tbody id="alarm-rows"></tbody>
      </table>
    `;
    void this.refresh();
    this.timer = setInterval(() => void this.refresh(), this.pollMs);
  }

  disconnectedCallback(): void {
    if (this.timer !== null) clearInterval(this.timer);
    this.timer = null;
  }

  async refresh(): Promise<void> {
    const status = this.querySelector("#alarm-status");
    if (!status) return;
    try {
      this.rows = await this.api.alarms();
    } catch {
      status.textContent = "Service unreachable — showing last known alarms.";
      status.className = "banner error";
      return;
    }
    status.textContent = this.rows.length === 0 ? "No alarms." : "";
    status.className = "";
    this.querySelector("#alarm-rows")!.innerHTML = this.rows
      .map(
        (row) =>
          `<tr><td>${new Date(row.time_ms).toISOString()}</td><td>${row.username}</td></tr>`,
      )
      .join("");
  }

  rowCount(): number {
    return this.querySelectorAll("#alarm-rows tr").length;
  }
}

customElements.define("admin-alarms", AdminAlarms);
