"""The honeychecker: a separate, minimal server that knows only which
stored credential is real.

State is exactly a map username -> index.  A check against any other
index means somebody is replaying a decoy credential, so the checker
answers ALARM and appends a line to its alarm log.

Wire protocol (newline-delimited UTF-8 over TCP):

    SET <user> <index>\n    ->  OK\n
    CHECK <user> <index>\n  ->  MATCH\n | ALARM\n | UNKNOWN\n
    anything else           ->  ERR <reason>\n

Usernames are percent-encoded on the wire (and in the alarm log) so the
space-separated grammar stays unambiguous.
"""

from __future__ import annotations

import json
import os
import socket
import socketserver
import threading
import time
from enum import Enum
from pathlib import Path
from typing import Optional
from urllib.parse import quote, unquote


class CheckResult(Enum):
    MATCH = "MATCH"
    ALARM = "ALARM"
    UNKNOWN_USER = "UNKNOWN"


class HoneyChecker:
    """Core state machine; also usable in-process without the TCP layer."""

    def __init__(self, state_dir: str | Path):
        self.dir = Path(state_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.snapshot_path = self.dir / "snapshot.json"
        self.alarm_log_path = self.dir / "alarms.log"
        self._lock = threading.Lock()
        self._records: dict[str, int] = {}
        if self.snapshot_path.exists():
            obj = json.loads(self.snapshot_path.read_text(encoding="utf-8"))
            if obj.get("version") != 1:
                raise ValueError("unsupported snapshot version")
            self._records = {u: int(i) for u, i in obj["records"].items()}

    def _persist(self) -> None:
        tmp = self.snapshot_path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump({"version": 1, "records": self._records}, fh)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.snapshot_path)

    def set(self, username: str, index: int) -> None:
        """Create or replace the record; durable before returning."""
        if not isinstance(index, int) or index < 0:
            raise ValueError("index must be a non-negative integer")
        if not username:
            raise ValueError("username must be non-empty")
        with self._lock:
            self._records[username] = index
            self._persist()

    def check(self, username: str, index: int) -> CheckResult:
        with self._lock:
            stored = self._records.get(username)
            if stored is None:
                return CheckResult.UNKNOWN_USER
            if stored == index:
                return CheckResult.MATCH
            self._log_alarm(username, index)
            return CheckResult.ALARM

    def _log_alarm(self, username: str, submitted: int) -> None:
        line = f"{int(time.time() * 1000)} ALARM {quote(username, safe='')} {submitted}\n"
        with open(self.alarm_log_path, "a", encoding="utf-8") as fh:
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())

    def alarm_count(self) -> int:
        if not self.alarm_log_path.exists():
            return 0
        with open(self.alarm_log_path, encoding="utf-8") as fh:
            return sum(1 for line in fh if line.strip())


def _handle_line(checker: HoneyChecker, line: str) -> str:
    parts = line.strip().split(" ")
    if len(parts) != 3:
        return "ERR expected '<VERB> <user> <index>'"
    verb, quoted_user, index_str = parts
    username = unquote(quoted_user)
    try:
        index = int(index_str)
    except ValueError:
        return "ERR index must be an integer"
    if verb == "SET":
        try:
            checker.set(username, index)
        except ValueError as exc:
            return f"ERR {exc}"
        return "OK"
    if verb == "CHECK":
        return checker.check(username, index).value
    return f"ERR unknown verb {verb}"


class _Handler(socketserver.StreamRequestHandler):
    def handle(self):
        while True:
            raw = self.rfile.readline()
            if not raw:
                break
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError:
                self.wfile.write(b"ERR not utf-8\n")
                continue
            reply = _handle_line(self.server.checker, line)  # type: ignore[attr-defined]
            self.wfile.write((reply + "\n").encode("utf-8"))
            self.wfile.flush()


class HoneyCheckerServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, checker: HoneyChecker, host: str = "127.0.0.1", port: int = 7601):
        super().__init__((host, port), _Handler)
        self.checker = checker

    @property
    def address(self) -> tuple[str, int]:
        return self.server_address[0], self.server_address[1]

    def serve_in_background(self) -> threading.Thread:
        thread = threading.Thread(target=self.serve_forever, daemon=True)
        thread.start()
        return thread


class HoneyCheckerClient:
    """One-request-per-connection client for the line protocol."""

    def __init__(self, host: str, port: int, timeout: float = 5.0):
        self.host = host
        self.port = port
        self.timeout = timeout

    def _roundtrip(self, request: str) -> str:
        with socket.create_connection((self.host, self.port), timeout=self.timeout) as sock:
            sock.sendall(request.encode("utf-8"))
            fh = sock.makefile("r", encoding="utf-8")
            reply = fh.readline()
        if not reply:
            raise ConnectionError("honeychecker closed the connection")
        return reply.strip()

    def set(self, username: str, index: int) -> None:
        reply = self._roundtrip(f"SET {quote(username, safe='')} {index}\n")
        if reply != "OK":
            raise ConnectionError(f"honeychecker refused SET: {reply}")

    def check(self, username: str, index: int) -> CheckResult:
        reply = self._roundtrip(f"CHECK {quote(username, safe='')} {index}\n")
        try:
            return CheckResult(reply)
        except ValueError:
            raise ConnectionError(f"unexpected honeychecker reply: {reply}") from None


def serve(state_dir: str, host: str, port: int) -> None:
    """Blocking entry point used by the CLI."""
    server = HoneyCheckerServer(HoneyChecker(state_dir), host, port)
    try:
        server.serve_forever()
    finally:
        server.server_close()
