"""User-facing authentication service.

Registration turns q answers into alternative tuples, derives the true
option sequence from where each real answer landed, generates the
sweetword list, and splits the secrets: tuples to F1, salted digests to
F2, the true index to the honeychecker.  After that no plaintext answer,
letter, or sequence survives anywhere.

Login verifies a submitted sequence against F2; only when it matches some
stored digest is the honeychecker consulted.  A decoy hit raises an alarm
and is answered with the same DENY a wrong guess gets.
"""

from __future__ import annotations

import logging
import random
import threading
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol

from pydantic import BaseModel

from .alternatives import AnswerSubmission, build_tuple
from .catalog import (
    BQuestion,
    CorpusClass,
    IndexSelector,
    SystemParams,
    get_question,
    option_letter,
    option_letters,
)
from .errors import DuplicateUserError, UnknownUserError
from .grouping import GroupTable
from .honeychecker import CheckResult
from .sweetwords import generate_sweetwords
from .vault import F1Entry, UserRecordF1, Vault

log = logging.getLogger(__name__)


# Request bodies of the HTTP API.  Module level so the deferred annotations
# on the route handlers resolve.
class AnswerIn(BaseModel):
    question: int
    answer: str


class RegisterIn(BaseModel):
    username: str
    answers: list[AnswerIn]


class LoginIn(BaseModel):
    username: str
    sequence: str


class AlarmPolicy(Enum):
    LOG_ONLY = "log-only"
    LOCK_ACCOUNT = "lock-account"
    LOCK_ALL = "lock-all"


class CheckerLink(Protocol):
    def set(self, username: str, index: int) -> None: ...
    def check(self, username: str, index: int) -> CheckResult: ...


@dataclass(frozen=True)
class SchemeConfig:
    """System-wide scheme wiring: parameters plus decoy pools per corpus."""

    params: SystemParams
    group_tables: dict[CorpusClass, GroupTable]
    indexes: dict[CorpusClass, IndexSelector] = field(default_factory=dict)

    def index_for(self, kind: BQuestion) -> IndexSelector:
        return self.indexes.get(kind.corpus_class, kind.index)


@dataclass(frozen=True)
class ChallengeItem:
    question_id: int
    text: str
    hint: Optional[str]
    alternatives: tuple[tuple[str, str], ...]  # (label, value)


@dataclass(frozen=True)
class LoginChallenge:
    username: str
    items: tuple[ChallengeItem, ...]

    def as_dict(self) -> dict:
        return {
            "username": self.username,
            "items": [
                {
                    "question": it.question_id,
                    "text": it.text,
                    "hint": it.hint,
                    "alternatives": [
                        {"label": lab, "value": val} for lab, val in it.alternatives
                    ],
                }
                for it in self.items
            ],
        }


@dataclass(frozen=True)
class AlarmEvent:
    time_ms: int
    username: str


class RateLimiter:
    """Fixed-window attempt counter per username; None disables it."""

    def __init__(self, max_attempts: Optional[int], window_s: float = 60.0):
        self.max_attempts = max_attempts
        self.window_s = window_s
        self._windows: dict[str, tuple[float, int]] = {}
        self._lock = threading.Lock()

    def allow(self, username: str) -> bool:
        if self.max_attempts is None:
            return True
        now = time.monotonic()
        with self._lock:
            start, count = self._windows.get(username, (now, 0))
            if now - start >= self.window_s:
                start, count = now, 0
            count += 1
            self._windows[username] = (start, count)
            return count <= self.max_attempts


class AuthService:
    ALLOW = "ALLOW"
    DENY = "DENY"

    def __init__(
        self,
        vault: Vault,
        checker: CheckerLink,
        scheme: SchemeConfig,
        policy: AlarmPolicy = AlarmPolicy.LOCK_ACCOUNT,
        rng: Optional[random.Random] = None,
        rate_limit_attempts: Optional[int] = None,
        rate_limit_window_s: float = 60.0,
    ):
        self.vault = vault
        self.checker = checker
        self.scheme = scheme
        self.policy = policy
        self.rng = rng if rng is not None else random.Random()
        self.rate_limiter = RateLimiter(rate_limit_attempts, rate_limit_window_s)
        self._alarms: list[AlarmEvent] = []
        self._locked: set[str] = set()
        self._lock_all = False
        self._state_lock = threading.Lock()
        self._user_locks: dict[str, threading.Lock] = {}

    def _user_lock(self, username: str) -> threading.Lock:
        with self._state_lock:
            lock = self._user_locks.get(username)
            if lock is None:
                lock = threading.Lock()
                self._user_locks[username] = lock
            return lock

    # -- registration ----------------------------------------------------

    def register(
        self,
        username: str,
        answers: list[AnswerSubmission],
        params: Optional[SystemParams] = None,
    ) -> None:
        p = params if params is not None else self.scheme.params
        ids = [a.question_id for a in answers]
        if len(answers) != p.q:
            raise ValueError(f"exactly {p.q} answers required, got {len(answers)}")
        if len(set(ids)) != len(ids):
            raise ValueError("question ids must be distinct")
        if not username or not username.strip():
            raise ValueError("username must be non-empty")

        with self._user_lock(username):
            if self.vault.has_user(username):
                raise DuplicateUserError(username)

            tuples = []
            for sub in answers:
                question = get_question(sub.question_id)
                group_table = None
                index = None
                if isinstance(question.kind, BQuestion):
                    group_table = self.scheme.group_tables.get(question.kind.corpus_class)
                    index = self.scheme.index_for(question.kind)
                tuples.append(
                    build_tuple(sub, question, p.d, self.rng, group_table, index)
                )

            act_ops = "".join(option_letter(t.correct_position) for t in tuples)
            sweet = generate_sweetwords(p.k, p.lam, act_ops, p.q, self.rng, d=p.d)

            record = UserRecordF1(
                username=username,
                q=p.q,
                d=p.d,
                entries=tuple(F1Entry.from_tuple(t) for t in tuples),
            )
            self.vault.write_f1(record)
            self.vault.write_f2(username, sweet.sequences)
            self.checker.set(username, sweet.true_index)
            # tuples/act_ops/sweet go out of scope here; nothing retains them

    # -- challenge -------------------------------------------------------

    def challenge(self, username: str) -> LoginChallenge:
        record = self.vault.read_f1(username)
        labels = option_letters(record.d)
        items = []
        for entry in record.entries:
            question = get_question(entry.question_id)
            hint = None
            if entry.index is not None:
                hint = f"Recognize the {entry.index.value} letter of your answer."
            items.append(
                ChallengeItem(
                    question_id=entry.question_id,
                    text=question.text,
                    hint=hint,
                    alternatives=tuple(zip(labels, entry.alternatives)),
                )
            )
        return LoginChallenge(username=username, items=tuple(items))

    # -- login -----------------------------------------------------------

    def login(self, username: str, sequence: str) -> str:
        if not self.vault.has_user(username):
            raise UnknownUserError(username)
        if not self.rate_limiter.allow(username):
            return self.DENY
        with self._user_lock(username):
            if self._lock_all or username in self._locked:
                return self.DENY
            position = self.vault.verify_submission(username, sequence)
            if position is None:
                return self.DENY
            try:
                result = self.checker.check(username, position)
            except (ConnectionError, OSError) as exc:
                log.error("honeychecker unreachable, failing closed: %s", exc)
                return self.DENY
            if result is CheckResult.MATCH:
                return self.ALLOW
            if result is CheckResult.ALARM:
                self._on_alarm(username)
                return self.DENY
            log.error("honeychecker has no record for %r; failing closed", username)
            return self.DENY

    def _on_alarm(self, username: str) -> None:
        event = AlarmEvent(int(time.time() * 1000), username)
        with self._state_lock:
            self._alarms.append(event)
            if self.policy is AlarmPolicy.LOCK_ACCOUNT:
                self._locked.add(username)
            elif self.policy is AlarmPolicy.LOCK_ALL:
                self._lock_all = True
        log.warning("decoy credential submitted for %r", username)

    # -- admin -----------------------------------------------------------

    def alarms(self) -> list[AlarmEvent]:
        with self._state_lock:
            return list(self._alarms)

    def is_locked(self, username: str) -> bool:
        with self._state_lock:
            return self._lock_all or username in self._locked


# -- HTTP layer ---------------------------------------------------------


def create_app(service: AuthService):
    """FastAPI application over the service.

    Endpoints (JSON in/out):
      POST /register            {username, answers: [{question, answer}]}
      GET  /challenge/{user}    question cards in stored order
      POST /login               {username, sequence} -> {result: ALLOW|DENY}
      GET  /admin/alarms        {alarms: [{time_ms, username}]}
      GET  /catalog             the fixed question catalog + default params
    """
    from fastapi import FastAPI, HTTPException
    from fastapi.responses import JSONResponse

    from .catalog import catalog as full_catalog
    from .errors import (
        GroupTooSmallError,
        InvalidAnswerError,
        LetterUngroupedError,
    )

    app = FastAPI(title="qhoney auth service")

    @app.post("/register")
    def register(body: RegisterIn):
        try:
            service.register(
                body.username,
                [AnswerSubmission(a.question, a.answer) for a in body.answers],
            )
        except DuplicateUserError:
            raise HTTPException(409, detail={"error": "duplicate_user"})
        except (GroupTooSmallError, LetterUngroupedError) as exc:
            code = (
                "group_too_small"
                if isinstance(exc, GroupTooSmallError)
                else "letter_ungrouped"
            )
            raise HTTPException(
                422,
                detail={"error": code, "question": exc.question_id, "message": str(exc)},
            )
        except InvalidAnswerError as exc:
            raise HTTPException(
                422,
                detail={
                    "error": "invalid_answer",
                    "question": exc.question_id,
                    "message": str(exc),
                },
            )
        except ValueError as exc:
            raise HTTPException(422, detail={"error": "invalid_request", "message": str(exc)})
        return {"status": "ok"}

    @app.get("/challenge/{username}")
    def challenge(username: str):
        try:
            return service.challenge(username).as_dict()
        except UnknownUserError:
            raise HTTPException(404, detail={"error": "unknown_user"})

    @app.post("/login")
    def login(body: LoginIn):
        try:
            result = service.login(body.username, body.sequence)
        except UnknownUserError:
            raise HTTPException(404, detail={"error": "unknown_user"})
        # One shared body per outcome: decoy hits and wrong guesses are
        # indistinguishable to the client.
        if result == AuthService.ALLOW:
            return JSONResponse(content={"result": "ALLOW"})
        return JSONResponse(content={"result": "DENY"})

    @app.get("/admin/alarms")
    def alarms():
        return {
            "alarms": [
                {"time_ms": a.time_ms, "username": a.username} for a in service.alarms()
            ]
        }

    @app.get("/catalog")
    def catalog_endpoint():
        p = service.scheme.params
        items = []
        for q in full_catalog():
            entry: dict = {"id": q.id, "text": q.text}
            if isinstance(q.kind, BQuestion):
                entry["kind"] = "b_question"
                entry["index"] = service.scheme.index_for(q.kind).value
            elif hasattr(q.kind, "labels"):
                entry["kind"] = "fixed_choice"
                entry["labels"] = list(q.kind.labels)  # type: ignore[union-attr]
            else:
                entry["kind"] = "numeric_range"
                entry["lo"] = q.kind.lo  # type: ignore[union-attr]
                entry["hi"] = q.kind.hi  # type: ignore[union-attr]
            items.append(entry)
        return {"questions": items, "params": {"q": p.q, "d": p.d, "k": p.k, "lam": p.lam}}

    return app
