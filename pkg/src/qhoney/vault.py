"""The two credential files.

F1 holds what the login page needs: per user, the answered question ids
and their alternative tuples (never which alternative is correct).  F2
holds the k sweetwords as salted digests; which digest is the real
credential is known only to the honeychecker.

Both files are append-only JSON-lines with a version header; records are
flushed and fsynced before a write returns, and a fresh process rebuilds
its in-memory index from the files.
"""

from __future__ import annotations

import hashlib
import json
import os
import secrets
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .alternatives import OptionTuple
from .catalog import IndexSelector
from .errors import DuplicateUserError, UnknownUserError

F1_HEADER = {"file": "f1", "version": 1}
F2_HEADER = {"file": "f2", "version": 1}


@dataclass(frozen=True)
class F1Entry:
    question_id: int
    alternatives: tuple[str, ...]
    index: Optional[IndexSelector] = None  # recognition hint for letter tuples

    @classmethod
    def from_tuple(cls, t: OptionTuple) -> "F1Entry":
        # Deliberately drops correct_position.
        return cls(t.question_id, t.alternatives, t.index)


@dataclass(frozen=True)
class UserRecordF1:
    username: str
    q: int
    d: int
    entries: tuple[F1Entry, ...]

    def __post_init__(self):
        if len(self.entries) != self.q:
            raise ValueError("entry count must equal q")
        ids = [e.question_id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValueError("question ids must be distinct")


@dataclass(frozen=True)
class VaultEntryF2:
    username: str
    salt: str          # hex
    hashes: tuple[str, ...]  # hex digests, storage order
    algo: str = "sha256"


def _digest(algo: str, salt_hex: str, sequence: str) -> str:
    h = hashlib.new(algo)
    h.update(bytes.fromhex(salt_hex))
    h.update(sequence.encode("ascii"))
    return h.hexdigest()


def _f1_to_obj(rec: UserRecordF1) -> dict:
    return {
        "username": rec.username,
        "q": rec.q,
        "d": rec.d,
        "entries": [
            {
                "question": e.question_id,
                "alternatives": list(e.alternatives),
                **({"index": e.index.value} if e.index else {}),
            }
            for e in rec.entries
        ],
    }


def _f1_from_obj(obj: dict) -> UserRecordF1:
    return UserRecordF1(
        username=obj["username"],
        q=int(obj["q"]),
        d=int(obj["d"]),
        entries=tuple(
            F1Entry(
                question_id=int(e["question"]),
                alternatives=tuple(e["alternatives"]),
                index=IndexSelector(e["index"]) if "index" in e else None,
            )
            for e in obj["entries"]
        ),
    )


class Vault:
    """Append-only store for F1 and F2 under one directory."""

    def __init__(self, directory: str | Path, algo: str = "sha256"):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.algo = algo
        self._lock = threading.Lock()
        self._f1: dict[str, UserRecordF1] = {}
        self._f2: dict[str, VaultEntryF2] = {}
        self._load()

    @property
    def f1_path(self) -> Path:
        return self.dir / "f1.jsonl"

    @property
    def f2_path(self) -> Path:
        return self.dir / "f2.jsonl"

    def _load(self) -> None:
        for path, header, sink in (
            (self.f1_path, F1_HEADER, "f1"),
            (self.f2_path, F2_HEADER, "f2"),
        ):
            if not path.exists():
                continue
            with open(path, encoding="utf-8") as fh:
                first = fh.readline()
                if json.loads(first) != header:
                    raise ValueError(f"{path} has an unexpected header")
                for line in fh:
                    if not line.strip():
                        continue
                    obj = json.loads(line)
                    if sink == "f1":
                        rec = _f1_from_obj(obj)
                        self._f1[rec.username] = rec
                    else:
                        ent = VaultEntryF2(
                            username=obj["username"],
                            salt=obj["salt"],
                            hashes=tuple(obj["hashes"]),
                            algo=obj.get("algo", "sha256"),
                        )
                        self._f2[ent.username] = ent

    def _append(self, path: Path, header: dict, obj: dict) -> None:
        is_new = not path.exists()
        with open(path, "a", encoding="utf-8") as fh:
            if is_new:
                fh.write(json.dumps(header) + "\n")
            fh.write(json.dumps(obj, sort_keys=True) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    # -- F1 -------------------------------------------------------------

    def write_f1(self, record: UserRecordF1) -> None:
        with self._lock:
            if record.username in self._f1:
                raise DuplicateUserError(record.username)
            self._append(self.f1_path, F1_HEADER, _f1_to_obj(record))
            self._f1[record.username] = record

    def read_f1(self, username: str) -> UserRecordF1:
        rec = self._f1.get(username)
        if rec is None:
            raise UnknownUserError(username)
        return rec

    def has_user(self, username: str) -> bool:
        return username in self._f1 or username in self._f2

    # -- F2 -------------------------------------------------------------

    def write_f2(self, username: str, sequences: Iterable[str]) -> None:
        """Store salted digests of the sweetwords, in the given order.

        The caller is responsible for forwarding the true index to the
        honeychecker; this store never sees it.
        """
        seqs = list(sequences)
        with self._lock:
            if username in self._f2:
                raise DuplicateUserError(username)
            salt = secrets.token_hex(16)
            hashes = tuple(_digest(self.algo, salt, s) for s in seqs)
            if len(set(hashes)) != len(hashes):
                raise ValueError("sweetwords must be distinct")
            ent = VaultEntryF2(username, salt, hashes, self.algo)
            self._append(
                self.f2_path,
                F2_HEADER,
                {
                    "username": ent.username,
                    "salt": ent.salt,
                    "hashes": list(ent.hashes),
                    "algo": ent.algo,
                },
            )
            self._f2[username] = ent

    def read_f2(self, username: str) -> VaultEntryF2:
        ent = self._f2.get(username)
        if ent is None:
            raise UnknownUserError(username)
        return ent

    def verify_submission(self, username: str, sequence: str) -> Optional[int]:
        """Position of the submitted sequence in the stored list, or None."""
        ent = self._f2.get(username)
        if ent is None:
            raise UnknownUserError(username)
        digest = _digest(ent.algo, ent.salt, sequence)
        for i, h in enumerate(ent.hashes):
            if h == digest:
                return i
        return None


def storage_cost_f1(q: int, d: int) -> int:
    """Units of stored strings for one F1 row: username + question-number
    string + tuple-string, independent of q and d.
    """
    if q < 1 or d < 2:
        raise ValueError("need q >= 1 and d >= 2")
    return 3


def storage_cost_f2(k: int) -> int:
    """Units for one F2 row: username plus k sweetwords."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return k + 1
