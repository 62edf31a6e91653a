"""Service configuration: JSON file with environment overrides.

Example:

    {
      "q": 6, "d": 4, "k": 20,
      "policy": "lock-account",
      "checker": {"host": "127.0.0.1", "port": 7601},
      "vault_dir": "var/vault",
      "group_tables": {"person": "data/person-groups.json",
                       "movie": "data/movie-groups.json"},
      "indexes": {"person": "first", "movie": "last"},
      "rate_limit": {"attempts": null, "window_s": 60}
    }

Group tables may instead be built at startup from raw corpora via the
"corpora" and "grouping" sections.  QHONEY_CHECKER_HOST, QHONEY_CHECKER_PORT
and QHONEY_VAULT_DIR override the file.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .authservice import AlarmPolicy, AuthService, SchemeConfig
from .catalog import CorpusClass, IndexSelector, SystemParams
from .grouping import (
    GroupingParams,
    GroupTable,
    MOVIE_PARAMS,
    PERSON_PARAMS,
    form_groups,
    letter_frequencies,
    load_corpus,
)
from .honeychecker import HoneyCheckerClient
from .vault import Vault

DEFAULT_PARAMS = {
    CorpusClass.PERSON_NAME: PERSON_PARAMS,
    CorpusClass.MOVIE_NAME: MOVIE_PARAMS,
}


@dataclass
class ServiceSettings:
    q: int = 6
    d: int = 4
    k: int = 20
    lam: Optional[int] = None
    policy: AlarmPolicy = AlarmPolicy.LOCK_ACCOUNT
    checker_host: str = "127.0.0.1"
    checker_port: int = 7601
    vault_dir: str = "var/vault"
    group_table_paths: dict[CorpusClass, str] = field(default_factory=dict)
    corpus_paths: dict[CorpusClass, str] = field(default_factory=dict)
    grouping_params: dict[CorpusClass, GroupingParams] = field(default_factory=dict)
    indexes: dict[CorpusClass, IndexSelector] = field(default_factory=dict)
    rate_limit_attempts: Optional[int] = None
    rate_limit_window_s: float = 60.0
    seed: Optional[int] = None

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceSettings":
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
        settings = cls()
        settings.q = int(obj.get("q", settings.q))
        settings.d = int(obj.get("d", settings.d))
        settings.k = int(obj.get("k", settings.k))
        if obj.get("lam") is not None:
            settings.lam = int(obj["lam"])
        if "policy" in obj:
            settings.policy = AlarmPolicy(obj["policy"])
        checker = obj.get("checker", {})
        settings.checker_host = checker.get("host", settings.checker_host)
        settings.checker_port = int(checker.get("port", settings.checker_port))
        settings.vault_dir = obj.get("vault_dir", settings.vault_dir)
        for key, value in obj.get("group_tables", {}).items():
            settings.group_table_paths[CorpusClass(key)] = value
        for key, value in obj.get("corpora", {}).items():
            settings.corpus_paths[CorpusClass(key)] = value
        for key, value in obj.get("grouping", {}).items():
            settings.grouping_params[CorpusClass(key)] = GroupingParams(
                value["alpha"], value["beta"], value["eps_p"], value["eps_b"]
            )
        for key, value in obj.get("indexes", {}).items():
            settings.indexes[CorpusClass(key)] = IndexSelector(value)
        limiter = obj.get("rate_limit", {})
        if limiter.get("attempts") is not None:
            settings.rate_limit_attempts = int(limiter["attempts"])
        settings.rate_limit_window_s = float(limiter.get("window_s", 60.0))
        if obj.get("seed") is not None:
            settings.seed = int(obj["seed"])
        settings.apply_env()
        return settings

    def apply_env(self) -> None:
        self.checker_host = os.environ.get("QHONEY_CHECKER_HOST", self.checker_host)
        if "QHONEY_CHECKER_PORT" in os.environ:
            self.checker_port = int(os.environ["QHONEY_CHECKER_PORT"])
        self.vault_dir = os.environ.get("QHONEY_VAULT_DIR", self.vault_dir)

    def load_group_tables(self) -> dict[CorpusClass, GroupTable]:
        tables: dict[CorpusClass, GroupTable] = {}
        for cls, path in self.group_table_paths.items():
            tables[cls] = GroupTable.from_json(Path(path).read_text(encoding="utf-8"))
        for cls, path in self.corpus_paths.items():
            if cls in tables:
                continue
            corpus = load_corpus(path, cls)
            index = self.indexes.get(cls)
            if index is None:
                index = (
                    IndexSelector.LAST
                    if cls is CorpusClass.MOVIE_NAME
                    else IndexSelector.FIRST
                )
                self.indexes[cls] = index
            params = self.grouping_params.get(cls, DEFAULT_PARAMS[cls])
            tables[cls] = form_groups(params, letter_frequencies(corpus, index))
        return tables

    def build_service(self) -> AuthService:
        params = SystemParams(
            q=self.q, d=self.d, k=self.k, lam=self.lam if self.lam is not None else -1
        )
        scheme = SchemeConfig(
            params=params,
            group_tables=self.load_group_tables(),
            indexes=dict(self.indexes),
        )
        return AuthService(
            vault=Vault(self.vault_dir),
            checker=HoneyCheckerClient(self.checker_host, self.checker_port),
            scheme=scheme,
            policy=self.policy,
            rng=random.Random(self.seed),
            rate_limit_attempts=self.rate_limit_attempts,
            rate_limit_window_s=self.rate_limit_window_s,
        )
