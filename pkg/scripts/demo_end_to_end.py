"""Walk the whole system once, locally.

Starts the honeychecker on a loopback TCP port, builds the auth service
over the bundled group tables, registers a demo user, then logs in with
the true sequence, a decoy, and garbage, printing what each side sees.

    python scripts/demo_end_to_end.py
"""

import itertools
import logging
import random
import tempfile
from pathlib import Path

from qhoney.authservice import AlarmPolicy, AuthService, SchemeConfig
from qhoney.catalog import CorpusClass, SystemParams
from qhoney.alternatives import AnswerSubmission
from qhoney.grouping import GroupTable
from qhoney.honeychecker import HoneyChecker, HoneyCheckerClient, HoneyCheckerServer
from qhoney.vault import Vault

ROOT = Path(__file__).resolve().parent.parent

ANSWERS = [
    AnswerSubmission(1, "Rita"),
    AnswerSubmission(2, "Titanic"),
    AnswerSubmission(5, "Morning"),
    AnswerSubmission(6, "18"),
    AnswerSubmission(9, "7"),
    AnswerSubmission(10, "Apr-Jun"),
]
TRUE_VALUES = {1: "R", 2: "C", 5: "Morning", 6: "18", 9: "7", 10: "Apr-Jun"}


def main() -> None:
    logging.getLogger("qhoney").setLevel(logging.ERROR)
    workdir = Path(tempfile.mkdtemp(prefix="qhoney-demo-"))
    checker_core = HoneyChecker(workdir / "checker")
    server = HoneyCheckerServer(checker_core, "127.0.0.1", 0)
    server.serve_in_background()
    host, port = server.address
    print(f"honeychecker on {host}:{port}, state in {workdir / 'checker'}")

    scheme = SchemeConfig(
        params=SystemParams(q=6, d=4, k=20),
        group_tables={
            CorpusClass.PERSON_NAME: GroupTable.from_json(
                (ROOT / "data" / "person-groups.json").read_text()
            ),
            CorpusClass.MOVIE_NAME: GroupTable.from_json(
                (ROOT / "data" / "movie-groups.json").read_text()
            ),
        },
    )
    service = AuthService(
        vault=Vault(workdir / "vault"),
        checker=HoneyCheckerClient(host, port),
        scheme=scheme,
        policy=AlarmPolicy.LOG_ONLY,
        rng=random.Random(7),
    )

    service.register("alex", ANSWERS)
    print("registered 'alex' with six answers; plaintext discarded\n")

    challenge = service.challenge("alex")
    letters = []
    for item in challenge.items:
        values = [v for _, v in item.alternatives]
        pick = values.index(TRUE_VALUES[item.question_id])
        letters.append(item.alternatives[pick][0])
        shown = "  ".join(f"({lab}) {v}" for lab, v in item.alternatives)
        print(f"Q{item.question_id}: {item.text}")
        if item.hint:
            print(f"    {item.hint}")
        print(f"    {shown}")
    sequence = "".join(letters)
    print(f"\nuser recognizes her answers -> option sequence {sequence}")

    print(f"login with true sequence: {service.login('alex', sequence)}")
    decoy = next(
        "".join(c)
        for c in itertools.product("ABCD", repeat=6)
        if "".join(c) != sequence
        and service.vault.verify_submission("alex", "".join(c)) is not None
    )
    print(f"login with stored decoy {decoy}: {service.login('alex', decoy)}"
          f"  (alarm count now {checker_core.alarm_count()})")
    garbage = next(
        "".join(c)
        for c in itertools.product("ABCD", repeat=6)
        if service.vault.verify_submission("alex", "".join(c)) is None
    )
    print(f"login with garbage {garbage}: {service.login('alex', garbage)}"
          f"  (alarm count still {checker_core.alarm_count()})")

    outcomes = [
        service.login("alex", "".join(c)) for c in itertools.product("ABCD", repeat=6)
    ]
    print(
        f"\nsweep of all 4^6 sequences: {outcomes.count('ALLOW')} allowed, "
        f"{checker_core.alarm_count()} alarms logged "
        f"({service.scheme.params.k - 1} decoys + the one from above)"
    )
    server.shutdown()
    server.server_close()


if __name__ == "__main__":
    main()
