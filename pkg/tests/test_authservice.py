import itertools
import json
import random

import pytest

from qhoney.alternatives import AnswerSubmission
from qhoney.authservice import (
    AlarmPolicy,
    AuthService,
    SchemeConfig,
    create_app,
)
from qhoney.catalog import CorpusClass, SystemParams
from qhoney.errors import (
    DuplicateUserError,
    GroupTooSmallError,
    UnknownUserError,
)
from qhoney.honeychecker import HoneyChecker
from qhoney.vault import Vault

ANSWERS = [
    AnswerSubmission(1, "Rita"),
    AnswerSubmission(2, "Titanic"),
    AnswerSubmission(5, "Morning"),
    AnswerSubmission(6, "18"),
    AnswerSubmission(9, "7"),
    AnswerSubmission(10, "Apr-Jun"),
]

# What the real user would recognize on each challenge card.
TRUE_VALUES = {1: "R", 2: "C", 5: "Morning", 6: "18", 9: "7", 10: "Apr-Jun"}


def scheme_config(person_groups, movie_groups, **params) -> SchemeConfig:
    return SchemeConfig(
        params=SystemParams(**params) if params else SystemParams(q=6, d=4, k=6),
        group_tables={
            CorpusClass.PERSON_NAME: person_groups,
            CorpusClass.MOVIE_NAME: movie_groups,
        },
    )


@pytest.fixture
def service(tmp_path, person_groups, movie_groups):
    return AuthService(
        vault=Vault(tmp_path / "vault"),
        checker=HoneyChecker(tmp_path / "checker"),
        scheme=scheme_config(person_groups, movie_groups),
        policy=AlarmPolicy.LOG_ONLY,
        rng=random.Random(424242),
    )


def recognized_sequence(challenge, truths=TRUE_VALUES) -> str:
    """Assemble the option sequence the way a user reading the cards would."""
    letters = []
    for item in challenge.items:
        values = [value for _, value in item.alternatives]
        position = values.index(truths[item.question_id])
        letters.append(item.alternatives[position][0])
    return "".join(letters)


class TestRegister:
    def test_creates_both_files_and_checker_record(self, service):
        service.register("alex", ANSWERS)
        record = service.vault.read_f1("alex")
        assert len(record.entries) == 6
        assert len(service.vault.read_f2("alex").hashes) == 6
        seq = recognized_sequence(service.challenge("alex"))
        assert service.login("alex", seq) == AuthService.ALLOW

    def test_wrong_answer_count(self, service):
        with pytest.raises(ValueError):
            service.register("alex", ANSWERS[:5])

    def test_duplicate_question_ids(self, service):
        answers = ANSWERS[:5] + [AnswerSubmission(1, "Maya")]
        with pytest.raises(ValueError):
            service.register("alex", answers)

    def test_duplicate_user(self, service):
        service.register("alex", ANSWERS)
        with pytest.raises(DuplicateUserError):
            service.register("alex", ANSWERS)

    def test_group_too_small_names_the_question(self, service):
        b_answers = [
            AnswerSubmission(1, "Rita"),
            AnswerSubmission(2, "Titanic"),
            AnswerSubmission(3, "Maya"),
            AnswerSubmission(4, "Arun"),
            AnswerSubmission(7, "Sonu"),
            AnswerSubmission(8, "Priya"),
        ]
        with pytest.raises(GroupTooSmallError) as err:
            service.register("alex", b_answers, SystemParams(q=6, d=6, k=6, lam=3))
        assert err.value.question_id == 1

    def test_no_plaintext_secret_survives(self, service):
        service.register("alex", ANSWERS)
        seq = recognized_sequence(service.challenge("alex"))
        stores = [
            service.vault.f1_path.read_text(),
            service.vault.f2_path.read_text(),
            service.checker.snapshot_path.read_text(),
        ]
        for blob in stores:
            assert seq not in blob
        # the checker holds nothing but the index
        snapshot = json.loads(stores[2])
        assert set(snapshot["records"]) == {"alex"}
        assert isinstance(snapshot["records"]["alex"], int)


class TestChallenge:
    def test_matches_registration_material(self, service):
        service.register("alex", ANSWERS)
        challenge = service.challenge("alex")
        assert [it.question_id for it in challenge.items] == [1, 2, 5, 6, 9, 10]
        card = {it.question_id: it for it in challenge.items}
        assert [v for _, v in card[5].alternatives] == [
            "Morning", "Afternoon", "Evening", "Night"
        ]
        assert [lab for lab, _ in card[1].alternatives] == ["A", "B", "C", "D"]
        assert card[1].hint == "Recognize the first letter of your answer."
        assert card[2].hint == "Recognize the last letter of your answer."
        assert card[6].hint is None

    def test_stable_across_calls(self, service):
        service.register("alex", ANSWERS)
        first = json.dumps(service.challenge("alex").as_dict(), sort_keys=True)
        second = json.dumps(service.challenge("alex").as_dict(), sort_keys=True)
        assert first == second

    def test_unknown_user(self, service):
        with pytest.raises(UnknownUserError):
            service.challenge("ghost")

    def test_never_reveals_positions(self, service):
        service.register("alex", ANSWERS)
        blob = json.dumps(service.challenge("alex").as_dict())
        assert "correct" not in blob and "true" not in blob


class TestLogin:
    def test_true_sequence_allows(self, service):
        service.register("alex", ANSWERS)
        seq = recognized_sequence(service.challenge("alex"))
        assert service.login("alex", seq) == AuthService.ALLOW
        assert service.alarms() == []

    def test_unknown_user(self, service):
        with pytest.raises(UnknownUserError):
            service.login("ghost", "AAAAAA")

    def test_garbage_denied_without_alarm(self, service):
        service.register("alex", ANSWERS)
        seq = recognized_sequence(service.challenge("alex"))
        garbage = next(
            "".join(c) for c in itertools.product("ABCD", repeat=6)
            if service.vault.verify_submission("alex", "".join(c)) is None
        )
        assert garbage != seq
        assert service.login("alex", garbage) == AuthService.DENY
        assert service.alarms() == []
        assert service.checker.alarm_count() == 0

    def test_full_sweep_detects_all_decoys(self, service):
        k = service.scheme.params.k
        service.register("alex", ANSWERS)
        outcomes = [
            service.login("alex", "".join(c))
            for c in itertools.product("ABCD", repeat=6)
        ]
        assert outcomes.count(AuthService.ALLOW) == 1
        assert len(service.alarms()) == k - 1
        assert service.checker.alarm_count() == k - 1

    def test_lock_account_policy(self, tmp_path, person_groups, movie_groups):
        service = AuthService(
            vault=Vault(tmp_path / "v"),
            checker=HoneyChecker(tmp_path / "c"),
            scheme=scheme_config(person_groups, movie_groups),
            policy=AlarmPolicy.LOCK_ACCOUNT,
            rng=random.Random(7),
        )
        service.register("alex", ANSWERS)
        seq = recognized_sequence(service.challenge("alex"))
        decoy = next(
            "".join(c) for c in itertools.product("ABCD", repeat=6)
            if "".join(c) != seq
            and service.vault.verify_submission("alex", "".join(c)) is not None
        )
        assert service.login("alex", decoy) == AuthService.DENY
        assert service.is_locked("alex")
        # even the true sequence is refused now, indistinguishably
        assert service.login("alex", seq) == AuthService.DENY

    def test_lock_all_policy(self, tmp_path, person_groups, movie_groups):
        service = AuthService(
            vault=Vault(tmp_path / "v"),
            checker=HoneyChecker(tmp_path / "c"),
            scheme=scheme_config(person_groups, movie_groups),
            policy=AlarmPolicy.LOCK_ALL,
            rng=random.Random(7),
        )
        service.register("alex", ANSWERS)
        service.register("bea", ANSWERS)
        seq_a = recognized_sequence(service.challenge("alex"))
        seq_b = recognized_sequence(service.challenge("bea"))
        decoy = next(
            "".join(c) for c in itertools.product("ABCD", repeat=6)
            if "".join(c) != seq_a
            and service.vault.verify_submission("alex", "".join(c)) is not None
        )
        assert service.login("alex", decoy) == AuthService.DENY
        assert service.login("bea", seq_b) == AuthService.DENY

    def test_fail_closed_when_checker_unreachable(
        self, tmp_path, person_groups, movie_groups
    ):
        class DeadChecker:
            def __init__(self, live):
                self.live = live

            def set(self, username, index):
                self.live.set(username, index)

            def check(self, username, index):
                raise ConnectionError("link down")

        service = AuthService(
            vault=Vault(tmp_path / "v"),
            checker=DeadChecker(HoneyChecker(tmp_path / "c")),
            scheme=scheme_config(person_groups, movie_groups),
            rng=random.Random(7),
        )
        service.register("alex", ANSWERS)
        seq = recognized_sequence(service.challenge("alex"))
        assert service.login("alex", seq) == AuthService.DENY

    def test_checker_missing_record_fails_closed(
        self, tmp_path, person_groups, movie_groups
    ):
        checker = HoneyChecker(tmp_path / "c")
        service = AuthService(
            vault=Vault(tmp_path / "v"),
            checker=checker,
            scheme=scheme_config(person_groups, movie_groups),
            rng=random.Random(7),
        )
        service.register("alex", ANSWERS)
        seq = recognized_sequence(service.challenge("alex"))
        checker._records.clear()  # simulate divergent checker state
        assert service.login("alex", seq) == AuthService.DENY

    def test_rate_limit_window(self, tmp_path, person_groups, movie_groups):
        service = AuthService(
            vault=Vault(tmp_path / "v"),
            checker=HoneyChecker(tmp_path / "c"),
            scheme=scheme_config(person_groups, movie_groups),
            rng=random.Random(7),
            rate_limit_attempts=3,
            rate_limit_window_s=3600,
        )
        service.register("alex", ANSWERS)
        seq = recognized_sequence(service.challenge("alex"))
        for _ in range(3):
            assert service.login("alex", seq) == AuthService.ALLOW
        assert service.login("alex", seq) == AuthService.DENY


class TestHttpApi:
    @pytest.fixture
    def client(self, service):
        from fastapi.testclient import TestClient

        return TestClient(create_app(service))

    @staticmethod
    def register_body():
        return {
            "username": "alex",
            "answers": [
                {"question": a.question_id, "answer": a.answer} for a in ANSWERS
            ],
        }

    def test_register_challenge_login_flow(self, client):
        assert client.post("/register", json=self.register_body()).status_code == 200
        challenge = client.get("/challenge/alex").json()
        letters = []
        for item in challenge["items"]:
            values = [alt["value"] for alt in item["alternatives"]]
            pos = values.index(TRUE_VALUES[item["question"]])
            letters.append(item["alternatives"][pos]["label"])
        sequence = "".join(letters)
        reply = client.post("/login", json={"username": "alex", "sequence": sequence})
        assert reply.json() == {"result": "ALLOW"}

    def test_duplicate_register_conflict(self, client):
        client.post("/register", json=self.register_body())
        reply = client.post("/register", json=self.register_body())
        assert reply.status_code == 409
        assert reply.json()["detail"]["error"] == "duplicate_user"

    def test_invalid_answer_names_question(self, client):
        body = self.register_body()
        body["answers"][3]["answer"] = "not a number"
        reply = client.post("/register", json=body)
        assert reply.status_code == 422
        assert reply.json()["detail"]["question"] == 6

    def test_challenge_unknown_user_404(self, client):
        assert client.get("/challenge/ghost").status_code == 404

    def test_login_unknown_user_404(self, client):
        reply = client.post("/login", json={"username": "ghost", "sequence": "AAAAAA"})
        assert reply.status_code == 404

    def test_deny_bodies_byte_identical(self, client, service):
        client.post("/register", json=self.register_body())
        seq = recognized_sequence(service.challenge("alex"))
        decoy = next(
            "".join(c) for c in itertools.product("ABCD", repeat=6)
            if "".join(c) != seq
            and service.vault.verify_submission("alex", "".join(c)) is not None
        )
        garbage = next(
            "".join(c) for c in itertools.product("ABCD", repeat=6)
            if service.vault.verify_submission("alex", "".join(c)) is None
        )
        deny_decoy = client.post("/login", json={"username": "alex", "sequence": decoy})
        deny_garbage = client.post("/login", json={"username": "alex", "sequence": garbage})
        assert deny_decoy.content == deny_garbage.content
        assert deny_decoy.status_code == deny_garbage.status_code == 200

    def test_alarm_feed(self, client, service):
        client.post("/register", json=self.register_body())
        assert client.get("/admin/alarms").json() == {"alarms": []}
        seq = recognized_sequence(service.challenge("alex"))
        decoy = next(
            "".join(c) for c in itertools.product("ABCD", repeat=6)
            if "".join(c) != seq
            and service.vault.verify_submission("alex", "".join(c)) is not None
        )
        client.post("/login", json={"username": "alex", "sequence": decoy})
        alarms = client.get("/admin/alarms").json()["alarms"]
        assert len(alarms) == 1
        assert alarms[0]["username"] == "alex"
        assert alarms[0]["time_ms"] > 0

    def test_catalog_endpoint(self, client):
        obj = client.get("/catalog").json()
        assert len(obj["questions"]) == 10
        assert obj["params"]["q"] == 6
        assert obj["params"]["d"] == 4

    def test_no_secret_fields_in_any_payload(self, client, service):
        client.post("/register", json=self.register_body())
        payloads = [
            client.get("/challenge/alex").json(),
            client.get("/catalog").json(),
            client.post(
                "/login", json={"username": "alex", "sequence": "AAAAAA"}
            ).json(),
            client.get("/admin/alarms").json(),
        ]
        forbidden = {"correct_position", "true_index", "hashes", "salt", "digest"}
        def walk(node):
            if isinstance(node, dict):
                assert not (set(node) & forbidden)
                for v in node.values():
                    walk(v)
            elif isinstance(node, list):
                for v in node:
                    walk(v)
        for payload in payloads:
            walk(payload)
