import socket

import pytest

from qhoney.honeychecker import (
    CheckResult,
    HoneyChecker,
    HoneyCheckerClient,
    HoneyCheckerServer,
)


@pytest.fixture
def checker(tmp_path):
    return HoneyChecker(tmp_path / "state")


class TestCore:
    def test_set_then_matching_check(self, checker):
        checker.set("alice", 2)
        assert checker.check("alice", 2) is CheckResult.MATCH

    def test_mismatch_alarms(self, checker):
        checker.set("alice", 2)
        assert checker.check("alice", 5) is CheckResult.ALARM
        assert checker.alarm_count() == 1

    def test_unknown_user(self, checker):
        assert checker.check("ghost", 0) is CheckResult.UNKNOWN_USER
        assert checker.alarm_count() == 0

    def test_last_write_wins(self, checker):
        checker.set("alice", 2)
        checker.set("alice", 7)
        assert checker.check("alice", 2) is CheckResult.ALARM
        assert checker.check("alice", 7) is CheckResult.MATCH

    def test_negative_index_rejected(self, checker):
        with pytest.raises(ValueError):
            checker.set("u", -1)

    def test_state_survives_restart(self, tmp_path):
        HoneyChecker(tmp_path / "s").set("alice", 3)
        again = HoneyChecker(tmp_path / "s")
        assert again.check("alice", 3) is CheckResult.MATCH

    def test_alarm_log_format(self, checker):
        checker.set("a user", 1)
        checker.check("a user", 0)
        line = checker.alarm_log_path.read_text().strip()
        epoch_ms, word, user, idx = line.split(" ")
        assert int(epoch_ms) > 0
        assert word == "ALARM"
        assert user == "a%20user"  # percent-encoded
        assert idx == "0"

    def test_exhaustive_detection_over_all_positions(self, checker):
        # for a k-entry list exactly one submission matches: detection
        # probability over uniform submissions is (k-1)/k
        k = 20
        checker.set("u", 13)
        outcomes = [checker.check("u", i) for i in range(k)]
        assert outcomes.count(CheckResult.MATCH) == 1
        assert outcomes.count(CheckResult.ALARM) == k - 1
        assert checker.alarm_count() == k - 1


@pytest.fixture
def server(tmp_path):
    srv = HoneyCheckerServer(HoneyChecker(tmp_path / "state"), "127.0.0.1", 0)
    srv.serve_in_background()
    yield srv
    srv.shutdown()
    srv.server_close()


@pytest.fixture
def client(server):
    host, port = server.address
    return HoneyCheckerClient(host, port)


class TestWireProtocol:
    def test_set_and_check(self, client):
        client.set("alice", 2)
        assert client.check("alice", 2) is CheckResult.MATCH
        assert client.check("alice", 3) is CheckResult.ALARM
        assert client.check("bob", 0) is CheckResult.UNKNOWN_USER

    def test_username_with_spaces(self, client):
        client.set("mr x", 4)
        assert client.check("mr x", 4) is CheckResult.MATCH

    def test_raw_wire_grammar(self, server):
        host, port = server.address
        with socket.create_connection((host, port)) as sock:
            fh = sock.makefile("rw", encoding="utf-8", newline="\n")
            fh.write("SET alice 2\nCHECK alice 2\nCHECK alice 0\nCHECK ghost 1\n")
            fh.flush()
            assert fh.readline() == "OK\n"
            assert fh.readline() == "MATCH\n"
            assert fh.readline() == "ALARM\n"
            assert fh.readline() == "UNKNOWN\n"

    @pytest.mark.parametrize("line,prefix", [
        ("SET u -1\n", "ERR"),
        ("SET u x\n", "ERR"),
        ("SET u\n", "ERR"),
        ("NOPE u 1\n", "ERR"),
        ("SET u 1 extra\n", "ERR"),
    ])
    def test_malformed_requests(self, server, line, prefix):
        host, port = server.address
        with socket.create_connection((host, port)) as sock:
            fh = sock.makefile("rw", encoding="utf-8", newline="\n")
            fh.write(line)
            fh.flush()
            assert fh.readline().startswith(prefix)

    def test_set_durable_before_ack(self, server, tmp_path):
        host, port = server.address
        client = HoneyCheckerClient(host, port)
        client.set("alice", 9)
        # the snapshot already holds the record once the ack arrived
        reloaded = HoneyChecker(server.checker.dir)
        assert reloaded.check("alice", 9) is CheckResult.MATCH

    def test_client_error_when_server_down(self, tmp_path):
        client = HoneyCheckerClient("127.0.0.1", 1)  # nothing listens there
        with pytest.raises(OSError):
            client.check("alice", 0)
