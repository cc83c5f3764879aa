import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "python"))
import markovlab as ml  # noqa: E402

CLI = os.environ.get("MARKOVLAB_CLI")

BELL = np.zeros((4, 4), dtype=complex)
for i in (0, 3):
    for j in (0, 3):
        BELL[i, j] = 0.5


def ghz_state():
    v = np.zeros(8, dtype=complex)
    v[0] = v[7] = 1 / math.sqrt(2)
    return ml.LabeledState.make(np.outer(v, v.conj()),
                                [("R", 2), ("Q", 2), ("E", 2)])


def test_state_roundtrip_and_entropies():
    s = ml.LabeledState.make(BELL, [("R", 2), ("Q", 2)])
    assert s.labels == [("R", 2), ("Q", 2)]
    assert np.allclose(s.matrix, BELL)
    assert abs(ml.entropy(s)) < 1e-12
    assert abs(ml.mutual_information(s, ["R"], ["Q"]) - 2.0) < 1e-10
    m = ml.marginal(s, ["Q"])
    assert np.allclose(m.matrix, np.eye(2) / 2)


def test_cmi_and_markov():
    g = ghz_state()
    assert abs(ml.cmi(g, "R", "Q", "E") - 1.0) < 1e-10
    v = ml.is_markov(g, "R", "Q", "E")
    assert not v.is_markov

    inst = ml.zero_discord_instance(2, 2, [0.5, 0.5], seed=3)
    v = ml.is_markov(inst.state, "R", "Q", "E")
    assert v.is_markov
    assert v.recovery_distance < 1e-8


def test_not_markov_exception():
    iso = ml.random_isometry([("Qi", 2), ("Ei", 2)],
                             [("Q'", 2), ("E'", 2)], 4)
    with pytest.raises(ml.NotMarkovError):
        ml.reduced_dynamics(ghz_state(), "R", "Q", "E", iso, ["E'"])


def test_channels_numpy_interop():
    swap = np.eye(4)[[0, 2, 1, 3]].astype(complex)
    t = ml.Channel.from_choi(swap, [("Q", 2)], [("Q'", 2)])
    rep = ml.classify(t)
    assert not rep.is_cp
    assert rep.is_tp
    assert abs(rep.min_choi_eig + 1.0) < 1e-9

    ident = ml.Channel.from_kraus([np.eye(2, dtype=complex)],
                                  [("Q", 2)], [("Q'", 2)])
    assert ml.classify(ident).is_cp
    x = np.array([[0.25, 0.1], [0.1, 0.75]], dtype=complex)
    assert np.allclose(ident.apply_matrix(x), x)


def test_steering_and_family():
    inst = ml.zero_discord_instance(2, 2, [0.5, 0.5], seed=5)
    steered = ml.steer(inst.state, np.eye(2, dtype=complex) - np.diag([0, 1.0]),
                       "R", ["Q", "E"])
    assert np.allclose(steered.matrix, inst.family.generators[0].matrix,
                       atol=1e-10)
    cert = ml.family_certificate(inst.family)
    assert cert.markov


def test_revival_trace():
    grid = [2 * math.pi * i / 200 for i in range(201)]
    trace = ml.revival_trace(grid)
    assert abs(trace.concurrence_rq[0] - 1.0) < 1e-10
    assert trace.concurrence_rq[50] < 1e-9
    assert len(trace.revival_intervals) >= 1


def test_theorem1_audit():
    rep = ml.theorem1_audit(2, 2, seed=11)
    assert rep.all_pass
    assert rep.text == ml.theorem1_audit(2, 2, seed=11).text


def test_io_roundtrip(tmp_path):
    s = ml.random_state([("R", 2), ("Q", 2)], 3, 17)
    path = str(tmp_path / "state.json")
    ml.write_state(s, path)
    back = ml.read_state(path)
    assert np.array_equal(back.matrix, s.matrix)
    with open(path) as f:
        doc = json.load(f)
    assert doc["systems"][0] == {"label": "R", "dim": 2}


@pytest.mark.skipif(CLI is None, reason="MARKOVLAB_CLI not set")
class TestCli:
    def run(self, *args, **kw):
        return subprocess.run([CLI, *args], capture_output=True, text=True,
                              **kw)

    def test_check_markov_exit_codes(self, tmp_path):
        path = str(tmp_path / "ghz.json")
        ml.write_state(ghz_state(), path)
        r = self.run("check-markov", path, "--r", "R", "--q", "Q", "--e", "E")
        assert r.returncode == 3
        assert "cmi=1.000000" in r.stdout

        good = str(tmp_path / "markov.json")
        ml.write_state(ml.zero_discord_instance(2, 2, [0.5, 0.5], seed=1).state,
                       good)
        assert self.run("check-markov", good).returncode == 0

    def test_parse_and_validation_errors(self, tmp_path):
        assert self.run("check-markov", "/nonexistent.json").returncode == 1

        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({
            "systems": [{"label": "Q", "dim": 2}],
            "matrix": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-0.01, 0.0]]],
        }))
        assert self.run("check-markov", str(bad)).returncode == 2

    def test_reduce_identity(self, tmp_path):
        state = str(tmp_path / "factorized.json")
        rho = np.kron(BELL, np.eye(2, dtype=complex) / 2)
        ml.write_state(ml.LabeledState.make(rho, [("R", 2), ("Q", 2),
                                                  ("E", 2)]), state)
        iso = str(tmp_path / "id.json")
        ml.write_isometry(ml.Isometry.make(np.eye(4, dtype=complex),
                                           [("Qi", 2), ("Ei", 2)],
                                           [("Q'", 2), ("E'", 2)]), iso)
        out = str(tmp_path / "channel.json")
        r = self.run("reduce", state, iso, "--out", out, "--discard", "E'")
        assert r.returncode == 0
        c = ml.read_channel(out)
        ident = ml.Channel.from_kraus([np.eye(2, dtype=complex)],
                                      [("Q", 2)], [("Q'", 2)])
        assert np.allclose(c.choi, ident.choi, atol=1e-9)

        ghz = str(tmp_path / "ghz.json")
        ml.write_state(ghz_state(), ghz)
        assert self.run("reduce", ghz, iso, "--out", out).returncode == 3

    def test_demo_and_audit(self, tmp_path):
        r = self.run("demo", "example2")
        assert r.returncode == 0
        assert "zeta_RQE Markov: yes" in r.stdout

        out = str(tmp_path / "trace.csv")
        r = self.run("demo", "revival", "--out", out)
        assert r.returncode == 0
        lines = open(out).read().splitlines()
        assert lines[0] == "t,concurrence_RQ,mutual_info_RQ,cmi_RE_given_Q,in_revival"
        assert len(lines) == 202

        r = self.run("audit", "theorem1", "--states", "3", "--isometries",
                     "3", "--seed", "2")
        assert r.returncode == 0
        assert "verdict:                   PASS" in r.stdout

        env = dict(os.environ, MARKOVLAB_SEED="2")
        r2 = subprocess.run([CLI, "audit", "theorem1", "--states", "3",
                             "--isometries", "3"], capture_output=True,
                            text=True, env=env)
        assert r2.stdout == r.stdout

    def test_certify_family(self, tmp_path):
        fam = str(tmp_path / "family.json")
        ml.write_family(ml.zero_discord_instance(2, 2, [0.5, 0.5],
                                                 seed=9).family, fam)
        r = self.run("certify-family", fam)
        assert r.returncode == 0
        assert "Markov" in r.stdout

    def test_witness(self, tmp_path):
        path = str(tmp_path / "ghz.json")
        ml.write_state(ghz_state(), path)
        out = str(tmp_path / "iso.json")
        r = self.run("witness", path, "--out", out)
        assert r.returncode == 0
        v = ml.read_isometry(out)
        m = np.asarray(v.matrix)
        assert np.allclose(m.conj().T @ m, np.eye(m.shape[1]))
