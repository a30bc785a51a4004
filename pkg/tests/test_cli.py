"""The command-line surface: reports on stdout, artifacts, exit codes.

stdout must be a deterministic function of the arguments; anything
wall-clock-ish goes to stderr.
"""

import json
import subprocess
import sys

import pytest

F2 = "groups/f2.grp"
PSL = "groups/psl2z.grp"
S3 = "groups/s3.grp"


def run(*args):
    return subprocess.run(
        [sys.executable, "-m", "geoshift.cli", *args],
        capture_output=True, text=True, cwd=".",
    )


def test_version():
    r = run("--version")
    assert r.returncode == 0
    assert "geoshift" in r.stdout


def test_automaton_report():
    r = run("automaton", "--group", F2, "-N", "8")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["tool"]["name"] == "geoshift"
    assert doc["command"] == "automaton"
    assert doc["config"]["seed"] == 0
    assert doc["report"]["states"] == 5
    assert doc["report"]["transitions"] == 16
    assert doc["report"]["sphere_counts"][:5] == [1, 4, 12, 36, 108]


def test_stdout_is_deterministic():
    a = run("automaton", "--group", F2)
    b = run("automaton", "--group", F2)
    assert a.stdout == b.stdout
    # timing chatter goes to stderr only
    assert "wall-clock" in a.stderr
    assert "wall-clock" not in a.stdout


def test_artifacts_match_stdout(tmp_path):
    out = str(tmp_path / "art")
    r = run("automaton", "--group", F2, "--out", out)
    assert r.returncode == 0
    assert (tmp_path / "art" / "automaton.txt").read_text() == r.stdout
    serialized = (tmp_path / "art" / "automaton.aut").read_text()
    assert serialized.startswith("geodesic-automaton v1")


def test_growth_report():
    r = run("growth", "--group", PSL, "--n-max", "12")
    doc = json.loads(r.stdout)
    assert r.returncode == 0
    assert doc["report"]["growth_rate"] == pytest.approx(0.34657359027997264,
                                                   abs=1e-12)
    assert doc["report"]["envelope"]["c2"] >= doc["report"]["envelope"]["c1"] > 0


def test_components_report():
    r = run("components", "--group", PSL)
    doc = json.loads(r.stdout)
    assert r.returncode == 0
    comps = doc["report"]["components"]
    assert len(comps) == 1
    assert comps[0]["period"] == 2


def test_gibbs_report():
    r = run("gibbs", "--group", F2, "--n-max", "6", "--trials", "50")
    doc = json.loads(r.stdout)
    assert r.returncode == 0
    assert doc["report"]["pressure"] == pytest.approx(0.0, abs=1e-9)
    assert doc["report"]["gibbs"]["c1"] == pytest.approx(0.25, abs=1e-9)
    assert doc["report"]["gibbs"]["c2"] == pytest.approx(0.25, abs=1e-9)
    assert doc["report"]["variational"]["ok"] is True


def test_gibbs_fails_on_a_finite_group():
    r = run("gibbs", "--group", S3)
    assert r.returncode == 1
    assert "no recurrent component" in r.stderr


def test_validate():
    r = run("validate", "--group", F2, "-N", "9")
    doc = json.loads(r.stdout)
    assert r.returncode == 0
    assert doc["report"]["ok"] is True
    assert doc["report"]["checked_to"] == 9


def test_distortion_csv(tmp_path):
    out = str(tmp_path / "d")
    r = run("distortion", "--group", F2, "--to", "Sstar_ab", "--exact-n", "4",
            "--n", "4,8", "--samples", "200", "--out", out)
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["report"]["inequality"]["passed"] is True
    lines = (tmp_path / "d" / "distortion.csv").read_text().splitlines()
    assert lines[0] == "n,exact,mc_mean,mc_stderr,samples"
    # row n=4 carries both columns, in the same per-letter scale
    row4 = dict(zip(lines[0].split(","), lines[4].split(",")))
    assert row4["exact"] == "7/8"
    assert abs(float(row4["mc_mean"]) - 7 / 8) < 0.05
    assert row4["samples"] == "200"


def test_dimension_report(tmp_path):
    out = str(tmp_path / "dim")
    r = run("dimension", "--group", F2, "--to", "Sstar_ab", "-n", "12",
            "--samples", "80", "--rays", "2", "--mc-samples", "100",
            "--out", out)
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert 1.1 < doc["report"]["dim_hat"] < 1.5
    header = (tmp_path / "dim" / "dimension_diagnostics.csv").read_text().splitlines()[0]
    assert header == "ray,k,length_sstar,local_dim"


def test_battery_quick_subset():
    r = run("battery", "--profile", "quick", "--only", "1,2,5")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0].startswith("[ 1] PASS")
    assert any(l.startswith("battery PASS (3/3 criteria") for l in lines)


def test_battery_stdout_is_byte_identical():
    a = run("battery", "--profile", "quick")
    b = run("battery", "--profile", "quick")
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout


@pytest.mark.parametrize("args", [
    ("automaton", "--group", "/definitely/not/there.grp"),
    ("automaton", "--group", F2, "--gens", "nope"),
    ("automaton", "--no-such-flag"),
    ("distortion", "--group", F2, "--to", "Sstar_ab", "--n", "4,banana"),
    ("battery", "--profile", "nonsense"),
])
def test_input_errors_exit_2(args):
    r = run(*args)
    assert r.returncode == 2
    assert r.stdout == ""


def test_malformed_group_file_exits_2(tmp_path):
    bad = tmp_path / "bad.grp"
    bad.write_text("name: X\nfamily: wat\n")
    r = run("automaton", "--group", str(bad))
    assert r.returncode == 2
    assert "input error" in r.stderr
