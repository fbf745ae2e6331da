import os
import subprocess
import sys

import pytest

from extraloop.cli import main, run
from extraloop.loop import boolean_group
from extraloop.tableio import load_table, save_table


@pytest.fixture
def group_table(tmp_path):
    path = tmp_path / "z2cubed.tbl"
    save_table(boolean_group(3), path)
    return str(path)


def test_check_group(group_table):
    status, out = run(["check", group_table])
    assert status == 0
    flags = dict(line.split(": ") for line in out.splitlines())
    assert all(v == "true" for k, v in flags.items() if k != "order")


def test_kv_format(group_table):
    status, out = run(["--format", "kv", "check", group_table])
    assert status == 0 and "moufang=true" in out.splitlines()


def test_analyze_example512(tmp_path):
    status, out = run(["examples", "--outdir", str(tmp_path)])
    assert status == 0
    status, out = run(["--format", "kv", "analyze", str(tmp_path / "example512.tbl")])
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert status == 0
    assert kv["center"] == "2" and kv["associator_subloop"] == "32" and kv["index_nucleus"] == "16"
    assert kv["quotient_by_center_associative"] == "false"
    for name in ("cayley", "canonical16", "loop960"):
        assert (tmp_path / f"{name}.tbl").exists()


def test_build_round_trip(tmp_path):
    run(["examples", "--outdir", str(tmp_path)])
    out1, out2 = tmp_path / "a.tbl", tmp_path / "b.tbl"
    assert run(["build", str(tmp_path / "canonical16.spec"), "-o", str(out1)])[0] == 0
    assert run(["build", str(tmp_path / "canonical16.spec"), "-o", str(out2)])[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert load_table(out1) == load_table(tmp_path / "canonical16.tbl")


def test_census16p():
    status, out = run(["census16p", "-p", "3"])
    assert status == 0 and out.splitlines()[-1] == "16 classes"


def test_census16():
    status, out = run(["census16"])
    assert status == 0 and out.splitlines()[-1] == "5 classes"


def test_sylow_output():
    status, out = run(["sylow", "@loop80", "-p", "2"])
    lines = out.splitlines()
    assert status == 0
    assert all(line.startswith("member ") for line in lines[:-1])
    assert lines[-1] == "count=5, mod_p=1, divides_r=true"


def test_hall_and_iso():
    status, out = run(["hall", "@loop240", "--pi", "2,3"])
    assert status == 0 and "order: 48" in out
    status, out = run(["iso", "@cayley", "@canonical16"])
    assert status == 0 and "isomorphic: false" in out


def test_rmlt():
    status, out = run(["rmlt", "@cayley"])
    assert status == 0 and "bijection=true" in out


def test_suite_on_fixture():
    status, out = run(["suite", "@cayley"])
    assert status == 0 and "failures: 0" in out
    assert "FAIL" not in out


def test_suite_reports_failures(monkeypatch):
    from extraloop import properties

    def always_fails(ctx):
        return properties.CheckResult("square", "fail", 1, "exhaustive", "forced")

    monkeypatch.setitem(properties.SUITE, "square", always_fails)
    status, out = run(["suite", "@cayley", "--tags", "square,assoc"])
    assert status == 1
    assert "cayley n=16 square FAIL tuples=1 mode=exhaustive (forced)" in out
    assert "failures: 1" in out


def test_exit_codes(tmp_path):
    assert run(["check", str(tmp_path / "missing.tbl")])[0] == 2
    bad = tmp_path / "bad.tbl"
    bad.write_text("2\n0 1\n1 1\n")
    assert run(["check", str(bad)])[0] == 2
    assert run(["frobnicate"])[0] == 2
    assert run(["check", "@cayley", "--bogus"])[0] == 2
    assert run(["--cap", "10", "rmlt", "@cayley"])[0] == 3
    assert "EXTRALOOP_CAP" not in os.environ
    assert run(["sylow", "@cc6", "-p", "2"])[0] == 2
    assert run(["census16p", "-p", "17"])[0] == 3


def test_assertion_exit(monkeypatch):
    import extraloop.census as census

    real = census.census_16p

    def broken(*args, **kwargs):
        c = real(*args, **kwargs)
        c.classes.pop()
        return c

    monkeypatch.setattr(census, "census_16p", broken)
    status, out = run(["census16p", "-p", "3"])
    assert status == 1 and out.splitlines()[-1] == "15 classes"


def test_deterministic_reports():
    a = run(["suite", "@canonical16", "--seed", "4"])
    b = run(["suite", "@canonical16", "--seed", "4"])
    assert a == b


def test_console_script(group_table):
    proc = subprocess.run([sys.executable, "-m", "extraloop.cli", "check", group_table],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "associative: true" in proc.stdout


def test_main_prints(capsys, group_table):
    assert main(["check", group_table]) == 0
    assert "order: 8" in capsys.readouterr().out
