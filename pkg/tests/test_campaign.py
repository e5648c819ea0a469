import json
import subprocess
import sys

import pytest

from maxclass import campaign, cli
from maxclass.campaign import REGISTRY, Check, explain, run_campaign
from maxclass.errors import UnknownCheck, UnsupportedRange
from maxclass.groups import make_group
from maxclass.report import FAIL, PASS, SKIPPED, Entry, VerificationReport


def strip_header(doc):
    doc = dict(doc)
    doc.pop("header")
    return doc


# --- registry and explain ----------------------------------------------------------


def test_registry_complete():
    assert len(REGISTRY) == len(campaign.CHECK_IDS) >= 20
    for c in REGISTRY.values():
        assert c.claim and c.strategy
        assert set(c.families) <= set("dsq")
        assert 3 <= c.n_max <= 8


def test_explain_order_of_A():
    text = explain("order_of_A_ds")
    assert "the order of A is equal to 2^(n-1)" in text
    assert "strategy" in text


def test_explain_theorem2():
    assert "cl U(G) = |G'|" in explain("theorem2")


def test_explain_unknown():
    with pytest.raises(UnknownCheck):
        explain("no_such_check")


# --- campaign --------------------------------------------------------------------


@pytest.fixture(scope="module")
def dihedral_report():
    return run_campaign(["d"], 3, 4, "all", seed=7)


def test_dihedral_all_pass(dihedral_report):
    r = dihedral_report
    assert r.exit_code == 0
    assert not r.failed
    assert any(e.status == PASS for e in r.entries)
    assert all(e.status in (PASS, SKIPPED) for e in r.entries)


def test_each_check_once_per_group(dihedral_report):
    keys = [(e.check_id, e.family, e.n) for e in dihedral_report.entries]
    assert len(keys) == len(set(keys)) == len(REGISTRY) * 2


def test_canonical_order(dihedral_report):
    ids = [e.check_id for e in dihedral_report.entries]
    pos = {c: i for i, c in enumerate(campaign.CHECK_IDS)}
    assert ids == sorted(ids, key=pos.get)


def test_skips_carry_reason(dihedral_report):
    for e in dihedral_report.entries:
        if e.status == SKIPPED:
            assert "reason" in e.witness


def test_empty_check_list():
    r = run_campaign("all", 3, 5, [], seed=0)
    assert r.entries == []
    assert r.exit_code == 0


@pytest.mark.parametrize("lo,hi", [(3, 9), (2, 4), (5, 4)])
def test_unsupported_range(lo, hi):
    with pytest.raises(UnsupportedRange):
        run_campaign("d", lo, hi, ["section"])


def test_unknown_check_in_campaign():
    with pytest.raises(UnknownCheck):
        run_campaign("d", 3, 3, ["bogus"])


def test_out_of_cap_is_skipped():
    r = run_campaign("q", 6, 6, ["section", "tower_q"])
    status = {e.check_id: e.status for e in r.entries}
    assert status == {"section": SKIPPED, "tower_q": PASS}


def test_deterministic_json(tmp_path):
    args = dict(families="all", n_min=3, n_max=4, checks="mul_oracle,inverse_lemma,power_formula,conj_lemma",
                seed=11, samples=300)
    p1, p2, p3 = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    run_campaign(output_path=str(p1), **args)
    run_campaign(output_path=str(p2), **args)
    run_campaign(output_path=str(p3), jobs=2, **args)
    d1, d2, d3 = (json.loads(p.read_text()) for p in (p1, p2, p3))
    assert strip_header(d1) == strip_header(d2) == strip_header(d3)
    assert d1["seed"] == 11
    assert d1["summary"]["fail"] == 0
    assert "generated_at" in d1["header"] and "timings" in d1["header"]
    # body serialization is byte identical once the header is removed
    assert json.dumps(strip_header(d1)) == json.dumps(strip_header(d2))


def test_failure_carries_witness(monkeypatch):
    bad = Check("always_fails", "0 = 1", "none", lambda spec, rng, s: (False, {"why": "by design"}))
    boom = Check("raises", "x", "none", lambda spec, rng, s: 1 / 0)
    monkeypatch.setitem(REGISTRY, "always_fails", bad)
    monkeypatch.setitem(REGISTRY, "raises", boom)
    r = run_campaign("d", 3, 3, ["always_fails", "raises"])
    assert r.exit_code == 1
    assert [e.status for e in r.entries] == [FAIL, FAIL]
    assert r.entries[0].witness == {"why": "by design"}
    assert "ZeroDivisionError" in r.entries[1].witness["exception"]


def test_io_error_has_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    target = blocker / "report.json"
    with pytest.raises(OSError) as info:
        run_campaign("d", 3, 3, ["group_relations"], output_path=str(target))
    assert str(target) in str(info.value)


def test_text_report(tmp_path):
    out = tmp_path / "r.txt"
    r = run_campaign("q", 3, 3, ["order_of_A_q", "telescope"], output_path=str(out), fmt="text")
    text = out.read_text()
    assert "order_of_A_q" in text and "telescope" in text
    assert "2 passed, 0 failed, 0 skipped" in text
    assert r.exit_code == 0


def test_run_check_direct():
    e = campaign.run_check("order_of_A_q", make_group("q", 5))
    assert e.passed and e.witness["order"] == 16
    e = campaign.run_check("order_of_A_q", make_group("d", 5))
    assert e.status == SKIPPED


def test_report_roundtrip():
    r = VerificationReport([Entry("x", "d", 3, FAIL, {"w": 1}, 0.5)], seed=3, parameters={"checks": ["x"]})
    doc = json.loads(r.dumps())
    assert doc["entries"] == [{"check_id": "x", "family": "d", "n": 3, "status": "fail", "witness": {"w": 1}}]
    assert doc["header"]["timings"] == {"x/d/3": 0.5}
    assert r.exit_code == 1
    assert "witness" in r.to_text()


# --- command line ----------------------------------------------------------------


def test_cli_verify(tmp_path, capsys):
    out = tmp_path / "r.json"
    rc = cli.main(["verify", "--family", "s", "--n-min", "4", "--n-max", "4", "--checks",
                   "tower_ds,direct_decomposition", "--seed", "1", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["summary"] == {"total": 2, "pass": 2, "fail": 0, "skipped": 0}
    assert "2 passed" in capsys.readouterr().out


def test_cli_verify_stdout_text(capsys):
    rc = cli.main(["verify", "--family", "d", "--n-min", "3", "--n-max", "3", "--checks", "group_relations",
                   "--format", "text"])
    assert rc == 0
    assert "PASS" in capsys.readouterr().out


def test_cli_errors(capsys):
    assert cli.main(["verify", "--n-max", "9"]) == 2
    assert cli.main(["explain", "nope"]) == 2
    err = capsys.readouterr().err
    assert "outside the supported range" in err and "unknown check" in err


def test_cli_explain(capsys):
    assert cli.main(["explain", "theorem2"]) == 0
    assert "cl U(G) = |G'|" in capsys.readouterr().out
    assert cli.main(["explain", "--list"]) == 0
    assert "section" in capsys.readouterr().out.split()


@pytest.mark.parametrize("obj,order", [("F", 256), ("section", 64), ("wreath", 64)])
def test_cli_table(tmp_path, obj, order):
    path = tmp_path / f"{obj}.json"
    assert cli.main(["table", "--family", "q", "--n", "4", "--object", obj, "--export", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert doc["order"] == order
    assert len(doc["mul_table"]) == order * order


def test_cli_certify(tmp_path):
    path = tmp_path / "cert.json"
    assert cli.main(["certify", "--family", "d", "--n", "4", "--out", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert doc["section_order"] == 64 and doc["class"] == 4
    assert sorted(doc["isomorphism"]) == list(range(64))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "maxclass", "explain", "order_of_A_q"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "2^(n-1)" in proc.stdout
