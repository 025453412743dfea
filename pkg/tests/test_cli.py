from __future__ import annotations

import json
import os
import random
import subprocess
import sys

import pytest

from ata.cli import main
from ata.engine import EXIT_CODES, decide
from ata.harness import random_instance
from ata.lang import serialize_claim, serialize_kb
from conftest import ALICE_CLAIM, ALICE_KB, TRAVEL
from helpers import smt_available, smt_check


@pytest.fixture
def files(tmp_path):
    (tmp_path / "kb.atakb").write_text(ALICE_KB)
    (tmp_path / "alice.ataclaim").write_text(ALICE_CLAIM)
    (tmp_path / "bare.ataclaim").write_text("const ALICE: Person\n")
    (tmp_path / "clash.ataclaim").write_text("const ALICE: Person\nfact is_sick(ALICE)\nfact !is_sick(ALICE)\n")
    (tmp_path / "alice.txt").write_text("Alice is the sister of Bob.\n")
    (tmp_path / "empty.txt").write_text("")
    (tmp_path / "mini.atarules").write_text(
        "entity Person {X:Cap} is\nentity Person of {X:Cap}\nrelation is_sister(A, B) {A:Cap} is the sister of {B:Cap}\n"
    )
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok(capsys):
    code, out, err = run(capsys, "validate", "--kb", TRAVEL / "travel.atakb", "--triggers", TRAVEL / "travel.atatriggers")
    assert (code, out, err) == (0, "", "")


def test_validate_unbound_variable(capsys, tmp_path):
    bad = tmp_path / "bad.atakb"
    bad.write_text("sort Person\ncond is_sick(Person)\ngoal is_covered(Person)\n"
                   'rule r1: forall p:Person. is_sick(q) -> is_covered(p) from "x"\n')
    code, out, err = run(capsys, "validate", "--kb", bad)
    assert code == 1 and out == ""
    errors = [l for l in err.splitlines() if ": error: " in l]
    assert errors == [f"{bad}:4:35: error: UnboundVariable: variable q is not quantified"]


def test_validate_empty_provenance_is_lint(capsys, tmp_path):
    kb = tmp_path / "lint.atakb"
    kb.write_text(ALICE_KB.replace('"Acute illness is covered."', '""'))
    code, _, err = run(capsys, "validate", "--kb", kb)
    assert code == 0
    assert "lint: EmptyProvenance" in err


def test_decide_alice(capsys, files):
    code, out, err = run(capsys, "decide", "--kb", files / "kb.atakb", "--claim", files / "alice.ataclaim",
                         "--goal", "is_covered(ALICE)")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["verdict"] == "covered"
    assert [e["kind"] for e in doc["core"]] == ["rule", "fact", "negated_goal"]
    assert doc["core"][0]["binding"] == {"p": "ALICE"}


@pytest.mark.parametrize("claim, code", [("bare.ataclaim", 1), ("clash.ataclaim", 2)])
def test_decide_exit_codes(capsys, files, claim, code):
    got, out, _ = run(capsys, "decide", "--kb", files / "kb.atakb", "--claim", files / claim, "--goal", "is_covered(ALICE)")
    assert got == code
    assert json.loads(out)["verdict"] == ["covered", "not_covered", "inconsistent"][code]


def test_decide_all_goals(capsys, files):
    code, out, _ = run(capsys, "decide", "--kb", files / "kb.atakb", "--claim", files / "bare.ataclaim")
    assert code == 1
    assert [d["goal"] for d in json.loads(out)] == ["is_covered(ALICE)"]
    code, _, err = run(capsys, "decide", "--kb", files / "kb.atakb", "--claim", files / "bare.ataclaim",
                       "--max-goal-instances", "0")
    assert code == 65 and "TooManyGoalInstances" in err


def test_decide_missing_claim(capsys, files):
    code, out, err = run(capsys, "decide", "--kb", files / "kb.atakb", "--claim", files / "nope.ataclaim")
    assert code == 64 and out == "" and "does not exist" in err


def test_decide_bad_goal(capsys, files):
    code, _, err = run(capsys, "decide", "--kb", files / "kb.atakb", "--claim", files / "alice.ataclaim",
                       "--goal", "is_sick(ALICE)")
    assert code == 65 and "GoalNotDeclared" in err


def test_explain_text(capsys, files):
    code, out, _ = run(capsys, "decide", "--kb", files / "kb.atakb", "--claim", files / "alice.ataclaim",
                       "--goal", "is_covered(ALICE)", "--explain", "text")
    assert code == 0
    assert '"Acute illness is covered." (2.1)' in out
    assert "rule r1 [p->ALICE]" in out


def test_decide_from_text_with_triggers(capsys):
    code, out, _ = run(
        capsys, "decide", "--kb", TRAVEL / "travel.atakb", "--claim", TRAVEL / "texts" / "s02a.txt",
        "--rules", TRAVEL / "travel.atarules", "--triggers", TRAVEL / "travel.atatriggers",
        "--goal", "is_covered_cancellation(ALICE)",
    )
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "covered"
    # both the rule instance and the injury fact mention the watched predicate
    assert {t["rule"] for t in doc["triggers"]} == {"injury_in_proof"}
    assert sorted(t["evidence"]["id"] for t in doc["triggers"]) == ["cancel_relative", "f2"]


def test_mutually_exclusive_extractor_flags(capsys, files):
    code, _, err = run(capsys, "axiomize", "--kb", files / "kb.atakb", "--text", files / "alice.txt",
                       "--rules", files / "mini.atarules", "--extractor", "external")
    assert code == 64 and "mutually exclusive" in err


def test_axiomize(capsys, files):
    out_file = files / "alice.ataclaim.out"
    code, _, _ = run(capsys, "axiomize", "--kb", files / "kb.atakb", "--text", files / "alice.txt",
                     "--rules", files / "mini.atarules", "--out", out_file)
    assert code == 0
    text = out_file.read_text()
    assert text.count("const ") == 2 and text.count("fact ") == 1
    assert "fact f1: is_sister(ALICE, BOB)" in text
    code, out, _ = run(capsys, "axiomize", "--kb", files / "kb.atakb", "--text", files / "empty.txt",
                       "--rules", files / "mini.atarules")
    assert code == 0
    assert "const" not in out and "fact" not in out


def test_axiomize_unreachable_extractor_leaves_no_file(capsys, files, monkeypatch):
    monkeypatch.setenv("ATA_EXTRACTOR_URL", "http://127.0.0.1:9/x")
    monkeypatch.setenv("ATA_EXTRACTOR_TIMEOUT", "0.5")
    monkeypatch.setenv("ATA_EXTRACTOR_RETRIES", "0")
    target = files / "out.ataclaim"
    before = set(os.listdir(files))
    code, out, err = run(capsys, "axiomize", "--kb", files / "kb.atakb", "--text", files / "alice.txt",
                         "--extractor", "external", "--out", target)
    assert code == 69
    assert "ExternalExtractorUnavailable" in err
    assert set(os.listdir(files)) == before


def test_external_without_url(capsys, files, monkeypatch):
    monkeypatch.delenv("ATA_EXTRACTOR_URL", raising=False)
    code, _, _ = run(capsys, "axiomize", "--kb", files / "kb.atakb", "--text", files / "alice.txt",
                     "--extractor", "external")
    assert code == 64


def test_export_smt(capsys, files):
    args = ("export-smt", "--kb", files / "kb.atakb", "--claim", files / "alice.ataclaim", "--goal", "is_covered(ALICE)")
    code, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert code == 0 and first == second
    if smt_available():
        assert smt_check(first) == "unsat"
        _, bare, _ = run(capsys, "export-smt", "--kb", files / "kb.atakb", "--claim", files / "bare.ataclaim",
                         "--goal", "is_covered(ALICE)")
        assert smt_check(bare) == "sat"


def test_bench_and_stability(capsys):
    code, out, _ = run(capsys, "bench", "--kb", TRAVEL / "travel.atakb", "--manifest", TRAVEL / "claims.manifest")
    assert code == 0 and json.loads(out)["accuracy"] == 1.0
    code, out, _ = run(capsys, "stability", "--kb", TRAVEL / "travel.atakb", "--manifest", TRAVEL / "texts.manifest",
                       "--rules", TRAVEL / "travel.atarules", "--repetitions", "3", "--jobs", "2")
    doc = json.loads(out)
    assert code == 0 and doc["intrinsic_stddev"] == 0.0 and doc["extrinsic"]["stddev"] == 0.0


def test_bench_malformed_manifest_line(capsys, tmp_path):
    (tmp_path / "m.txt").write_text(
        f"{TRAVEL / 'claims' / 'c01.ataclaim'} is_covered_cancellation(ANNA) covered\nthis line is broken badly\n"
    )
    code, out, _ = run(capsys, "bench", "--kb", TRAVEL / "travel.atakb", "--manifest", tmp_path / "m.txt")
    doc = json.loads(out)
    assert code == 1
    assert doc["matches"] == 1 and doc["manifest_errors"][0]["line"] == 2


def test_kb_directory_fragments(capsys, tmp_path, files):
    d = tmp_path / "kbdir"
    d.mkdir()
    (d / "10-sig.atakb").write_text("sort Person\ncond is_sick(Person)\ngoal is_covered(Person)\n")
    (d / "20-rules.atakb").write_text('rule r1: forall p:Person. is_sick(p) -> is_covered(p) from "x"\n')
    (d / "notes.txt").write_text("ignored")
    code, _, _ = run(capsys, "decide", "--kb", d, "--claim", files / "alice.ataclaim", "--goal", "is_covered(ALICE)")
    assert code == 0
    (d / "20-rules.atakb").write_text('rule r1: forall p:Person. is_sick(q) -> is_covered(p) from "x"\n')
    code, _, err = run(capsys, "validate", "--kb", d)
    assert code == 1
    assert f"{d / '20-rules.atakb'}:1:35: error: UnboundVariable" in err


def test_usage_errors(capsys):
    assert run(capsys, "decide")[0] == 64
    assert run(capsys, "bogus")[0] == 64
    assert run(capsys, "bench", "--kb", TRAVEL / "travel.atakb", "--manifest", "x", "--jobs", "0")[0] == 64


@pytest.mark.parametrize("seed", range(25))
def test_exit_code_matches_verdict(capsys, tmp_path, seed):
    kb, claim, goal = random_instance(random.Random(seed))
    (tmp_path / "k.atakb").write_text(serialize_kb(kb))
    (tmp_path / "c.ataclaim").write_text(serialize_claim(claim))
    code, out, _ = run(capsys, "decide", "--kb", tmp_path / "k.atakb", "--claim", tmp_path / "c.ataclaim", "--goal", goal)
    verdict = decide(kb, claim, goal).verdict
    assert code == EXIT_CODES[verdict]
    assert json.loads(out)["verdict"] == verdict


def test_console_script(tmp_path, files):
    out = subprocess.run(
        [sys.executable, "-m", "ata.cli", "decide", "--kb", str(files / "kb.atakb"), "--claim",
         str(files / "alice.ataclaim"), "--goal", "is_covered(ALICE)", "--format", "text"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert "verdict COVERED" in out.stdout
