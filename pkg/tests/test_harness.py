from __future__ import annotations

import random
import shutil

import pytest

from ata.harness import (
    ORACLE_MAX_ATOMS,
    GeneratorConfig,
    brute_force_sat,
    fo_satisfiable,
    load_manifest,
    parse_manifest,
    random_instance,
    run_dataset,
    stability_test,
)
from ata.ingest import RuleTableExtractor
from ata.grounding import ground_problem
from conftest import TRAVEL


def test_oracle_examples():
    assert not brute_force_sat((2, [[-2, 1], [2], [-1]]))
    assert brute_force_sat((2, [[-2, 1], [-1]]))
    assert brute_force_sat((0, []))
    assert not brute_force_sat((0, [[]]))


def test_oracle_refuses_large_problems():
    with pytest.raises(ValueError):
        brute_force_sat((ORACLE_MAX_ATOMS + 1, []))


def test_first_order_oracle_on_alice(alice_kb, alice_claim):
    from ata.logic import GoalInstance

    assert fo_satisfiable(alice_kb, alice_claim)
    assert not fo_satisfiable(alice_kb, alice_claim, GoalInstance("is_covered", ("ALICE",)))


def test_generator_respects_limits():
    cfg = GeneratorConfig()
    rng = random.Random(3)
    for _ in range(200):
        kb, claim, goal = random_instance(rng, cfg)
        assert len(kb.signature.sorts) <= cfg.max_sorts
        assert len(claim.constants) <= cfg.max_constants
        assert len(kb.signature.predicates) <= cfg.max_predicates
        assert len(kb.theory) <= cfg.max_sentences
        assert all(len(s.antecedent) <= cfg.max_disjuncts for s in kb.theory)
        assert ground_problem(kb, claim, goal).num_atoms <= cfg.max_atoms


def test_manifest_parsing():
    m = parse_manifest("# header\na.ataclaim g(A) covered\nb.ataclaim g(B) maybe\nc.ataclaim\nd.txt g(D) not_covered grp\n")
    assert [e.claim_path for e in m.entries] == ["a.ataclaim", "d.txt"]
    assert m.entries[1].group == "grp"
    assert [line for line, _ in m.errors] == [3, 4]


def test_hand_axiomized_accuracy(travel_kb):
    manifest = load_manifest(TRAVEL / "claims.manifest")
    assert len(manifest.entries) >= 30
    report = run_dataset(travel_kb, manifest)
    assert report.accuracy == 1.0, report.to_text()
    again = run_dataset(travel_kb, manifest, jobs=4)
    assert again.to_json() == report.to_json()
    confusion = report.confusion()
    assert sum(confusion["covered"].values()) == confusion["covered"]["covered"]


def test_entry_errors_are_isolated(travel_kb, tmp_path):
    shutil.copy(TRAVEL / "claims" / "c01.ataclaim", tmp_path / "c01.ataclaim")
    (tmp_path / "m.txt").write_text(
        "c01.ataclaim is_sick(ANNA) covered\nmissing.ataclaim is_covered_medical(ANNA) covered\n"
        "c01.ataclaim is_covered_cancellation(ANNA) covered\nbroken line\n"
    )
    report = run_dataset(travel_kb, load_manifest(tmp_path / "m.txt"))
    assert [r.verdict for r in report.results] == [None, None, "covered"]
    assert "GoalNotDeclared" in report.results[0].error
    assert report.manifest_errors and report.matches == 1
    assert "manifest line 4" in report.to_text()


def test_stability_is_zero_for_rule_extractor(travel_kb, travel_rules_text):
    manifest = load_manifest(TRAVEL / "texts.manifest")
    report = stability_test(travel_kb, manifest, RuleTableExtractor.from_text(travel_rules_text), repetitions=5)
    assert report.intrinsic_stddev == 0.0
    assert report.accuracies == [1.0] * 5
    assert report.extrinsic_stddev == 0.0
    assert report.unstable_groups == [] and report.unstable_claims == []
    assert len(report.variant_accuracies) == 2


def test_defeating_paraphrase_is_flagged(travel_kb, travel_rules_text, tmp_path):
    (tmp_path / "a.txt").write_text("Alice is the policyholder. Alice cancelled the trip. Alice fell ill.\n")
    (tmp_path / "b.txt").write_text("Alice is the policyholder. Alice cancelled the trip. Alice caught the flu.\n")
    (tmp_path / "c.txt").write_text("Alice is the policyholder. Alice cancelled the trip. Alice was abroad.\n")
    (tmp_path / "d.txt").write_text("Alice took out the travel policy. Alice had to cancel. Alice was abroad.\n")
    (tmp_path / "m.txt").write_text(
        "a.txt is_covered_cancellation(ALICE) covered g1\n"
        "b.txt is_covered_cancellation(ALICE) covered g1\n"
        "c.txt is_covered_cancellation(ALICE) not_covered g2\n"
        "d.txt is_covered_cancellation(ALICE) not_covered g2\n"
    )
    report = stability_test(
        travel_kb, load_manifest(tmp_path / "m.txt"), RuleTableExtractor.from_text(travel_rules_text), 2
    )
    assert report.unstable_groups == ["g1"]
    assert report.variant_accuracies == [1.0, 0.5]
    assert report.extrinsic_stddev > 0
    assert report.intrinsic_stddev == 0.0


def test_stability_needs_two_runs(travel_kb):
    with pytest.raises(ValueError):
        stability_test(travel_kb, load_manifest(TRAVEL / "claims.manifest"), repetitions=1)


def test_full_width_generator():
    cfg = GeneratorConfig(full_width=True)
    rng = random.Random(5)
    for _ in range(100):
        kb, _, _ = random_instance(rng, cfg)
        for s in kb.theory:
            assert len(s.antecedent) == cfg.max_disjuncts
            assert all(len(c) == cfg.max_conjuncts for c in s.antecedent)
