"""Verification and evaluation harness.

Holds the independent oracles used by the test-suite (truth-table enumeration
over ground clauses and direct first-order model enumeration), random
instance generators, and the dataset/stability runners behind ``ata bench``
and ``ata stability``.
"""
from __future__ import annotations

import itertools
import random
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from ata.engine import COVERED, INCONSISTENT, NOT_COVERED, VERDICTS, canonical_json, decide
from ata.grounding import GroundProblem
from ata.ingest import Extractor, axiomize
from ata.lang import ClaimDocument, Fact, KnowledgeBase, parse_claim
from ata.logic import (
    Atom,
    Constant,
    GoalInstance,
    Literal,
    PredicateKind,
    PredicateSymbol,
    Provenance,
    Sentence,
    Signature,
    Sort,
    Term,
    parse_goal_spec,
)

ORACLE_MAX_ATOMS = 24


# --- oracles ------------------------------------------------------------------------


def brute_force_sat(problem: GroundProblem | tuple[int, Sequence[Sequence[int]]]) -> bool:
    """Exhaustive truth-table check; ``True`` iff some assignment satisfies every clause."""
    if isinstance(problem, GroundProblem):
        n, clauses = problem.num_atoms, problem.literal_lists()
    else:
        n, clauses = problem
    if n > ORACLE_MAX_ATOMS:
        raise ValueError(f"{n} atoms exceed the oracle limit of {ORACLE_MAX_ATOMS}")
    assignments = np.arange(1 << n, dtype=np.uint32)
    alive = np.ones(1 << n, dtype=bool)
    for clause in clauses:
        sat = np.zeros(1 << n, dtype=bool)
        for lit in clause:
            bit = (assignments >> np.uint32(abs(lit) - 1)) & np.uint32(1)
            sat |= bit.astype(bool) if lit > 0 else ~bit.astype(bool)
        alive &= sat
        if not alive.any():
            return False
    return bool(alive.any())


def model_satisfies(clauses: Sequence[Sequence[int]], model: Sequence[bool]) -> bool:
    return all(any(model[abs(l) - 1] == (l > 0) for l in c) for c in clauses)


def fo_satisfiable(kb: KnowledgeBase, claim: ClaimDocument, goal: GoalInstance | None = None) -> bool:
    """Enumerate interpretations over the claim's constants and evaluate sentences directly.

    Independent of the grounder: it quantifies by looping over domain elements
    and never builds clauses.
    """
    domains: dict[str, list[str]] = {}
    for c in claim.constants:
        domains.setdefault(c.sort, []).append(c.name)
    tuples = []
    for p in kb.signature.predicates:
        for args in itertools.product(*[domains.get(s, []) for s in p.arity]):
            tuples.append((p.name, args))
    if len(tuples) > ORACLE_MAX_ATOMS:
        raise ValueError(f"{len(tuples)} atoms exceed the oracle limit")

    def holds(lit: Literal, env: dict[str, str], true_set: frozenset) -> bool:
        args = tuple(env[t.name] if t.is_var else t.name for t in lit.atom.args)
        return ((lit.predicate, args) in true_set) != lit.negated

    def sentence_true(s: Sentence, true_set: frozenset) -> bool:
        names = [v for v, _ in s.variables]
        for combo in itertools.product(*[domains.get(sort, []) for _, sort in s.variables]):
            env = dict(zip(names, combo))
            fires = not s.antecedent or any(all(holds(l, env, true_set) for l in conj) for conj in s.antecedent)
            if fires and not holds(s.goal, env, true_set):
                return False
        return True

    for bits in itertools.product((False, True), repeat=len(tuples)):
        true_set = frozenset(t for t, b in zip(tuples, bits) if b)
        if not all(holds(f.literal, {}, true_set) for f in claim.facts):
            continue
        if goal is not None and (goal.predicate, goal.args) in true_set:
            continue
        if all(sentence_true(s, true_set) for s in kb.theory):
            return True
    return False


# --- random instances ----------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    max_sorts: int = 2
    max_constants: int = 3
    max_predicates: int = 4
    max_sentences: int = 6
    max_disjuncts: int = 2
    max_conjuncts: int = 3
    max_arity: int = 2
    max_facts: int = 5
    max_atoms: int = 24
    structural_rate: float = 0.2
    full_width: bool = False  # every antecedent at max_disjuncts x max_conjuncts


def random_cnf(rng: random.Random, max_atoms: int = 16, max_clauses: int = 40, max_width: int = 4):
    n = rng.randint(0, max_atoms)
    clauses = []
    if n == 0:
        return 0, [[]] * rng.randint(0, 1)
    for _ in range(rng.randint(0, max_clauses)):
        width = rng.randint(1, max_width)
        clauses.append([rng.randint(1, n) * rng.choice((1, -1)) for _ in range(width)])
    return n, clauses


def random_instance(rng: random.Random, cfg: GeneratorConfig = GeneratorConfig()):
    """Random (kb, claim, goal) with at most ``cfg.max_atoms`` ground atoms."""
    while True:
        inst = _try_instance(rng, cfg)
        if inst is not None:
            return inst


def _try_instance(rng: random.Random, cfg: GeneratorConfig):
    sorts = [Sort(f"S{i}") for i in range(rng.randint(1, cfg.max_sorts))]
    total = rng.randint(len(sorts), max(cfg.max_constants, len(sorts)))
    constants = [Constant(f"C{i}", sorts[i % len(sorts)].name if i < len(sorts) else rng.choice(sorts).name) for i in range(total)]
    n_preds = rng.randint(2, cfg.max_predicates)
    preds = []
    for i in range(n_preds):
        kind = PredicateKind.GOAL if i == 0 or (i == n_preds - 1 and rng.random() < 0.3) else PredicateKind.CONDITION
        arity = tuple(rng.choice(sorts).name for _ in range(rng.randint(0, cfg.max_arity)))
        preds.append(PredicateSymbol(f"p{i}" if kind is PredicateKind.CONDITION else f"g{i}", arity, kind))
    if not any(not p.is_goal for p in preds):
        return None
    sig = Signature(tuple(sorts), tuple(preds))
    counts = {s.name: sum(c.sort == s.name for c in constants) for s in sorts}
    atoms = sum(np.prod([counts[s] for s in p.arity], dtype=int) for p in preds)
    if atoms > cfg.max_atoms:
        return None

    conds = [p for p in preds if not p.is_goal]
    goals = [p for p in preds if p.is_goal]
    theory = []
    for k in range(rng.randint(0, cfg.max_sentences)):
        structural = rng.random() < cfg.structural_rate
        head_pred = rng.choice(conds if structural else goals)
        variables: list[tuple[str, str]] = []

        def term_for(sort: str) -> Term:
            existing = [v for v, s in variables if s == sort]
            if existing and rng.random() < 0.6:
                return Term.var(rng.choice(existing))
            name = f"x{len(variables)}"
            variables.append((name, sort))
            return Term.var(name)

        def lit_for(p: PredicateSymbol) -> Literal:
            return Literal(Atom(p.name, tuple(term_for(s) for s in p.arity)), rng.random() < 0.25)

        goal_lit = lit_for(head_pred)
        n_disj = cfg.max_disjuncts if cfg.full_width else rng.randint(0, cfg.max_disjuncts)
        antecedent = tuple(
            tuple(
                lit_for(rng.choice(conds))
                for _ in range(cfg.max_conjuncts if cfg.full_width else rng.randint(1, cfg.max_conjuncts))
            )
            for _ in range(n_disj)
        )
        theory.append(Sentence(f"s{k}", tuple(variables), antecedent, goal_lit, Provenance(f"sentence {k}"), structural))
    kb = KnowledgeBase(sig, tuple(theory), name="random")

    facts = []
    for j in range(rng.randint(0, cfg.max_facts)):
        lit = _random_ground_literal(rng, conds, constants)
        if lit is not None:
            facts.append(Fact(f"f{j + 1}", lit))
    claim = ClaimDocument("rnd", tuple(constants), tuple(facts))
    goal_choices = [
        GoalInstance(p.name, args)
        for p in goals
        for args in itertools.product(*[[c.name for c in constants if c.sort == s] for s in p.arity])
    ]
    if not goal_choices:
        return None
    return kb, claim, rng.choice(goal_choices)


def _random_ground_literal(rng: random.Random, preds: Sequence[PredicateSymbol], constants: Sequence[Constant]):
    p = rng.choice(preds)
    args = []
    for s in p.arity:
        pool = [c.name for c in constants if c.sort == s]
        if not pool:
            return None
        args.append(Term.const(rng.choice(pool)))
    return Literal(Atom(p.name, tuple(args)), rng.random() < 0.2)


def random_fact(rng: random.Random, kb: KnowledgeBase, claim: ClaimDocument, fid: str) -> Fact | None:
    lit = _random_ground_literal(rng, kb.signature.conditions(), claim.constants)
    return None if lit is None else Fact(fid, lit)


# --- datasets ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LabeledClaim:
    claim_path: str
    goal: str
    expected: str
    group: str | None = None
    line: int = 0


@dataclass
class Manifest:
    root: Path
    entries: list[LabeledClaim]
    errors: list[tuple[int, str]] = field(default_factory=list)


def parse_manifest(text: str, root: Path | str = ".") -> Manifest:
    """``<claim-file> <goal> <expected> [paraphrase-group]`` per line; ``#`` comments."""
    entries: list[LabeledClaim] = []
    errors: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields_ = raw.split("#", 1)[0].split()
        if not fields_:
            continue
        if len(fields_) not in (3, 4):
            errors.append((lineno, f"expected 3 or 4 fields, got {len(fields_)}"))
            continue
        if fields_[2] not in VERDICTS:
            errors.append((lineno, f"unknown expected verdict {fields_[2]!r}"))
            continue
        group = fields_[3] if len(fields_) == 4 else None
        entries.append(LabeledClaim(fields_[0], fields_[1], fields_[2], group, lineno))
    return Manifest(Path(root), entries, errors)


def load_manifest(path: Path | str) -> Manifest:
    path = Path(path)
    return parse_manifest(path.read_text(encoding="utf-8"), path.parent)


def load_claim_entry(kb: KnowledgeBase, path: Path, extractor: Extractor | None) -> ClaimDocument:
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".ataclaim":
        return parse_claim(text, kb, str(path), default_id=path.stem)
    if extractor is None:
        raise ValueError(f"{path}: raw text claims need an extractor")
    return axiomize(text, kb, extractor, claim_id=path.stem)


@dataclass(frozen=True)
class EntryResult:
    claim: str
    goal: str
    expected: str
    verdict: str | None
    error: str | None = None
    group: str | None = None

    @property
    def correct(self) -> bool:
        return self.verdict == self.expected


def evaluate_entry(kb: KnowledgeBase, root: Path, entry: LabeledClaim, extractor: Extractor | None) -> EntryResult:
    try:
        claim = load_claim_entry(kb, root / entry.claim_path, extractor)
        goal = parse_goal_spec(entry.goal)
        verdict = decide(kb, claim, goal).verdict
        return EntryResult(entry.claim_path, entry.goal, entry.expected, verdict, group=entry.group)
    except Exception as exc:  # noqa: BLE001 - per-entry isolation, the run continues
        return EntryResult(entry.claim_path, entry.goal, entry.expected, None, f"{type(exc).__name__}: {exc}", entry.group)


@dataclass
class AccuracyReport:
    results: list[EntryResult]
    manifest_errors: list[tuple[int, str]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def matches(self) -> int:
        return sum(r.correct for r in self.results)

    @property
    def accuracy(self) -> float:
        return self.matches / self.total if self.total else 0.0

    def confusion(self) -> dict[str, dict[str, int]]:
        cols = list(VERDICTS) + ["error"]
        table = {e: {c: 0 for c in cols} for e in VERDICTS}
        for r in self.results:
            table[r.expected][r.verdict or "error"] += 1
        return table

    def to_json(self) -> str:
        return canonical_json(
            {
                "total": self.total,
                "matches": self.matches,
                "accuracy": self.accuracy,
                "confusion": self.confusion(),
                "manifest_errors": [{"line": l, "error": e} for l, e in self.manifest_errors],
                "entries": [
                    {
                        "claim": r.claim,
                        "goal": r.goal,
                        "expected": r.expected,
                        "verdict": r.verdict,
                        "correct": r.correct,
                        "error": r.error,
                    }
                    for r in self.results
                ],
            }
        )

    def to_text(self) -> str:
        width = max([len(r.claim) for r in self.results] + [5])
        lines = [f"{'claim':<{width}}  {'goal':<32}  {'expected':<12}  {'verdict':<12}  ok"]
        for r in self.results:
            got = r.verdict or "ERROR"
            lines.append(f"{r.claim:<{width}}  {r.goal:<32}  {r.expected:<12}  {got:<12}  {'y' if r.correct else 'n'}")
            if r.error:
                lines.append(f"    {r.error}")
        for lineno, err in self.manifest_errors:
            lines.append(f"manifest line {lineno}: {err}")
        lines.append(f"accuracy {self.matches}/{self.total} = {self.accuracy:.4f}")
        return "\n".join(lines) + "\n"


def run_dataset(
    kb: KnowledgeBase, manifest: Manifest, extractor: Extractor | None = None, jobs: int = 1
) -> AccuracyReport:
    def one(entry: LabeledClaim) -> EntryResult:
        return evaluate_entry(kb, manifest.root, entry, extractor)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, manifest.entries))
    else:
        results = [one(e) for e in manifest.entries]
    return AccuracyReport(results, list(manifest.errors))


@dataclass
class StabilityReport:
    repetitions: int
    verdicts: list[tuple[str, str, list[str | None]]]  # (claim, goal, verdict per repetition)
    accuracies: list[float]
    variant_accuracies: list[float]
    unstable_groups: list[str]

    @property
    def intrinsic_mean(self) -> float:
        return statistics.fmean(self.accuracies)

    @property
    def intrinsic_stddev(self) -> float:
        return statistics.pstdev(self.accuracies)

    @property
    def unstable_claims(self) -> list[str]:
        return [c for c, _, vs in self.verdicts if len(set(vs)) > 1]

    @property
    def extrinsic_stddev(self) -> float:
        if len(self.variant_accuracies) < 2:
            return 0.0
        return statistics.pstdev(self.variant_accuracies)

    def to_json(self) -> str:
        return canonical_json(
            {
                "repetitions": self.repetitions,
                "accuracy_mean": self.intrinsic_mean,
                "intrinsic_stddev": self.intrinsic_stddev,
                "accuracies": self.accuracies,
                "unstable_claims": self.unstable_claims,
                "extrinsic": {
                    "variant_accuracies": self.variant_accuracies,
                    "stddev": self.extrinsic_stddev,
                    "unstable_groups": self.unstable_groups,
                },
                "verdicts": [{"claim": c, "goal": g, "verdicts": vs} for c, g, vs in self.verdicts],
            }
        )

    def to_text(self) -> str:
        lines = [
            f"repetitions       {self.repetitions}",
            f"accuracy          {self.intrinsic_mean:.4f} +- {self.intrinsic_stddev:.4f}",
            f"unstable claims   {len(self.unstable_claims)}",
            f"extrinsic stddev  {self.extrinsic_stddev:.4f}",
        ]
        lines.extend(f"unstable paraphrase group {g}" for g in self.unstable_groups)
        return "\n".join(lines) + "\n"


def stability_test(
    kb: KnowledgeBase,
    manifest: Manifest,
    extractor: Extractor | None = None,
    repetitions: int = 5,
    jobs: int = 1,
) -> StabilityReport:
    """Intrinsic stability over repeated runs; extrinsic stability over paraphrase groups.

    Extrinsic: the i-th member of every paraphrase group forms variant i; the
    spread of per-variant accuracy is reported, and any group whose members
    disagree is flagged.
    """
    if repetitions < 2:
        raise ValueError("stability needs at least 2 repetitions")
    runs = [run_dataset(kb, manifest, extractor, jobs) for _ in range(repetitions)]
    verdicts = [
        (r.claim, r.goal, [run.results[i].verdict for run in runs]) for i, r in enumerate(runs[0].results)
    ]
    first = runs[0].results
    groups: dict[str, list[EntryResult]] = {}
    for r in first:
        if r.group is not None:
            groups.setdefault(r.group, []).append(r)
    unstable = [g for g, members in groups.items() if len({m.verdict for m in members}) > 1]
    variants: dict[int, list[bool]] = {}
    for members in groups.values():
        for i, m in enumerate(members):
            variants.setdefault(i, []).append(m.correct)
    variant_acc = [sum(v) / len(v) for _, v in sorted(variants.items())]
    return StabilityReport(repetitions, verdicts, [run.accuracy for run in runs], variant_acc, unstable)


__all__ = [
    "COVERED",
    "INCONSISTENT",
    "NOT_COVERED",
    "AccuracyReport",
    "GeneratorConfig",
    "LabeledClaim",
    "Manifest",
    "StabilityReport",
    "brute_force_sat",
    "fo_satisfiable",
    "load_manifest",
    "model_satisfies",
    "parse_manifest",
    "random_cnf",
    "random_fact",
    "random_instance",
    "run_dataset",
    "stability_test",
]
