"""Adjudicate one claim: consistency check, validity check, explanation, triggers."""
from __future__ import annotations

import enum
import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ata import __version__
from ata.grounding import (
    FactOrigin,
    GroundProblem,
    GroundingError,
    NegatedGoal,
    SentenceInstance,
    ground_problem,
)
from ata.lang import ClaimDocument, KnowledgeBase, serialize_claim, serialize_kb
from ata.logic import Diagnostic, GoalInstance, error
from ata.solver import SolverConfig, check_validity, solve

COVERED = "covered"
NOT_COVERED = "not_covered"
INCONSISTENT = "inconsistent"
VERDICTS = (COVERED, NOT_COVERED, INCONSISTENT)

DEFAULT_MAX_GOAL_INSTANCES = 256


class TooManyGoalInstances(ValueError):
    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"TooManyGoalInstances: {count} goal instances exceed the cap of {cap}")


class FireOn(str, enum.Enum):
    PROOF_RELEVANT = "proof_relevant"
    PRESENT_IN_FACTS = "present_in_facts"
    TRUE_IN_MODEL = "true_in_model"


@dataclass(frozen=True)
class TriggerRule:
    name: str
    watch: str
    fire_on: FireOn


@dataclass(frozen=True)
class TriggerHit:
    rule: str
    evidence: dict

    def to_json(self) -> dict:
        return {"rule": self.rule, "evidence": self.evidence}


@dataclass(frozen=True)
class CoreEntry:
    kind: str  # rule | fact | negated_goal
    id: str
    clause_index: int
    clause: str
    binding: tuple[tuple[str, str], ...] = ()
    provenance: str = ""
    location: str = ""
    predicates: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "id": self.id,
            "clause_index": self.clause_index,
            "clause": self.clause,
            "binding": dict(self.binding),
            "provenance": self.provenance,
            "location": self.location,
        }


@dataclass(frozen=True)
class Explanation:
    core: tuple[CoreEntry, ...] = ()
    model: tuple[tuple[str, bool], ...] | None = None


@dataclass(frozen=True)
class Decision:
    claim_id: str
    goal: GoalInstance
    verdict: str
    explanation: Explanation
    triggers: tuple[TriggerHit, ...]
    kb_digest: str
    claim_digest: str
    engine_version: str = __version__
    raw_text: str | None = field(default=None, compare=False)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_json(self, include_raw_text: bool = True) -> dict:
        out = {
            "engine_version": self.engine_version,
            "claim_id": self.claim_id,
            "goal": str(self.goal),
            "verdict": self.verdict,
            "core": [e.to_json() for e in self.explanation.core],
            "model": (
                None
                if self.explanation.model is None
                else [{"atom": a, "value": v} for a, v in self.explanation.model]
            ),
            "triggers": [t.to_json() for t in self.triggers],
            "kb_digest": self.kb_digest,
            "claim_digest": self.claim_digest,
        }
        if include_raw_text:
            out["raw_text"] = self.raw_text
        return out


EXIT_CODES = {COVERED: 0, NOT_COVERED: 1, INCONSISTENT: 2}


def canonical_json(obj) -> str:
    """Fixed field order as constructed, two-space indent, UTF-8 preserved."""
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def kb_digest(kb: KnowledgeBase) -> str:
    return digest(serialize_kb(kb))


def claim_digest(claim: ClaimDocument) -> str:
    # raw text is deliberately excluded: decisions depend on facts only
    return digest(serialize_claim(claim, include_text=False))


@dataclass(frozen=True)
class Consistency:
    consistent: bool
    core: tuple[int, ...] = ()
    problem: GroundProblem | None = None


def check_consistency(
    kb: KnowledgeBase, claim: ClaimDocument, cfg: SolverConfig = SolverConfig()
) -> Consistency:
    problem = ground_problem(kb, claim, None)
    result = solve(problem, SolverConfig(minimize=True, backend=cfg.backend))
    if result.sat:
        return Consistency(True, problem=problem)
    return Consistency(False, result.core, problem)


def _core_entries(
    kb: KnowledgeBase, claim: ClaimDocument, problem: GroundProblem, core: Iterable[int]
) -> tuple[CoreEntry, ...]:
    entries = []
    for idx in sorted(core):
        clause = problem.clauses[idx]
        text = " | ".join(problem.table.render_literal(s) for s in clause.literals)
        preds = tuple(sorted({problem.table.atom(abs(s) - 1)[0] for s in clause.literals}))
        origin = clause.provenance
        if isinstance(origin, SentenceInstance):
            s = kb.sentence(origin.sentence_id)
            entries.append(
                CoreEntry("rule", s.id, idx, text, origin.binding, s.provenance.text, s.provenance.location, preds)
            )
        elif isinstance(origin, FactOrigin):
            fact = claim.fact(origin.fact_id)
            entries.append(CoreEntry("fact", fact.id, idx, text, provenance=str(fact.literal), predicates=preds))
        else:
            assert isinstance(origin, NegatedGoal)
            entries.append(
                CoreEntry("negated_goal", str(origin.goal), idx, text, provenance=f"!{origin.goal}", predicates=preds)
            )
    return tuple(entries)


def evaluate_triggers(
    triggers: Sequence[TriggerRule], claim: ClaimDocument, explanation: Explanation
) -> tuple[TriggerHit, ...]:
    hits: list[TriggerHit] = []
    for t in triggers:
        if t.fire_on is FireOn.PROOF_RELEVANT:
            for i, entry in enumerate(explanation.core):
                if t.watch in entry.predicates:
                    hits.append(TriggerHit(t.name, {"core_entry": i, "id": entry.id, "clause": entry.clause}))
        elif t.fire_on is FireOn.PRESENT_IN_FACTS:
            for f in claim.facts:
                if f.literal.predicate == t.watch:
                    hits.append(TriggerHit(t.name, {"fact": f.id, "literal": str(f.literal)}))
        elif explanation.model is not None:
            for atom, value in explanation.model:
                if value and atom.startswith(t.watch + "("):
                    hits.append(TriggerHit(t.name, {"atom": atom}))
    return tuple(hits)


def decide(
    kb: KnowledgeBase,
    claim: ClaimDocument,
    goal: GoalInstance,
    triggers: Sequence[TriggerRule] = (),
    cfg: SolverConfig = SolverConfig(),
) -> Decision:
    problem = ground_problem(kb, claim, goal)
    base = solve(problem.without_goal(), SolverConfig(minimize=True, backend=cfg.backend))
    if not base.sat:
        verdict = INCONSISTENT
        explanation = Explanation(core=_core_entries(kb, claim, problem, base.core))
    else:
        validity = check_validity(problem, cfg)
        verdict = validity.verdict
        if verdict == NOT_COVERED:
            table = problem.table
            model = tuple((table.render(i), v) for i, v in enumerate(validity.model))
            explanation = Explanation(model=model)
        else:
            explanation = Explanation(core=_core_entries(kb, claim, problem, validity.core))
    return Decision(
        claim_id=claim.id,
        goal=goal,
        verdict=verdict,
        explanation=explanation,
        triggers=evaluate_triggers(triggers, claim, explanation),
        kb_digest=kb_digest(kb),
        claim_digest=claim_digest(claim),
        raw_text=claim.raw_text,
    )


def goal_instances(kb: KnowledgeBase, claim: ClaimDocument) -> list[GoalInstance]:
    by_sort: dict[str, list[str]] = {}
    for c in claim.constants:
        by_sort.setdefault(c.sort, []).append(c.name)
    out = []
    for pred in kb.goals:
        pools = [sorted(by_sort.get(s, [])) for s in pred.arity]
        out.extend(GoalInstance(pred.name, args) for args in itertools.product(*pools))
    return out


def decide_all_goals(
    kb: KnowledgeBase,
    claim: ClaimDocument,
    triggers: Sequence[TriggerRule] = (),
    cap: int = DEFAULT_MAX_GOAL_INSTANCES,
    cfg: SolverConfig = SolverConfig(),
) -> list[Decision]:
    instances = goal_instances(kb, claim)
    if len(instances) > cap:
        raise TooManyGoalInstances(len(instances), cap)
    return [decide(kb, claim, g, triggers, cfg) for g in instances]


def parse_triggers(text: str, kb: KnowledgeBase, source: str = "<string>") -> tuple[list[TriggerRule], list[Diagnostic]]:
    """Parse ``trigger <name> <predicate> <proof_relevant|present_in_facts|true_in_model>`` lines."""
    rules: list[TriggerRule] = []
    diags: list[Diagnostic] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].split()
        if not body:
            continue
        where = f"{source}:{lineno}"
        if len(body) != 4 or body[0] != "trigger":
            diags.append(error("SyntaxError", "expected 'trigger <name> <predicate> <fire_on>'", where))
            continue
        _, name, watch, fire_on = body
        try:
            mode = FireOn(fire_on)
        except ValueError:
            diags.append(error("UnknownFireOn", f"unknown fire_on {fire_on!r}", where))
            continue
        if kb.signature.predicate(watch) is None:
            diags.append(error("UnknownPredicate", f"trigger {name} watches undeclared predicate {watch}", where))
            continue
        rules.append(TriggerRule(name, watch, mode))
    return rules, diags


def render_text(decision: Decision) -> str:
    """Human-readable rendering used by ``--format text``."""
    lines = [
        f"claim {decision.claim_id or '<anonymous>'}  goal {decision.goal}  verdict {decision.verdict.upper()}",
    ]
    if decision.explanation.core:
        title = "proof core" if decision.verdict == COVERED else "conflicting core"
        lines.append(f"{title}:")
        for i, e in enumerate(decision.explanation.core):
            binding = ", ".join(f"{k}->{v}" for k, v in e.binding)
            label = f"{e.kind} {e.id}" + (f" [{binding}]" if binding else "")
            lines.append(f"  [{i}] {label}: {e.clause}")
            if e.kind == "rule":
                where = f" ({e.location})" if e.location else ""
                lines.append(f'      "{e.provenance}"{where}')
    if decision.explanation.model is not None:
        true_atoms = [a for a, v in decision.explanation.model if v]
        lines.append("counterexample (true atoms; all others false):")
        lines.extend(f"  {a}" for a in true_atoms or ["(none)"])
    for hit in decision.triggers:
        lines.append(f"review trigger {hit.rule}: {json.dumps(hit.evidence, ensure_ascii=False)}")
    lines.append(f"kb {decision.kb_digest}")
    lines.append(f"claim {decision.claim_digest}")
    return "\n".join(lines) + "\n"


__all__ = [
    "COVERED",
    "NOT_COVERED",
    "INCONSISTENT",
    "Consistency",
    "CoreEntry",
    "Decision",
    "Explanation",
    "FireOn",
    "GroundingError",
    "TooManyGoalInstances",
    "TriggerHit",
    "TriggerRule",
    "canonical_json",
    "check_consistency",
    "decide",
    "decide_all_goals",
    "evaluate_triggers",
    "goal_instances",
    "parse_triggers",
    "render_text",
]
