"""Compile a quantified theory plus claim facts into propositional clauses.

Atoms get dense ids in lexicographic (predicate, constant names) order.
Clause literals use DIMACS-style signs: atom ``i`` is ``i + 1`` and its
negation ``-(i + 1)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from ata.lang import ClaimDocument, KnowledgeBase, check_goal
from ata.logic import Atom, Constant, GoalInstance, Literal, Sentence, Signature

# Projected clause count above which callers should warn; see projected_clause_count.
CLAUSE_WARNING_THRESHOLD = 10**6


class GroundingError(ValueError):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


class GroundAtomTable:
    """Bijection between ground atoms and ids ``0 .. len-1``."""

    def __init__(self, atoms: Iterable[tuple[str, tuple[str, ...]]]):
        self._atoms: tuple[tuple[str, tuple[str, ...]], ...] = tuple(atoms)
        self._ids = {a: i for i, a in enumerate(self._atoms)}
        if len(self._ids) != len(self._atoms):
            raise ValueError("duplicate ground atom")

    def __len__(self) -> int:
        return len(self._atoms)

    def __iter__(self):
        return iter(self._atoms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundAtomTable) and self._atoms == other._atoms

    def __hash__(self) -> int:
        return hash(self._atoms)

    def id_of(self, predicate: str, args: Sequence[str]) -> int:
        return self._ids[(predicate, tuple(args))]

    def atom(self, atom_id: int) -> tuple[str, tuple[str, ...]]:
        return self._atoms[atom_id]

    def render(self, atom_id: int) -> str:
        pred, args = self._atoms[atom_id]
        return f"{pred}({', '.join(args)})"

    def literal(self, lit: Literal) -> int:
        """Signed id of a ground literal."""
        i = self.id_of(lit.predicate, [t.name for t in lit.atom.args]) + 1
        return -i if lit.negated else i

    def render_literal(self, signed: int) -> str:
        return ("!" if signed < 0 else "") + self.render(abs(signed) - 1)


@dataclass(frozen=True)
class SentenceInstance:
    sentence_id: str
    binding: tuple[tuple[str, str], ...]
    disjunct: int


@dataclass(frozen=True)
class FactOrigin:
    fact_id: str


@dataclass(frozen=True)
class NegatedGoal:
    goal: GoalInstance


Origin = Union[SentenceInstance, FactOrigin, NegatedGoal]


@dataclass(frozen=True)
class GroundClause:
    literals: tuple[int, ...]
    provenance: Origin


@dataclass(frozen=True)
class GroundProblem:
    table: GroundAtomTable
    clauses: tuple[GroundClause, ...]
    theory_count: int
    fact_count: int

    @property
    def num_atoms(self) -> int:
        return len(self.table)

    @property
    def goal_indices(self) -> tuple[int, ...]:
        return tuple(range(self.theory_count + self.fact_count, len(self.clauses)))

    def literal_lists(self, indices: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        if indices is None:
            return [c.literals for c in self.clauses]
        return [self.clauses[i].literals for i in indices]

    def without_goal(self) -> GroundProblem:
        keep = self.theory_count + self.fact_count
        return GroundProblem(self.table, self.clauses[:keep], self.theory_count, self.fact_count)


def _constants_by_sort(constants: Iterable[Constant]) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for c in constants:
        out.setdefault(c.sort, []).append(c.name)
    for names in out.values():
        names.sort()
    return out


def build_atom_table(sig: Signature, constants: Iterable[Constant]) -> GroundAtomTable:
    by_sort = _constants_by_sort(constants)
    atoms = []
    for pred in sorted(sig.predicates, key=lambda p: p.name):
        pools = [by_sort.get(s, []) for s in pred.arity]
        atoms.extend((pred.name, args) for args in itertools.product(*pools))
    return GroundAtomTable(atoms)


def _bindings(variables: Sequence[tuple[str, str]], by_sort: dict[str, list[str]]):
    names = [v for v, _ in variables]
    pools = [by_sort.get(sort, []) for _, sort in variables]
    for combo in itertools.product(*pools):
        yield dict(zip(names, combo))


def _clause(literals: Iterable[int]) -> tuple[int, ...] | None:
    """Deduplicate in first-occurrence order; ``None`` for a tautology."""
    seen: dict[int, None] = {}
    for lit in literals:
        if -lit in seen:
            return None
        seen.setdefault(lit, None)
    return tuple(seen)


def ground_sentence(
    s: Sentence, table: GroundAtomTable, constants: Iterable[Constant]
) -> list[GroundClause]:
    """One clause ``!C_j | G`` per binding and antecedent disjunct ``C_j``."""
    by_sort = _constants_by_sort(constants)
    out: list[GroundClause] = []
    seen: set[tuple[int, ...]] = set()
    for binding in _bindings(s.variables, by_sort):
        head = table.literal(s.goal.substitute(binding))
        bound = tuple(binding.items())
        disjuncts = s.antecedent if s.antecedent else ((),)
        for j, conj in enumerate(disjuncts):
            lits = [-table.literal(l.substitute(binding)) for l in conj]
            clause = _clause(lits + [head])
            if clause is None or clause in seen:
                continue
            seen.add(clause)
            out.append(GroundClause(clause, SentenceInstance(s.id, bound, j)))
    return out


def projected_clause_count(kb: KnowledgeBase, constants: Iterable[Constant]) -> int:
    """Upper bound on theory clauses before tautology/duplicate removal."""
    by_sort = _constants_by_sort(constants)
    total = 0
    for s in kb.theory:
        k = max(len(s.antecedent), 1)
        total += k * math.prod(len(by_sort.get(sort, [])) for _, sort in s.variables)
    return total


def ground_problem(
    kb: KnowledgeBase, claim: ClaimDocument, goal: GoalInstance | None
) -> GroundProblem:
    """Clauses for ``T & facts & !goal``; with ``goal=None`` only ``T & facts``."""
    if goal is not None:
        diags = check_goal(kb, claim, goal)
        if diags:
            raise GroundingError(diags[0].code, diags[0].message)
    table = build_atom_table(kb.signature, claim.constants)
    clauses: list[GroundClause] = []
    for s in kb.theory:
        clauses.extend(ground_sentence(s, table, claim.constants))
    theory_count = len(clauses)
    for f in claim.facts:
        clauses.append(GroundClause((table.literal(f.literal),), FactOrigin(f.id)))
    if goal is not None:
        atom = Literal(goal.atom())
        clauses.append(GroundClause((-table.literal(atom),), NegatedGoal(goal)))
    return GroundProblem(table, tuple(clauses), theory_count, len(claim.facts))


def atom_of(table: GroundAtomTable, atom: Atom) -> int:
    return table.id_of(atom.predicate, [t.name for t in atom.args])
