"""Many-sorted first-order terms, formulas and signatures.

Only the fragment needed for policy rules is modelled: arity-0 constants,
typed predicates split into condition and goal kinds, and universally
quantified implications whose antecedent is in disjunctive normal form.
All values are frozen and safe to share between threads.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
# Constants may carry a sort qualifier when two sorts share a surface name.
CONSTANT_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*(@[A-Za-z][A-Za-z0-9_]*)?")


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"
    LINT = "lint"


@dataclass(frozen=True)
class Span:
    """1-based source position range."""

    line: int
    column: int
    end_line: int
    end_column: int
    file: str = "<string>"

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    where: str = ""
    span: Span | None = None

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def __str__(self) -> str:
        loc = str(self.span) if self.span else (self.where or "<unknown>")
        return f"{loc}: {self.severity.value}: {self.code}: {self.message}"


def error(code: str, message: str, where: str = "", span: Span | None = None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, where, span)


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)


class PredicateKind(str, enum.Enum):
    CONDITION = "cond"
    GOAL = "goal"


@dataclass(frozen=True)
class Sort:
    name: str
    description: str = ""


@dataclass(frozen=True)
class PredicateSymbol:
    name: str
    arity: tuple[str, ...]
    kind: PredicateKind
    definition: str = ""

    @property
    def is_goal(self) -> bool:
        return self.kind is PredicateKind.GOAL


@dataclass(frozen=True)
class Constant:
    name: str
    sort: str

    def __str__(self) -> str:
        return f"{self.name}:{self.sort}"


@dataclass(frozen=True)
class Term:
    """A variable or a constant; which one is carried by ``is_var``."""

    name: str
    is_var: bool

    @classmethod
    def var(cls, name: str) -> Term:
        return cls(name, True)

    @classmethod
    def const(cls, name: str) -> Term:
        return cls(name, False)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def is_ground(self) -> bool:
        return not any(t.is_var for t in self.args)

    def substitute(self, binding: dict[str, str]) -> Atom:
        return Atom(
            self.predicate,
            tuple(Term.const(binding[t.name]) if t.is_var else t for t in self.args),
        )

    def __str__(self) -> str:
        return f"{self.predicate}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Literal:
    atom: Atom
    negated: bool = False

    @property
    def predicate(self) -> str:
        return self.atom.predicate

    def negate(self) -> Literal:
        return Literal(self.atom, not self.negated)

    def substitute(self, binding: dict[str, str]) -> Literal:
        return Literal(self.atom.substitute(binding), self.negated)

    def __str__(self) -> str:
        return ("!" if self.negated else "") + str(self.atom)


@dataclass(frozen=True)
class Provenance:
    text: str = ""
    location: str = ""


@dataclass(frozen=True)
class Sentence:
    """``forall vars. (C1 | ... | Ck) -> goal`` with each Ci a conjunction.

    An empty antecedent asserts the goal literal unconditionally.
    ``structural`` sentences encode properties such as symmetry and may use a
    condition predicate as consequent.
    """

    id: str
    variables: tuple[tuple[str, str], ...]
    antecedent: tuple[tuple[Literal, ...], ...]
    goal: Literal
    provenance: Provenance = field(default_factory=Provenance)
    structural: bool = False

    def literals(self) -> Iterator[tuple[str, Literal]]:
        """Yield ``(path, literal)`` for every literal, paths as used in diagnostics."""
        for i, conj in enumerate(self.antecedent):
            for j, lit in enumerate(conj):
                yield f"{self.id}/antecedent[{i}][{j}]", lit
        yield f"{self.id}/goal", self.goal


@dataclass(frozen=True)
class Signature:
    sorts: tuple[Sort, ...] = ()
    predicates: tuple[PredicateSymbol, ...] = ()
    constants: tuple[Constant, ...] = ()

    @cached_property
    def sort_names(self) -> frozenset[str]:
        return frozenset(s.name for s in self.sorts)

    @cached_property
    def predicate_map(self) -> dict[str, PredicateSymbol]:
        # first declaration wins; duplicates are reported by validate_signature
        out: dict[str, PredicateSymbol] = {}
        for p in self.predicates:
            out.setdefault(p.name, p)
        return out

    @cached_property
    def constant_map(self) -> dict[str, Constant]:
        out: dict[str, Constant] = {}
        for c in self.constants:
            out.setdefault(c.name, c)
        return out

    def predicate(self, name: str) -> PredicateSymbol | None:
        return self.predicate_map.get(name)

    def conditions(self) -> tuple[PredicateSymbol, ...]:
        return tuple(p for p in self.predicates if not p.is_goal)

    def goals(self) -> tuple[PredicateSymbol, ...]:
        return tuple(p for p in self.predicates if p.is_goal)

    def constants_of(self, sort: str) -> tuple[Constant, ...]:
        """Constants of ``sort`` in table order (by name)."""
        return tuple(sorted((c for c in self.constants if c.sort == sort), key=lambda c: c.name))

    def with_constants(self, constants: Iterable[Constant]) -> Signature:
        return Signature(self.sorts, self.predicates, tuple(constants))


@dataclass(frozen=True)
class GoalInstance:
    predicate: str
    args: tuple[str, ...] = ()

    def atom(self) -> Atom:
        return Atom(self.predicate, tuple(Term.const(a) for a in self.args))

    def __str__(self) -> str:
        return str(self.atom())


_GOAL_SPEC = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$")


def parse_goal_spec(text: str) -> GoalInstance:
    """Parse ``is_covered(ALICE)`` into a :class:`GoalInstance`."""
    m = _GOAL_SPEC.match(text)
    if not m:
        raise ValueError(f"malformed goal {text!r}")
    inner = (m.group(2) or "").strip()
    args = tuple(a.strip() for a in inner.split(",")) if inner else ()
    for a in args:
        if not CONSTANT_NAME.fullmatch(a):
            raise ValueError(f"malformed goal argument {a!r} in {text!r}")
    return GoalInstance(m.group(1), args)


def validate_signature(sig: Signature) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    seen_sorts: set[str] = set()
    for s in sig.sorts:
        if not IDENTIFIER.fullmatch(s.name):
            diags.append(error("InvalidIdentifier", f"bad sort name {s.name!r}", f"sort {s.name}"))
        if s.name in seen_sorts:
            diags.append(error("DuplicateSort", f"sort {s.name} declared twice", f"sort {s.name}"))
        seen_sorts.add(s.name)

    seen_preds: set[str] = set()
    for p in sig.predicates:
        if not IDENTIFIER.fullmatch(p.name):
            diags.append(error("InvalidIdentifier", f"bad predicate name {p.name!r}", p.name))
        if p.name in seen_preds:
            diags.append(error("DuplicatePredicate", f"predicate {p.name} declared twice", p.name))
        seen_preds.add(p.name)
        for i, s in enumerate(p.arity):
            if s not in seen_sorts and s not in sig.sort_names:
                diags.append(
                    error("UnknownSort", f"predicate {p.name} uses undeclared sort {s}", f"{p.name}/arg{i}")
                )

    seen_consts: set[str] = set()
    for c in sig.constants:
        if not CONSTANT_NAME.fullmatch(c.name):
            diags.append(error("InvalidIdentifier", f"bad constant name {c.name!r}", c.name))
        if c.name in seen_consts:
            diags.append(error("DuplicateConstant", f"constant {c.name} declared twice", c.name))
        seen_consts.add(c.name)
        if c.sort not in sig.sort_names:
            diags.append(error("UnknownSort", f"constant {c.name} has undeclared sort {c.sort}", c.name))
        elif c.name.split("@")[0] != c.name.split("@")[0].upper():
            diags.append(
                Diagnostic(Severity.LINT, "ConstantCase", f"constant {c.name} is not uppercase", c.name)
            )
    return diags


def _check_atom(
    sig: Signature,
    atom: Atom,
    where: str,
    var_sorts: dict[str, str] | None,
) -> list[Diagnostic]:
    """Arity and sort agreement for one atom.

    With ``var_sorts`` given, variables are resolved against it and constants
    are rejected (rule bodies are constant-free); with ``None`` the atom must
    be ground over ``sig.constants``.
    """
    pred = sig.predicate(atom.predicate)
    if pred is None:
        return [error("UnknownPredicate", f"undeclared predicate {atom.predicate}", where)]
    if len(atom.args) != len(pred.arity):
        return [
            error(
                "ArityMismatch",
                f"{atom.predicate} expects {len(pred.arity)} argument(s), got {len(atom.args)}",
                where,
            )
        ]
    diags: list[Diagnostic] = []
    for i, (term, expected) in enumerate(zip(atom.args, pred.arity)):
        at = f"{where}/arg{i}"
        if term.is_var:
            if var_sorts is None:
                diags.append(error("UnexpectedVariable", f"variable {term.name} in ground atom", at))
                continue
            actual = var_sorts.get(term.name)
            if actual is None:
                diags.append(error("UnboundVariable", f"variable {term.name} is not quantified", at))
                continue
        else:
            if var_sorts is not None:
                diags.append(error("ConstantInRule", f"constant {term.name} inside a rule", at))
                continue
            const = sig.constant_map.get(term.name)
            if const is None:
                diags.append(error("UnknownConstant", f"undeclared constant {term.name}", at))
                continue
            actual = const.sort
        if actual != expected:
            diags.append(
                error(
                    "SortMismatch",
                    f"{atom.predicate} argument {i} expects {expected}, got {term.name}:{actual}",
                    at,
                )
            )
    return diags


def sort_check(sig: Signature, s: Sentence) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    var_sorts: dict[str, str] = {}
    for name, sort in s.variables:
        if name in var_sorts:
            diags.append(error("DuplicateVariable", f"variable {name} quantified twice", f"{s.id}/vars/{name}"))
        if sort not in sig.sort_names:
            diags.append(error("UnknownSort", f"variable {name} has undeclared sort {sort}", f"{s.id}/vars/{name}"))
        var_sorts[name] = sort

    for path, lit in s.literals():
        diags.extend(_check_atom(sig, lit.atom, path, var_sorts))
        pred = sig.predicate(lit.predicate)
        if pred is None:
            continue
        is_goal_slot = path.endswith("/goal")
        if not is_goal_slot and pred.is_goal:
            diags.append(
                error("GoalPredicateInAntecedent", f"goal predicate {pred.name} used as a condition", path)
            )
        if is_goal_slot and not pred.is_goal and not s.structural:
            diags.append(
                error(
                    "ConditionPredicateAsGoal",
                    f"condition predicate {pred.name} used as consequent of a non-structural rule",
                    path,
                )
            )
    return diags


def check_ground_literal(sig: Signature, lit: Literal, where: str) -> list[Diagnostic]:
    return _check_atom(sig, lit.atom, where, None)


def check_goal_instance(sig: Signature, goal: GoalInstance) -> list[Diagnostic]:
    pred = sig.predicate(goal.predicate)
    if pred is None or not pred.is_goal:
        return [error("GoalNotDeclared", f"{goal.predicate} is not a declared goal predicate", str(goal))]
    return _check_atom(sig, goal.atom(), str(goal), None)
