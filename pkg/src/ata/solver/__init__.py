"""Deterministic propositional solving with unsat cores and total models.

The DPLL kernel is compiled (``_dpll_ext``) when available and falls back to
``_dpll_py`` otherwise. Set ``ATA_PURE_PYTHON=1`` to force the fallback.
Both kernels decide atoms in ascending id order, false branch first, so a
satisfiable problem always yields its lexicographically smallest model.
"""
from __future__ import annotations

import os
from array import array
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from ata.grounding import GroundProblem, NegatedGoal
from ata.solver import _dpll_py

KernelFn = Callable[[int, array, array], tuple]

KERNELS: dict[str, KernelFn] = {"python": _dpll_py.solve_flat}
try:
    from ata.solver import _dpll_ext
except ImportError:  # extension not built
    _dpll_ext = None
else:
    KERNELS["cython"] = _dpll_ext.solve_flat

if os.environ.get("ATA_PURE_PYTHON") or "cython" not in KERNELS:
    BACKEND = "python"
else:
    BACKEND = "cython"


class CoreNotUnsat(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    """Solver options. The engine is seedless; nothing here adds nondeterminism."""

    minimize: bool = True
    backend: str | None = None  # None means the module default


@dataclass(frozen=True)
class SolveResult:
    sat: bool
    model: tuple[bool, ...] | None = None
    core: tuple[int, ...] | None = None

    @property
    def status(self) -> str:
        return "sat" if self.sat else "unsat"


def _encode(clauses: Sequence[Sequence[int]]) -> tuple[array, array]:
    lits = array("i")
    offsets = array("i", [0])
    for clause in clauses:
        seen = set()
        for s in clause:
            if s == 0:
                raise ValueError("literal 0 is not allowed")
            if s in seen:
                continue
            seen.add(s)
            lits.append(2 * (abs(s) - 1) + (s < 0))
        offsets.append(len(lits))
    return lits, offsets


def _kernel(backend: str | None) -> KernelFn:
    name = backend or BACKEND
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"solver backend {name!r} unavailable; have {sorted(KERNELS)}") from None


def _check_range(num_atoms: int, clauses: Sequence[Sequence[int]]) -> None:
    for clause in clauses:
        for s in clause:
            if not 0 < abs(s) <= num_atoms:
                raise ValueError(f"literal {s} outside atom range 1..{num_atoms}")


def solve_cnf(
    num_atoms: int,
    clauses: Sequence[Sequence[int]],
    cfg: SolverConfig = SolverConfig(),
) -> SolveResult:
    """Solve a CNF over atoms ``1..num_atoms`` (signed literals)."""
    _check_range(num_atoms, clauses)
    lits, offsets = _encode(clauses)
    sat, values, used = _kernel(cfg.backend)(num_atoms, lits, offsets)
    if sat:
        return SolveResult(True, model=tuple(bool(v) for v in values))
    core = tuple(i for i, u in enumerate(used) if u)
    if cfg.minimize:
        core = _minimize(num_atoms, clauses, core, cfg.backend)
    return SolveResult(False, core=core)


def _is_sat(num_atoms: int, clauses: Sequence[Sequence[int]], idx: Iterable[int], backend: str | None) -> bool:
    lits, offsets = _encode([clauses[i] for i in idx])
    return _kernel(backend)(num_atoms, lits, offsets)[0]


def _minimize(
    num_atoms: int, clauses: Sequence[Sequence[int]], core: Sequence[int], backend: str | None
) -> tuple[int, ...]:
    kept = sorted(core)
    i = 0
    while i < len(kept):
        trial = kept[:i] + kept[i + 1 :]
        if _is_sat(num_atoms, clauses, trial, backend):
            i += 1
        else:
            kept = trial
    return tuple(kept)


def solve(problem: GroundProblem, cfg: SolverConfig = SolverConfig()) -> SolveResult:
    return solve_cnf(problem.num_atoms, problem.literal_lists(), cfg)


def minimize_core(
    problem: GroundProblem | tuple[int, Sequence[Sequence[int]]],
    core: Iterable[int],
    cfg: SolverConfig = SolverConfig(),
) -> tuple[int, ...]:
    """Deletion-based subset-minimal core, trying removals by ascending clause index.

    ``problem`` is a :class:`GroundProblem` or a ``(num_atoms, clauses)`` pair.
    """
    if isinstance(problem, GroundProblem):
        num_atoms, clauses = problem.num_atoms, problem.literal_lists()
    else:
        num_atoms, clauses = problem
    core = sorted(set(core))
    if _is_sat(num_atoms, clauses, core, cfg.backend):
        raise CoreNotUnsat(f"clauses {core} are satisfiable")
    return _minimize(num_atoms, clauses, core, cfg.backend)


@dataclass(frozen=True)
class Validity:
    """Outcome of a validity check: ``covered``, ``not_covered`` or ``inconsistent``."""

    verdict: str
    core: tuple[int, ...] | None = None
    model: tuple[bool, ...] | None = None


def check_validity(problem: GroundProblem, cfg: SolverConfig = SolverConfig()) -> Validity:
    goals = [i for i, c in enumerate(problem.clauses) if isinstance(c.provenance, NegatedGoal)]
    if len(goals) != 1:
        raise ValueError(f"expected exactly one negated-goal clause, found {len(goals)}")
    minimizing = SolverConfig(minimize=True, backend=cfg.backend)
    result = solve(problem, SolverConfig(minimize=False, backend=cfg.backend))
    if result.sat:
        return Validity("not_covered", model=result.model)
    if goals[0] in result.core:
        base = solve(problem.without_goal(), minimizing)
        if not base.sat:
            return Validity("inconsistent", core=base.core)
    else:
        # the tracked refutation never touched the goal: theory and facts clash
        return Validity("inconsistent", core=minimize_core(problem, result.core, minimizing))
    return Validity("covered", core=minimize_core(problem, result.core, minimizing))
