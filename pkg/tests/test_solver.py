from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ata import solver
from ata.harness import brute_force_sat, model_satisfies, random_cnf
from ata.solver import CoreNotUnsat, SolverConfig, minimize_core, solve_cnf

BACKENDS = sorted(solver.KERNELS)


def lexmin_model(n, clauses):
    """Smallest satisfying assignment when atom 1 is the most significant bit and False < True."""
    for bits in itertools.product((False, True), repeat=n):
        if model_satisfies(clauses, bits):
            return bits
    return None


def test_cython_kernel_is_built():
    assert "cython" in solver.KERNELS, "compiled kernel missing; run pip install -e . --no-build-isolation"


@pytest.mark.parametrize("backend", BACKENDS)
def test_trivial_cases(backend):
    cfg = SolverConfig(backend=backend)
    assert solve_cnf(0, [], cfg).sat
    assert solve_cnf(0, [], cfg).model == ()
    assert solve_cnf(2, [], cfg).model == (False, False)
    empty = solve_cnf(1, [[1], []], cfg)
    assert not empty.sat and empty.core == (1,)
    assert solve_cnf(1, [[1], [-1]], cfg).core == (0, 1)


def test_bad_literals_rejected():
    with pytest.raises(ValueError):
        solve_cnf(1, [[2]])
    with pytest.raises(ValueError):
        solve_cnf(1, [[0]])
    with pytest.raises(ValueError):
        solve_cnf(1, [[1]], SolverConfig(backend="nope"))


@pytest.mark.parametrize("backend", BACKENDS)
def test_alice_problem(backend):
    result = solve_cnf(2, [[-2, 1], [2], [-1]], SolverConfig(backend=backend))
    assert result.status == "unsat"
    assert result.core == (0, 1, 2)


def test_two_disjoint_triples_keep_the_later_one():
    # clauses 0-2 and 3-5 are independent contradictions; deleting in
    # ascending order removes the first triple, whose removal stays unsat
    clauses = [[1], [-1, 2], [-2], [3], [-3, 4], [-4]]
    for backend in BACKENDS:
        assert minimize_core((4, clauses), range(6), SolverConfig(backend=backend)) == (3, 4, 5)


def test_minimize_rejects_sat_subset():
    with pytest.raises(CoreNotUnsat):
        minimize_core((2, [[1], [2]]), [0, 1])


def _check_unsat_core(n, clauses, core):
    sub = [clauses[i] for i in core]
    assert not brute_force_sat((n, sub))
    for i in range(len(sub)):
        assert brute_force_sat((n, sub[:i] + sub[i + 1 :]))


@settings(max_examples=400, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_matches_truth_table_oracle(seed):
    n, clauses = random_cnf(random.Random(seed), max_atoms=12, max_clauses=30)
    expected = brute_force_sat((n, clauses))
    results = [solve_cnf(n, clauses, SolverConfig(backend=b)) for b in BACKENDS]
    for r in results:
        assert r.sat == expected
        if r.sat:
            assert len(r.model) == n
            assert model_satisfies(clauses, r.model)
            assert r.model == lexmin_model(n, clauses)
        else:
            _check_unsat_core(n, clauses, r.core)
    assert all(r == results[0] for r in results)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_backends_agree_on_raw_cores(seed):
    n, clauses = random_cnf(random.Random(seed), max_atoms=16, max_clauses=60)
    raw = [solve_cnf(n, clauses, SolverConfig(minimize=False, backend=b)) for b in BACKENDS]
    assert all(r == raw[0] for r in raw)
    if not raw[0].sat:
        assert not brute_force_sat((n, [clauses[i] for i in raw[0].core]))


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=2**32), st.lists(st.integers(min_value=-6, max_value=6).filter(bool), max_size=4))
def test_unsat_survives_clause_addition(seed, extra):
    n, clauses = random_cnf(random.Random(seed), max_atoms=6, max_clauses=20)
    if n < 6 or solve_cnf(n, clauses).sat:
        return
    assert not solve_cnf(n, clauses + [extra]).sat


def test_repeated_runs_are_identical():
    rng = random.Random(7)
    for _ in range(50):
        n, clauses = random_cnf(rng)
        assert solve_cnf(n, clauses) == solve_cnf(n, clauses)
