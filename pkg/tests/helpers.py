"""Shared test utilities: external SMT checks and small builders."""
from __future__ import annotations

import shutil
import subprocess


def smt_available() -> bool:
    if shutil.which("z3"):
        return True
    try:
        import z3  # noqa: F401
    except ImportError:
        return False
    return True


def smt_check(text: str) -> str:
    """Return ``sat`` or ``unsat`` from an external SMT-LIB solver."""
    exe = shutil.which("z3")
    if exe:
        out = subprocess.run([exe, "-in", "-smt2"], input=text, capture_output=True, text=True, timeout=60)
        lines = [l.strip() for l in out.stdout.splitlines() if l.strip()]
        if not lines or lines[-1] not in ("sat", "unsat"):
            raise RuntimeError(f"unexpected solver output: {out.stdout!r} {out.stderr!r}")
        return lines[-1]
    import z3

    return z3.Z3_eval_smtlib2_string(z3.main_ctx().ref(), text).strip().splitlines()[-1]


def z3_cnf_sat(num_atoms: int, clauses) -> bool | None:
    """Independent propositional check through z3's Python API; ``None`` if z3 is missing."""
    try:
        import z3
    except ImportError:
        return None
    atoms = [z3.Bool(f"a{i}") for i in range(num_atoms)]
    s = z3.Solver()
    for clause in clauses:
        s.add(z3.Or([atoms[abs(l) - 1] if l > 0 else z3.Not(atoms[abs(l) - 1]) for l in clause]))
    return s.check() == z3.sat
