"""Exact recursive QBF evaluation and propositional model enumeration.

Ground truth for all desk-scale tests, and a complete (budgeted) oracle
plug-in for the generalized axioms on tiny residuals.  Splits on the first
prefix variable: an existential block needs one satisfiable branch, a
universal block needs both.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence, Set, Tuple

from .formula import EXISTS, PCNF, Constraint, var_of

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: Optional[int]):
        self.left = nodes

    def spend(self) -> bool:
        if self.left is None:
            return True
        if self.left <= 0:
            return False
        self.left -= 1
        return True


def _residual(clauses, assignment):
    """Residual clause list under an assignment set; True/False when decided."""
    out = []
    for c in clauses:
        if any(l in assignment for l in c):
            continue
        kept = [l for l in c if -l not in assignment]
        if not kept:
            return False
        out.append(kept)
    if not out:
        return True
    return out


def _find_unit_or_pure(clauses, prefix, assignment, variables):
    """One unit or pure simplification literal, or None (units first)."""
    for c in clauses:
        # residual clauses carry only unassigned literals
        if len(c) == 1 and prefix.is_existential(c[0]):
            return c[0]
    pos = set()
    neg = set()
    for c in clauses:
        for l in c:
            if l in assignment or -l in assignment:
                continue
            (pos if l > 0 else neg).add(abs(l))
    for v in sorted(variables):
        if v in assignment or -v in assignment:
            continue
        in_pos, in_neg = v in pos, v in neg
        if in_pos == in_neg:
            continue
        lit = v if in_pos else -v
        return lit if prefix.is_existential(v) else -lit
    return None


def evaluate(f: PCNF, budget: Optional[int] = None, simplify: bool = True) -> str:
    """Exact verdict for a PCNF, or UNKNOWN when the node budget runs out."""
    b = _Budget(budget)
    clauses = [tuple(c.literals) for c in f.matrix]
    order = [v for _, vs in f.prefix.blocks for v in vs]
    variables = set(order)

    def rec(assignment: set) -> str:
        if not b.spend():
            return UNKNOWN
        res = _residual(clauses, assignment)
        if res is True:
            return SAT
        if res is False:
            return UNSAT
        if simplify:
            lit = _find_unit_or_pure(res, f.prefix, assignment, variables)
            if lit is not None:
                assignment.add(lit)
                verdict = rec(assignment)
                assignment.discard(lit)
                return verdict
        v = next(v for v in order if v not in assignment and -v not in assignment)
        existential = f.prefix.is_existential(v)
        verdicts = []
        for lit in (v, -v):
            assignment.add(lit)
            verdict = rec(assignment)
            assignment.discard(lit)
            if verdict == UNKNOWN:
                return UNKNOWN
            verdicts.append(verdict)
            if existential and verdict == SAT:
                return SAT
            if not existential and verdict == UNSAT:
                return UNSAT
        return verdicts[0] if existential else verdicts[0]

    return rec(set())


def evaluate_with_cubes(f: PCNF, cubes: Sequence[Constraint], budget: Optional[int] = None) -> str:
    """Verdict of the PCNF whose matrix is (clauses OR any cube fully true).

    Used to check Thm.-1-style satisfiability equivalence when a learned
    cube is disjoined to the matrix.
    """
    b = _Budget(budget)
    clauses = [tuple(c.literals) for c in f.matrix]
    cube_lits = [tuple(c.literals) for c in cubes]
    order = [v for _, vs in f.prefix.blocks for v in vs]

    def rec(assignment: set) -> str:
        if not b.spend():
            return UNKNOWN
        for cu in cube_lits:
            if all(l in assignment for l in cu):
                return SAT
        res = _residual(clauses, assignment)
        if res is True:
            return SAT
        if res is False:
            # matrix false; a cube could still fire deeper only if none has a false literal
            if all(any(-l in assignment for l in cu) for cu in cube_lits):
                return UNSAT
        unassigned = [v for v in order if v not in assignment and -v not in assignment]
        if not unassigned:
            return UNSAT
        v = unassigned[0]
        existential = f.prefix.is_existential(v)
        out = None
        for lit in (v, -v):
            assignment.add(lit)
            verdict = rec(assignment)
            assignment.discard(lit)
            if verdict == UNKNOWN:
                return UNKNOWN
            if existential and verdict == SAT:
                return SAT
            if not existential and verdict == UNSAT:
                return UNSAT
            out = verdict
        return out

    return rec(set())


def enumerate_models(clauses: Iterable, variables: Iterable[int], cap: int = 20) -> Set[frozenset]:
    """Exact model set of a clause set over ``variables`` (cap on |variables|)."""
    vs = sorted(set(variables))
    if len(vs) > cap:
        raise ValueError("enumerate_models: %d variables exceed cap %d" % (len(vs), cap))
    clause_lits = [tuple(c.literals if isinstance(c, Constraint) else c) for c in clauses]
    models = set()
    for bits in itertools.product((False, True), repeat=len(vs)):
        m = frozenset(v if bit else -v for v, bit in zip(vs, bits))
        if all(any(l in m for l in c) for c in clause_lits):
            models.add(m)
    return models
