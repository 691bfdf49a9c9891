"""Dynamic quantified blocked clause elimination, used as an incomplete
SAT-side oracle for the generalized cube axiom.

An existential literal l of clause C blocks C iff every residual clause D
containing ~l has some k in C, k != l, with ~k in D and k at or before l
in the prefix (the outer resolvent is tautological).  Elimination runs to
fixpoint on the residual matrix under the current assignment; if nothing
is left the residual PCNF is satisfiable.  This oracle never answers UNSAT.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

from .formula import PCNF


@dataclass
class QbceResult:
    sat: bool
    residual_clauses: int


def qbce_reduce(f: PCNF, trail_lits: Iterable[int], order_seed: Optional[int] = None) -> QbceResult:
    """Fixpoint blocked-clause elimination on the residual of ``f``.

    Returns a SAT verdict iff every residual clause is eliminated.
    """
    assign = {}
    for l in trail_lits:
        assign[abs(l)] = l
    residual: List[frozenset] = []
    for c in f.matrix:
        if any(assign.get(abs(l)) == l for l in c.literals):
            continue
        residual.append(frozenset(l for l in c.literals if assign.get(abs(l)) != -l))
    if not residual:
        return QbceResult(True, 0)

    block_of = {}
    for v in f.prefix.variables():
        block_of[v] = f.prefix.block_index(v)

    active = list(range(len(residual)))
    rng = random.Random(order_seed) if order_seed is not None else None
    changed = True
    while changed and active:
        changed = False
        order = list(active)
        if rng is not None:
            rng.shuffle(order)
        for ci in order:
            if ci not in active:
                continue
            c = residual[ci]
            if _blocked(f, residual, active, ci, c, block_of):
                active.remove(ci)
                changed = True
    return QbceResult(not active, len(active))


def _blocked(f: PCNF, residual, active, ci, c, block_of) -> bool:
    for l in c:
        if not f.prefix.is_existential(l):
            continue
        bl = block_of[abs(l)]
        blocking = True
        for di in active:
            if di == ci:
                continue
            d = residual[di]
            if -l not in d:
                continue
            if not any(k != l and -k in d and block_of[abs(k)] <= bl for k in c):
                blocking = False
                break
        if blocking:
            return True
    return False
