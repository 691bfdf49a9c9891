"""Instance generators: the hard formula family from Kleine Buening et al.
and seeded random PCNFs for the test corpus.
"""

from __future__ import annotations

import math
import random
from typing import Dict, Tuple

from .formula import CLAUSE, EXISTS, FORALL, PCNF, Constraint, Prefix


def phi_t_vars(t: int) -> Dict[str, int]:
    """Variable ids for the t-th family member, in prefix order."""
    ids = {"d0": 1, "d1": 2, "e1": 3}
    nxt = 4
    for j in range(1, t):
        ids["x%d" % j] = nxt
        ids["d%d" % (j + 1)] = nxt + 1
        ids["e%d" % (j + 1)] = nxt + 2
        nxt += 3
    ids["x%d" % t] = nxt
    nxt += 1
    for j in range(1, t + 1):
        ids["f%d" % j] = nxt
        nxt += 1
    return ids


def generate_phi_t(t: int) -> PCNF:
    """Member t of the family with linear abstraction-axiom refutations.

    Prefix  E d0 d1 e1  A x1  E d2 e2 ... A x_t  E f1..f_t ; clause count
    4t + 2, variable count 4t + 1.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    v = phi_t_vars(t)
    blocks = [(EXISTS, (v["d0"], v["d1"], v["e1"]))]
    for j in range(1, t):
        blocks.append((FORALL, (v["x%d" % j],)))
        blocks.append((EXISTS, (v["d%d" % (j + 1)], v["e%d" % (j + 1)])))
    blocks.append((FORALL, (v["x%d" % t],)))
    blocks.append((EXISTS, tuple(v["f%d" % j] for j in range(1, t + 1))))

    fneg = [-v["f%d" % j] for j in range(1, t + 1)]
    clauses = [
        Constraint.clause([-v["d0"]]),
        Constraint.clause([v["d0"], -v["d1"], -v["e1"]]),
    ]
    for j in range(1, t):
        dj, ej, xj = v["d%d" % j], v["e%d" % j], v["x%d" % j]
        dn, en = v["d%d" % (j + 1)], v["e%d" % (j + 1)]
        clauses.append(Constraint.clause([dj, -xj, -dn, -en]))
        clauses.append(Constraint.clause([ej, xj, -dn, -en]))
    dt, et, xt = v["d%d" % t], v["e%d" % t], v["x%d" % t]
    clauses.append(Constraint.clause([dt, -xt] + fneg))
    clauses.append(Constraint.clause([et, xt] + fneg))
    for j in range(1, t + 1):
        xj, fj = v["x%d" % j], v["f%d" % j]
        clauses.append(Constraint.clause([xj, fj]))
        clauses.append(Constraint.clause([-xj, fj]))
    return PCNF(Prefix(tuple(blocks)), tuple(clauses))


def generate_random(seed: int, nvars: int, nclauses: int, nblocks: int, clause_len: int) -> PCNF:
    """Seeded random PCNF: alternating blocks, no tautologies or duplicates."""
    if nvars < 1 or nclauses < 0 or nblocks < 1 or clause_len < 1:
        raise ValueError("parameters must be positive")
    if nblocks > nvars:
        raise ValueError("more blocks than variables")
    k = min(clause_len, nvars)
    distinct = math.comb(nvars, k) * (2 ** k)
    if nclauses > distinct:
        raise ValueError("cannot build %d distinct clauses of length %d over %d vars" % (nclauses, k, nvars))

    rng = random.Random(seed)
    cuts = sorted(rng.sample(range(1, nvars), nblocks - 1)) if nblocks > 1 else []
    bounds = [0] + cuts + [nvars]
    first_q = rng.choice((EXISTS, FORALL))
    blocks = []
    for i in range(nblocks):
        q = first_q if i % 2 == 0 else (FORALL if first_q == EXISTS else EXISTS)
        blocks.append((q, tuple(range(bounds[i] + 1, bounds[i + 1] + 1))))

    clauses = []
    seen = set()
    guard = 0
    while len(clauses) < nclauses:
        guard += 1
        if guard > 1000 * (nclauses + 1):
            raise ValueError("could not generate enough distinct clauses")
        vs = rng.sample(range(1, nvars + 1), k)
        lits = frozenset(v if rng.random() < 0.5 else -v for v in vs)
        if lits in seen:
            continue
        seen.add(lits)
        clauses.append(Constraint(CLAUSE, lits))
    return PCNF(Prefix(tuple(blocks)), tuple(clauses))
