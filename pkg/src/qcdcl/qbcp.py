"""QBF Boolean constraint propagation: unit and pure literal detection.

Runs unit detection over matrix clauses, learned clauses, and learned
cubes, plus pure literal detection over the residual original matrix, to
fixpoint.  Units are processed before pures for deterministic replay.

Reduction is applied to residuals on the fly: a clause whose residual
contains only universal literals is falsified, a cube whose residual
contains only trailing existential literals is satisfied, and a clause
(cube) whose reduced residual is a single existential (universal) literal
implies that literal (its negation).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .formula import CLAUSE, CUBE, PCNF, Constraint, Prefix

STABLE = "stable"
FALSIFIED = "falsified"
SATISFIED = "satisfied"

DECISION = "decision"
UNIT = "unit"
PURE = "pure"
ASSUMPTION = "assumption"


def universal_reduce(prefix: Prefix, c: Constraint) -> Constraint:
    """UR(C): drop universal literals with no later existential in the clause."""
    if c.kind != CLAUSE:
        raise ValueError("universal_reduce expects a clause")
    return Constraint(CLAUSE, c.literals - reducible_literals(prefix, c))


def existential_reduce(prefix: Prefix, c: Constraint) -> Constraint:
    """ER(C): drop existential literals with no later universal in the cube."""
    if c.kind != CUBE:
        raise ValueError("existential_reduce expects a cube")
    return Constraint(CUBE, c.literals - reducible_literals(prefix, c))


def reducible_literals(prefix: Prefix, c: Constraint) -> frozenset:
    """Literals removable from ``c`` by one round of rule red (a maximal set)."""
    if c.kind == CLAUSE:
        keep_q, drop_q = prefix.is_existential, prefix.is_universal
    else:
        keep_q, drop_q = prefix.is_universal, prefix.is_existential
    anchor = [prefix.block_index(abs(l)) for l in c.literals if keep_q(l)]
    bound = max(anchor) if anchor else -1
    return frozenset(l for l in c.literals if drop_q(l) and prefix.block_index(abs(l)) > bound)


# constraint status codes
SAT_ST = "satisfied"
FALSE_ST = "falsified"
UNIT_ST = "unit"
OPEN_ST = "open"
DISABLED_ST = "disabled"


def constraint_status(prefix: Prefix, c: Constraint, assign: Dict[int, int]) -> Tuple[str, Optional[int]]:
    """Status of a constraint under a partial assignment (var -> true literal).

    Clauses: satisfied / falsified (mod on-the-fly reduction) / unit(lit to
    assign) / open.  Cubes: disabled (a false literal) / satisfied (mod
    reduction) / unit(lit to assign, the negation of the trailing universal)
    / open.
    """
    residual = []
    for l in c.literals:
        known = assign.get(abs(l))
        if known is None:
            residual.append(l)
        elif known == l:
            if c.kind == CLAUSE:
                return SAT_ST, None
        else:
            if c.kind == CUBE:
                return DISABLED_ST, None
    # on-the-fly reduction within the residual prefix: assigned vars are gone,
    # so only residual literals matter for the block comparison
    if c.kind == CLAUSE:
        keep = [l for l in residual if prefix.is_existential(l)]
        if not keep:
            return FALSE_ST, None
        if len(keep) == 1:
            bound = prefix.block_index(abs(keep[0]))
            if all(prefix.block_index(abs(l)) > bound for l in residual if l != keep[0]):
                return UNIT_ST, keep[0]
        return OPEN_ST, None
    keep = [l for l in residual if prefix.is_universal(l)]
    if not keep:
        return SAT_ST, None
    if len(keep) == 1:
        bound = prefix.block_index(abs(keep[0]))
        if all(prefix.block_index(abs(l)) > bound for l in residual if l != keep[0]):
            return UNIT_ST, -keep[0]
    return OPEN_ST, None


@dataclass
class PropagationResult:
    outcome: str  # stable | falsified | satisfied
    conflict: Optional[Constraint] = None  # falsified clause
    trigger: Optional[Constraint] = None  # satisfied cube; None means matrix empty
    implied: List[Tuple[int, tuple]] = field(default_factory=list)


def propagate(
    f: PCNF,
    learned_clauses: Sequence[Constraint] = (),
    learned_cubes: Sequence[Constraint] = (),
    trail: Optional[List[Tuple[int, tuple]]] = None,
    order_seed: Optional[int] = None,
) -> PropagationResult:
    """Run QBCP to fixpoint, appending implied literals to ``trail``.

    Trail entries are (literal, reason) with reason ``("decision", None)``,
    ``("unit", constraint)``, ``("pure", None)`` or ``("assumption", None)``.
    The result lists exactly the entries appended during this call.
    """
    if trail is None:
        trail = []
    assign = {}
    for lit, _ in trail:
        if assign.get(abs(lit), lit) != lit:
            raise ValueError("complementary trail literals on variable %d" % abs(lit))
        assign[abs(lit)] = lit

    rng = random.Random(order_seed) if order_seed is not None else None
    clauses = list(f.matrix) + list(learned_clauses)
    cubes = list(learned_cubes)
    implied: List[Tuple[int, tuple]] = []

    def record(lit, reason):
        trail.append((lit, reason))
        implied.append((lit, reason))
        assign[abs(lit)] = lit

    while True:
        units = []
        conflict = None
        trigger = None
        matrix_open = False
        scan = clauses + cubes
        if rng is not None:
            scan = list(scan)
            rng.shuffle(scan)
        for c in scan:
            st, lit = constraint_status(f.prefix, c, assign)
            if c.kind == CLAUSE:
                if st == FALSE_ST:
                    conflict = c
                    break
                if st == UNIT_ST:
                    units.append((lit, c))
            else:
                if st == SAT_ST:
                    trigger = trigger if trigger is not None else c
                if st == UNIT_ST:
                    units.append((lit, c))
        if conflict is not None:
            return PropagationResult(FALSIFIED, conflict=conflict, implied=implied)
        if trigger is not None:
            return PropagationResult(SATISFIED, trigger=trigger, implied=implied)
        for c in f.matrix:
            st, _ = constraint_status(f.prefix, c, assign)
            if st != SAT_ST:
                matrix_open = True
                break
        if not matrix_open:
            return PropagationResult(SATISFIED, trigger=None, implied=implied)
        if units:
            lit, c = units[0]
            record(lit, (UNIT, c))
            continue
        pure = _find_pure(f, assign, rng)
        if pure is not None:
            record(pure, (PURE, None))
            continue
        return PropagationResult(STABLE, implied=implied)


def _find_pure(f: PCNF, assign: Dict[int, int], rng=None) -> Optional[int]:
    """First pure literal of the residual original matrix, as the literal to assign."""
    pos = set()
    neg = set()
    for c in f.matrix:
        satisfied = any(assign.get(abs(l)) == l for l in c.literals)
        if satisfied:
            continue
        for l in c.literals:
            if abs(l) in assign:
                continue
            (pos if l > 0 else neg).add(abs(l))
    candidates = [v for v in pos ^ neg if v not in assign]
    if not candidates:
        return None
    candidates.sort()
    if rng is not None:
        rng.shuffle(candidates)
    v = candidates[0]
    lit = v if v in pos else -v
    return lit if f.prefix.is_existential(v) else -lit
