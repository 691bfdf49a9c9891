"""The learning axioms of the extended calculus and their scheduling policy.

Covers the plain clause/cube axioms, the generalized axioms driven by an
incomplete QBF oracle, the abstraction-based clause axiom backed by the
embedded SAT core with failed-assumption minimization, the trivial-truth
test on the universal-literal abstraction, and the call scheduler (decision
intervals, the original-clause cap, and runtime disabling on slow calls).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Set, Tuple

from . import brute, satcore
from .formula import CLAUSE, CUBE, PCNF, Constraint, apply_assignment
from .qbce import qbce_reduce
from .qbcp import FALSE_ST, constraint_status

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"


@dataclass
class AxiomConfig:
    """Switches, intervals, and limits for the axiom layer."""

    enable_qbce: bool = False  # dynamic QBCE cube axiom at every stable point
    enable_oracle: bool = False  # incomplete QBF oracle on oracle intervals
    oracle_kind: str = "qbce"  # qbce | brute
    oracle_budget: int = 50_000  # node budget for the brute oracle
    enable_abs: bool = False  # SAT abstraction clause axiom
    abs_probe: bool = False  # additionally probe single-literal assumptions
    enable_trivial_truth: bool = False
    oracle_interval_log2: int = 11
    sat_interval_log2: int = 10
    max_clauses_for_calls: int = 500_000
    oracle_avg_disable_secs: float = 0.125
    sat_avg_disable_secs: float = 5.0
    sat_conflict_budget: Optional[int] = None  # per-call cap for abs/TT calls
    minimize_budget: int = 64  # greedy re-solves per abs application

    def __post_init__(self):
        if self.oracle_interval_log2 < 0 or self.sat_interval_log2 < 0:
            raise ValueError("interval exponents must be >= 0")
        if self.max_clauses_for_calls <= 0:
            raise ValueError("clause cap must be positive")
        if self.oracle_avg_disable_secs <= 0 or self.sat_avg_disable_secs <= 0:
            raise ValueError("disable thresholds must be positive")
        if self.oracle_kind not in ("qbce", "brute"):
            raise ValueError("oracle_kind must be qbce or brute")


@dataclass
class OracleVerdict:
    verdict: str  # SAT | UNSAT | UNKNOWN
    witness: Optional[object] = None

    def __post_init__(self):
        if self.verdict == UNKNOWN and self.witness is not None:
            raise ValueError("UNKNOWN verdicts carry no witness")


def make_brute_oracle(budget: int) -> Callable[[PCNF, Sequence[int]], OracleVerdict]:
    """Complete-at-small-scale oracle via bounded recursive evaluation."""

    def oracle(f: PCNF, trail_lits: Sequence[int]) -> OracleVerdict:
        residual = apply_assignment(f, trail_lits)
        if residual is True:
            return OracleVerdict(SAT)
        if residual is False:
            return OracleVerdict(UNSAT)
        v = brute.evaluate(residual, budget=budget)
        return OracleVerdict(v)

    return oracle


def make_qbce_oracle() -> Callable[[PCNF, Sequence[int]], OracleVerdict]:
    """Blocked-clause-elimination oracle; answers SAT or UNKNOWN only."""

    def oracle(f: PCNF, trail_lits: Sequence[int]) -> OracleVerdict:
        if qbce_reduce(f, trail_lits).sat:
            return OracleVerdict(SAT)
        return OracleVerdict(UNKNOWN)

    return oracle


def axiom_cl_init(f: PCNF, trail_lits: Iterable[int]) -> Constraint:
    """The first matrix clause falsified under the trail, verbatim."""
    assign = {abs(l): l for l in trail_lits}
    for c in f.matrix:
        if constraint_status(f.prefix, c, assign)[0] == FALSE_ST:
            return c
    raise ValueError("no matrix clause is falsified under the trail")


def axiom_cu_init(f: PCNF, trail_lits: Iterable[int]) -> Constraint:
    """Cube of all trail literals; requires a satisfied matrix."""
    lits = list(trail_lits)
    if apply_assignment(f, lits) is not True:
        raise ValueError("the trail does not satisfy the matrix")
    return Constraint.cube(lits)


def axiom_gen_cu_init(f: PCNF, trail_lits: Sequence[int], oracle) -> Optional[Constraint]:
    """Cube of the trail when the oracle reports the residual satisfiable."""
    if oracle(f, trail_lits).verdict == SAT:
        return Constraint.cube(trail_lits)
    return None


def axiom_gen_cl_init(f: PCNF, trail_lits: Sequence[int], oracle) -> Optional[Constraint]:
    """Negated trail clause when the oracle reports the residual unsatisfiable."""
    if oracle(f, trail_lits).verdict == UNSAT:
        return Constraint.clause([-l for l in trail_lits])
    return None


def minimize_failed_assumptions(
    inst: satcore.SatInstance,
    failed: Set[int],
    budget: int,
    conflict_budget: Optional[int] = None,
) -> Set[int]:
    """Greedy deletion: drop one assumption at a time while still UNSAT."""
    current = set(failed)
    for a in sorted(failed, key=abs):
        if budget <= 0:
            break
        if a not in current:
            continue
        trial = sorted(current - {a}, key=abs)
        budget -= 1
        res = satcore.solve_assuming(inst, trial, conflict_budget)
        if res is not None and res.verdict == satcore.UNSAT:
            current = set(res.failed_assumptions) if res.failed_assumptions is not None else set(trial)
    return current


def axiom_abs_cl_init(
    f: PCNF,
    trail_lits: Sequence[int],
    sat: satcore.SatInstance,
    minimize_budget: int = 64,
    conflict_budget: Optional[int] = None,
) -> Optional[Tuple[Constraint, Tuple[int, ...]]]:
    """Clause from an unsatisfiable existential abstraction under the trail.

    Returns (clause, minimized assumption tuple) or None when the
    abstraction is satisfiable or the budget ran out.
    """
    assumptions = sorted(trail_lits, key=abs)
    res = satcore.solve_assuming(sat, assumptions, conflict_budget)
    if res is None or res.verdict != satcore.UNSAT:
        return None
    failed = set(res.failed_assumptions or ())
    failed = minimize_failed_assumptions(sat, failed, minimize_budget, conflict_budget)
    witness = tuple(sorted(failed, key=abs))
    return Constraint.clause([-l for l in witness]), witness


def universal_literal_abstraction(f: PCNF) -> List[List[int]]:
    """Matrix with every universal literal removed (the trivial-truth core)."""
    out = []
    for c in f.matrix:
        out.append(sorted((l for l in c.literals if f.prefix.is_existential(l)), key=abs))
    return out


def trivial_truth_check(
    f: PCNF,
    trail_lits: Sequence[int],
    sat: satcore.SatInstance,
    conflict_budget: Optional[int] = None,
) -> bool:
    """True only if the universal-literal abstraction is satisfiable under
    the existential part of the trail (one-directional test)."""
    assumptions = sorted((l for l in trail_lits if f.prefix.is_existential(l)), key=abs)
    res = satcore.solve_assuming(sat, assumptions, conflict_budget)
    return res is not None and res.verdict == satcore.SAT


class AxiomScheduler:
    """Interval, cap, and disable policy for external-call axioms.

    The oracle slot fires every 2^n decisions and the SAT slot (abstraction
    and trivial truth) every 2^m decisions; no slot ever fires on formulas
    above the original-clause cap, and a slot is disabled for the rest of
    the run once its average call time exceeds its threshold.
    """

    def __init__(self, config: AxiomConfig, n_original_clauses: int):
        self.config = config
        self.calls_allowed = n_original_clauses <= config.max_clauses_for_calls
        self.oracle_interval = 1 << config.oracle_interval_log2
        self.sat_interval = 1 << config.sat_interval_log2
        self.oracle_next = self.oracle_interval
        self.sat_next = self.sat_interval
        self.oracle_disabled = False
        self.sat_disabled = False
        self.oracle_calls = 0
        self.oracle_time = 0.0
        self.sat_calls = 0
        self.sat_time = 0.0

    def oracle_due(self, decisions: int) -> bool:
        if not self.calls_allowed or self.oracle_disabled:
            return False
        return decisions >= self.oracle_next

    def sat_due(self, decisions: int) -> bool:
        if not self.calls_allowed or self.sat_disabled:
            return False
        return decisions >= self.sat_next

    def consume_oracle(self):
        self.oracle_next += self.oracle_interval

    def consume_sat(self):
        self.sat_next += self.sat_interval

    def record_oracle_call(self, elapsed: float):
        self.oracle_calls += 1
        self.oracle_time += elapsed
        if self.oracle_time / self.oracle_calls > self.config.oracle_avg_disable_secs:
            self.oracle_disabled = True

    def record_sat_call(self, elapsed: float):
        self.sat_calls += 1
        self.sat_time += elapsed
        if self.sat_time / self.sat_calls > self.config.sat_avg_disable_secs:
            self.sat_disabled = True
