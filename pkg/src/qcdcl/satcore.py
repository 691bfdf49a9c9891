"""Embedded CDCL SAT solver with incremental solving under assumptions.

Feature set: two-watched literals, first-UIP learning, activity decay,
phase saving, optional Luby restarts, and failed-assumption extraction
(the subset of assumptions relevant to an UNSAT answer).  Learned clauses
persist across calls; behaviour is deterministic for a fixed call history.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set

SAT = "SAT"
UNSAT = "UNSAT"


@dataclass
class SatResult:
    verdict: str
    model: Optional[Dict[int, bool]] = None
    failed_assumptions: Optional[Set[int]] = None


def failed_assumptions(result: SatResult) -> Set[int]:
    """Failed-assumption set of an UNSAT result (contract: UNSAT only)."""
    if result.verdict != UNSAT:
        raise ValueError("failed_assumptions is only defined for UNSAT results")
    return set(result.failed_assumptions or ())


class SatInstance:
    """One incremental solver instance; the matrix is loaded once."""

    def __init__(self, clauses: Iterable[Iterable[int]] = (), enable_restarts: bool = True):
        self.nvars = 0
        self.clauses: List[List[int]] = []  # original + learned
        self.n_original = 0
        self.watches: Dict[int, List[int]] = {}  # lit -> clause indices watching lit
        self.assign: Dict[int, bool] = {}
        self.trail: List[int] = []
        self.trail_lim: List[int] = []  # trail length at each decision level
        self.reason: Dict[int, int] = {}  # var -> clause index
        self.level: Dict[int, int] = {}
        self.activity: Dict[int, float] = {}
        self.phase: Dict[int, bool] = {}
        self.var_inc = 1.0
        self.enable_restarts = enable_restarts
        self.trivially_unsat = False
        self.stats_conflicts = 0
        self.stats_calls = 0
        for c in clauses:
            self.add_clause(c)

    # -- construction ------------------------------------------------------

    def ensure_var(self, v: int):
        if v > self.nvars:
            for w in range(self.nvars + 1, v + 1):
                self.activity[w] = 0.0
                self.phase[w] = False
                self.watches.setdefault(w, [])
                self.watches.setdefault(-w, [])
            self.nvars = v

    def add_clause(self, lits: Iterable[int]) -> None:
        """Add an original clause (deduplicated; tautologies are dropped)."""
        lits = sorted(set(lits), key=abs)
        if any(-l in lits for l in lits):
            return
        for l in lits:
            self.ensure_var(abs(l))
        if not lits:
            self.trivially_unsat = True
            return
        self._attach(list(lits))
        self.n_original += 1

    def _attach(self, lits: List[int]) -> int:
        idx = len(self.clauses)
        self.clauses.append(lits)
        if len(lits) == 1:
            # watch the single literal twice; handled as a pseudo-unit on restarts
            self.watches[lits[0]].append(idx)
        else:
            self.watches[lits[0]].append(idx)
            self.watches[lits[1]].append(idx)
        return idx

    # -- assignment machinery ----------------------------------------------

    def _value(self, lit: int) -> Optional[bool]:
        v = self.assign.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def _enqueue(self, lit: int, reason: Optional[int]) -> bool:
        val = self._value(lit)
        if val is not None:
            return val
        v = abs(lit)
        self.assign[v] = lit > 0
        self.level[v] = len(self.trail_lim)
        if reason is not None:
            self.reason[v] = reason
        self.trail.append(lit)
        return True

    def _new_level(self):
        self.trail_lim.append(len(self.trail))

    def _backjump(self, target_level: int):
        if len(self.trail_lim) <= target_level:
            return
        cut = self.trail_lim[target_level]
        for lit in self.trail[cut:]:
            v = abs(lit)
            self.phase[v] = lit > 0
            del self.assign[v]
            self.level.pop(v, None)
            self.reason.pop(v, None)
        del self.trail[cut:]
        del self.trail_lim[target_level:]

    def _propagate(self) -> Optional[int]:
        """Unit propagation; returns a conflicting clause index or None."""
        qhead = getattr(self, "_qhead", 0)
        while qhead < len(self.trail):
            lit = self.trail[qhead]
            qhead += 1
            watching = self.watches[-lit]
            i = 0
            while i < len(watching):
                ci = watching[i]
                lits = self.clauses[ci]
                if len(lits) == 1:
                    if self._value(lits[0]) is False:
                        self._qhead = len(self.trail)
                        return ci
                    i += 1
                    continue
                # normalize: watched literals sit at positions 0 and 1
                if lits[0] == -lit:
                    lits[0], lits[1] = lits[1], lits[0]
                if self._value(lits[0]) is True:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(lits)):
                    if self._value(lits[k]) is not False:
                        lits[1], lits[k] = lits[k], lits[1]
                        watching[i] = watching[-1]
                        watching.pop()
                        self.watches[lits[1]].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                # clause is unit or conflicting on lits[0]
                if self._value(lits[0]) is False:
                    self._qhead = qhead
                    return ci
                self._enqueue(lits[0], ci)
                i += 1
        self._qhead = qhead
        return None

    # -- learning ------------------------------------------------------------

    def _bump(self, v: int):
        self.activity[v] = self.activity.get(v, 0.0) + self.var_inc
        if self.activity[v] > 1e100:
            for w in self.activity:
                self.activity[w] *= 1e-100
            self.var_inc *= 1e-100

    def _analyze(self, confl: int):
        """First-UIP conflict analysis; returns (learnt literals, backjump level)."""
        cur_level = len(self.trail_lim)
        seen: Set[int] = set()
        learnt: List[int] = []
        counter = 0
        lits = list(self.clauses[confl])
        idx = len(self.trail) - 1
        uip = None
        while True:
            for l in lits:
                v = abs(l)
                if v in seen or self.level.get(v, 0) == 0:
                    continue
                seen.add(v)
                self._bump(v)
                if self.level[v] == cur_level:
                    counter += 1
                else:
                    learnt.append(l)
            while abs(self.trail[idx]) not in seen:
                idx -= 1
            p = self.trail[idx]
            v = abs(p)
            seen.discard(v)
            counter -= 1
            idx -= 1
            if counter == 0:
                uip = -p
                break
            lits = [l for l in self.clauses[self.reason[v]] if abs(l) != v]
        learnt = [uip] + learnt
        if len(learnt) == 1:
            return learnt, 0
        # second watch must be a highest-level literal for the watch invariant
        hi = max(range(1, len(learnt)), key=lambda i: self.level[abs(learnt[i])])
        learnt[1], learnt[hi] = learnt[hi], learnt[1]
        bt = self.level[abs(learnt[1])]
        return learnt, bt

    def _analyze_final(self, failed_lit: int) -> Set[int]:
        """Assumptions relevant to the falsification of ``failed_lit``."""
        out = {failed_lit}
        seen = {abs(failed_lit)}
        for lit in reversed(self.trail):
            v = abs(lit)
            if v not in seen:
                continue
            ri = self.reason.get(v)
            if ri is None:
                if self.level.get(v, 0) > 0:
                    out.add(lit)
            else:
                for l in self.clauses[ri]:
                    if abs(l) != v and self.level.get(abs(l), 0) > 0:
                        seen.add(abs(l))
        return out

    def _decide_var(self) -> Optional[int]:
        best_v, best_a = None, -1.0
        for v in range(1, self.nvars + 1):
            if v not in self.assign:
                a = self.activity.get(v, 0.0)
                if a > best_a:
                    best_v, best_a = v, a
        return best_v

    # -- main search ---------------------------------------------------------

    def solve(self, assumptions: Sequence[int] = (), conflict_budget: Optional[int] = None) -> Optional[SatResult]:
        """Solve under assumptions; None when the conflict budget is exhausted."""
        self.stats_calls += 1
        assumptions = list(assumptions)
        amap = {}
        for a in assumptions:
            if -a in amap:
                raise ValueError("complementary assumptions on variable %d" % abs(a))
            amap[a] = True
            self.ensure_var(abs(a))
        if self.trivially_unsat:
            return SatResult(UNSAT, failed_assumptions=set())
        self._backjump(0)
        self._qhead = 0
        conflicts = 0
        restart_count = 0
        next_restart = 64 * _luby(restart_count + 1) if self.enable_restarts else None
        # level-0 units from single-literal clauses
        for ci, lits in enumerate(self.clauses):
            if len(lits) == 1 and not self._enqueue(lits[0], ci):
                return SatResult(UNSAT, failed_assumptions=set())
        while True:
            confl = self._propagate()
            if confl is not None:
                conflicts += 1
                self.stats_conflicts += 1
                if len(self.trail_lim) == 0:
                    return SatResult(UNSAT, failed_assumptions=set())
                learnt, bt = self._analyze(confl)
                self._backjump(bt)
                self._qhead = len(self.trail)
                ci = self._attach(learnt)
                if not self._enqueue(learnt[0], ci):
                    return SatResult(UNSAT, failed_assumptions=set())
                self.var_inc /= 0.95
                if conflict_budget is not None and conflicts >= conflict_budget:
                    self._backjump(0)
                    return None
                if next_restart is not None and conflicts >= next_restart:
                    restart_count += 1
                    next_restart = conflicts + 64 * _luby(restart_count + 1)
                    self._backjump(0)
                    self._qhead = 0
                continue
            # place pending assumptions, one level each
            if len(self.trail_lim) < len(assumptions):
                a = assumptions[len(self.trail_lim)]
                val = self._value(a)
                if val is True:
                    self._new_level()
                    continue
                if val is False:
                    failed = self._analyze_final(a)
                    self._backjump(0)
                    return SatResult(UNSAT, failed_assumptions=failed)
                self._new_level()
                self._enqueue(a, None)
                continue
            if len(self.assign) == self.nvars:
                model = dict(self.assign)
                self._backjump(0)
                return SatResult(SAT, model=model)
            v = self._decide_var()
            self._new_level()
            self._enqueue(v if self.phase.get(v, False) else -v, None)

    def dump_dimacs(self) -> str:
        """Original clause set in DIMACS, for external cross-checking."""
        out = ["p cnf %d %d" % (self.nvars, self.n_original)]
        for lits in self.clauses[: self.n_original]:
            out.append(" ".join(map(str, sorted(lits, key=abs))) + " 0")
        return "\n".join(out) + "\n"


def _luby(i: int) -> int:
    """Luby restart sequence: 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << (k + 1)) - 1 <= i:
        k += 1
    while (1 << k) - 1 != i:
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << (k + 1)) - 1 <= i:
            k += 1
    return 1 << (k - 1)


def load_matrix(clauses: Iterable[Iterable[int]], enable_restarts: bool = True) -> SatInstance:
    """Build a SAT instance from a propositional clause set (loaded once)."""
    return SatInstance(clauses, enable_restarts=enable_restarts)


def solve_assuming(
    inst: SatInstance, assumptions: Sequence[int] = (), conflict_budget: Optional[int] = None
) -> Optional[SatResult]:
    """Incremental solve under assumptions; None means the budget ran out."""
    return inst.solve(assumptions, conflict_budget)
