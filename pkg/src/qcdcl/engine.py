"""The QCDCL search engine.

Decisions follow the prefix order (always from the outermost block with an
unassigned variable); QBCP runs units and pures to fixpoint; conflicts and
solutions are analyzed by resolution against trail reasons plus reduction,
yielding an asserting constraint (unit after backtracking) or the empty
constraint.  When structural analysis cannot continue (a tautological
resolvent, or a literal justified only by a pure assignment or a
constraint of the other kind), the generalized axiom over the current
trail is applied and shrunk instead, which is always sound because the
trail falsifies (satisfies) the formula at that point.

Backtracking is position-based: the solver retracts to the trail position
that makes the learned constraint unit.  A learned constraint whose last
literal is of the non-implied kind re-enters analysis at the shorter trail
(a cascade); the store only ever receives asserting or empty constraints.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple, Union

from . import qbcp, satcore
from .axioms import (
    AxiomConfig,
    AxiomScheduler,
    axiom_abs_cl_init,
    make_brute_oracle,
    make_qbce_oracle,
    minimize_failed_assumptions,
    trivial_truth_check,
    universal_literal_abstraction,
)
from .formula import CLAUSE, CUBE, EXISTS, FORALL, PCNF, Constraint
from .proof import (
    ABS_CL_INIT,
    CL_INIT,
    CU_INIT,
    GEN_CL_INIT,
    GEN_CU_INIT,
    RED,
    RES,
    Proof,
    ProofLog,
    W_DECISION,
    W_PLAIN,
    W_PURE,
    W_UNIT,
    WitnessEntry,
)
from .qbce import qbce_reduce
from .qbcp import DECISION, FALSE_ST, PURE, SAT_ST, UNIT, UNIT_ST, reducible_literals

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"

EXIT_CODES = {SAT: 10, UNSAT: 20, UNKNOWN: 0}


@dataclass
class Stats:
    decisions: int = 0
    conflicts: int = 0
    solutions: int = 0
    restarts: int = 0
    cascades: int = 0
    fallbacks: int = 0
    learned_clauses: int = 0
    learned_cubes: int = 0
    duplicate_learned: int = 0
    cl_init: int = 0
    cu_init: int = 0
    gen_cl_init: int = 0
    gen_cu_init: int = 0
    abs_cl_init: int = 0
    qbce_tried: int = 0
    qbce_success: int = 0
    oracle_tried: int = 0
    oracle_success: int = 0
    tt_tried: int = 0
    tt_success: int = 0
    abs_tried: int = 0
    abs_success: int = 0
    sat_calls: int = 0
    oracle_calls: int = 0
    sat_slots: int = 0
    oracle_slots: int = 0
    wall_ms: float = 0.0

    def as_dict(self) -> Dict[str, float]:
        return dict(self.__dict__)


@dataclass
class SolverConfig:
    axioms: AxiomConfig = field(default_factory=AxiomConfig)
    max_decisions: Optional[int] = None
    max_conflicts: Optional[int] = None
    enable_restarts: bool = False
    restart_base: int = 128
    store_deletion_cap: Optional[int] = None
    decision_script: Optional[Union[Sequence[int], Callable]] = None
    emit_proof: bool = True
    clock: Callable[[], float] = time.monotonic


@dataclass
class SolveResult:
    verdict: str
    proof: Optional[Proof]
    stats: Stats
    learned_clauses: List[Constraint]
    learned_cubes: List[Constraint]
    abs_applications: List[Tuple[Tuple[int, ...], Constraint]]

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]


@dataclass
class _Entry:
    lit: int
    reason: tuple  # (kind, payload): ("decision", None) | ("unit", Constraint) | ("pure", None)
    level: int


class Trail:
    def __init__(self):
        self.entries: List[_Entry] = []
        self.assign: Dict[int, int] = {}
        self.pos: Dict[int, int] = {}
        self.level = 0

    def __len__(self):
        return len(self.entries)

    def literals(self) -> List[int]:
        return [e.lit for e in self.entries]

    def append(self, lit: int, reason: tuple):
        if abs(lit) in self.assign:
            raise RuntimeError("variable %d assigned twice" % abs(lit))
        if reason[0] == DECISION:
            self.level += 1
        self.pos[abs(lit)] = len(self.entries)
        self.entries.append(_Entry(lit, reason, self.level))
        self.assign[abs(lit)] = lit

    def retract_to(self, length: int, phase: Dict[int, bool]):
        while len(self.entries) > length:
            e = self.entries.pop()
            phase[abs(e.lit)] = e.lit > 0
            del self.assign[abs(e.lit)]
            del self.pos[abs(e.lit)]
        self.level = self.entries[-1].level if self.entries else 0


class Solver:
    """One solver instance; single-threaded, deterministic."""

    def __init__(self, f: PCNF, config: Optional[SolverConfig] = None):
        self.f = f
        self.config = config or SolverConfig()
        self.stats = Stats()
        self.trail = Trail()
        self.log = ProofLog()
        self.learned_clauses: List[Constraint] = []
        self.learned_cubes: List[Constraint] = []
        self.store_keys: Set[tuple] = set()
        self.step_by_key: Dict[tuple, int] = {}
        self.matrix_index: Dict[frozenset, int] = {}
        for i, c in enumerate(f.matrix):
            self.matrix_index.setdefault(c.literals, i)
        self.activity: Dict[int, float] = {v: 0.0 for v in f.variables()}
        self.var_inc = 1.0
        self.phase: Dict[int, bool] = {}
        self.scheduler = AxiomScheduler(self.config.axioms, len(f.matrix))
        self.abs_applications: List[Tuple[Tuple[int, ...], Constraint]] = []
        self.probe_cache: Set[int] = set()
        self._ea: Optional[satcore.SatInstance] = None
        self._ua: Optional[satcore.SatInstance] = None
        ax = self.config.axioms
        self.oracle = None
        if ax.enable_oracle:
            self.oracle = make_qbce_oracle() if ax.oracle_kind == "qbce" else make_brute_oracle(ax.oracle_budget)
        self._restart_count = 0
        self._conflicts_at_restart = 0

    # -- bookkeeping -------------------------------------------------------

    def _key(self, c: Constraint) -> tuple:
        return (c.kind, c.literals)

    def _step_of(self, c: Constraint) -> int:
        key = self._key(c)
        sid = self.step_by_key.get(key)
        if sid is not None:
            return sid
        if c.kind == CLAUSE and c.literals in self.matrix_index:
            self.stats.cl_init += 1
            sid = self.log.add(CL_INIT, c)
            self.step_by_key[key] = sid
            return sid
        raise RuntimeError("constraint %r has no derivation step" % c)

    def _ea_instance(self) -> satcore.SatInstance:
        if self._ea is None:
            self._ea = satcore.SatInstance(c.sorted_literals() for c in self.f.matrix)
            self._ea.ensure_var(self.f.num_vars())
        return self._ea

    def _ua_instance(self) -> satcore.SatInstance:
        if self._ua is None:
            self._ua = satcore.SatInstance(universal_literal_abstraction(self.f))
            self._ua.ensure_var(self.f.num_vars())
        return self._ua

    def _witness(self) -> Tuple[WitnessEntry, ...]:
        out = []
        for e in self.trail.entries:
            kind, payload = e.reason
            if kind == DECISION:
                out.append(WitnessEntry(e.lit, W_DECISION))
            elif kind == PURE:
                out.append(WitnessEntry(e.lit, W_PURE))
            else:
                c = payload
                if c.kind == CLAUSE and c.literals in self.matrix_index and self._key(c) not in self.step_by_key:
                    ref = ("m", self.matrix_index[c.literals])
                else:
                    ref = ("s", self._step_of(c))
                out.append(WitnessEntry(e.lit, W_UNIT, ref))
        return tuple(out)

    def _bump(self, var: int):
        self.activity[var] = self.activity.get(var, 0.0) + self.var_inc
        if self.activity[var] > 1e100:
            for v in self.activity:
                self.activity[v] *= 1e-100
            self.var_inc *= 1e-100

    # -- propagation -------------------------------------------------------

    def _propagate(self) -> qbcp.PropagationResult:
        raw = [(e.lit, e.reason) for e in self.trail.entries]
        base = len(raw)
        res = qbcp.propagate(self.f, self.learned_clauses, self.learned_cubes, raw)
        for lit, reason in raw[base:]:
            self.trail.append(lit, reason)
        return res

    # -- decisions -----------------------------------------------------------

    def open_block_vars(self) -> Tuple[str, Tuple[int, ...]]:
        """Quantifier and unassigned variables of the outermost open block."""
        for q, vs in self.f.prefix.blocks:
            open_vs = tuple(v for v in vs if v not in self.trail.assign)
            if open_vs:
                return q, open_vs
        return EXISTS, ()

    def has_unit_clause(self, lit: int) -> bool:
        return (CLAUSE, frozenset([lit])) in self.store_keys

    def pick_decision(self) -> Optional[int]:
        _, open_vs = self.open_block_vars()
        if not open_vs:
            return None
        script = self.config.decision_script
        if script is not None:
            if callable(script):
                lit = script(self)
                if lit is not None and abs(lit) in open_vs:
                    return lit
            else:
                for lit in script:
                    if abs(lit) in open_vs:
                        return lit
        best = max(open_vs, key=lambda v: (self.activity.get(v, 0.0), -v))
        return best if self.phase.get(best, False) else -best

    # -- analysis ------------------------------------------------------------

    def _settled_and_survivors(self, c: Constraint, kind: str):
        settled = []
        survivors = []
        for l in c.literals:
            t = -l if kind == CLAUSE else l
            cur = self.trail.assign.get(abs(l))
            if cur is None:
                survivors.append(l)
            elif cur == t:
                settled.append((self.trail.pos[abs(l)], l))
            else:
                raise RuntimeError("analysis constraint has a literal of the wrong phase")
        settled.sort(reverse=True)
        return settled, survivors

    def _reason_constraint(self, lit_in_c: int, kind: str) -> Optional[Constraint]:
        """Reason usable to resolve away a settled literal, or None."""
        e = self.trail.entries[self.trail.pos[abs(lit_in_c)]]
        rk, payload = e.reason
        if rk == UNIT and payload.kind == kind:
            return payload
        return None

    def _resolve(self, c: Constraint, lit: int, reason: Constraint, kind: str, sid: int) -> Tuple[Optional[Constraint], Optional[int]]:
        merged = (c.literals - {lit}) | (reason.literals - {-lit})
        if any(-l in merged for l in merged):
            return None, None  # tautological resolvent: rule res is inapplicable
        out = Constraint(kind, merged)
        new_sid = self.log.add(RES, out, (sid, self._step_of(reason)))
        self._bump(abs(lit))
        return out, new_sid

    def _reduce(self, c: Constraint, kind: str, sid: int) -> Tuple[Constraint, int]:
        rem = reducible_literals(self.f.prefix, c)
        if rem:
            c = Constraint(kind, c.literals - rem)
            sid = self.log.add(RED, c, (sid,))
        return c, sid

    def _analysis_pass(self, c: Constraint, sid: int, kind: str) -> Tuple[Constraint, int]:
        """Reduce/resolve until empty, asserting, or a trail-axiom fallback."""
        anchor = EXISTS if kind == CLAUSE else FORALL
        prefix = self.f.prefix
        fell_back = False
        while True:
            c, sid = self._reduce(c, kind, sid)
            if c.is_empty():
                return c, sid
            settled, survivors = self._settled_and_survivors(c, kind)
            if not settled:
                raise RuntimeError("non-empty analysis constraint with no settled literal")
            if fell_back:
                return c, sid  # position-asserting or cascading; decided by the caller
            p1, lit1 = settled[0]
            lvl1 = self.trail.entries[p1].level
            at_level = [(p, l) for (p, l) in settled if self.trail.entries[p].level == lvl1]
            if not survivors and len(at_level) == 1 and prefix.quantifier(lit1) == anchor:
                return c, sid
            cand = None
            if survivors:
                smin = min(prefix.block_index(abs(u)) for u in survivors)
                opts = [
                    (p, l)
                    for (p, l) in settled
                    if prefix.quantifier(l) == anchor and prefix.block_index(abs(l)) > smin
                ]
            elif len(at_level) > 1:
                opts = at_level
            else:
                b1 = prefix.block_index(abs(lit1))
                opts = [
                    (p, l)
                    for (p, l) in settled
                    if prefix.quantifier(l) == anchor and prefix.block_index(abs(l)) > b1
                ]
            for p, l in sorted(opts, reverse=True):
                reason = self._reason_constraint(l, kind)
                if reason is None:
                    continue
                merged, new_sid = self._resolve(c, l, reason, kind, sid)
                if merged is None:
                    cand = None  # tautology: abandon structural analysis
                    break
                cand = (merged, new_sid)
                break
            if cand is not None:
                c, sid = cand
                continue
            c, sid = self._fallback(kind)
            fell_back = True

    def _fallback(self, kind: str) -> Tuple[Constraint, int]:
        """Learn the trail constraint via the generalized axiom and shrink it."""
        self.stats.fallbacks += 1
        witness = self._witness()
        lits = self.trail.literals()
        if kind == CLAUSE:
            c = Constraint.clause([-l for l in lits])
            self.stats.gen_cl_init += 1
            sid = self.log.add(GEN_CL_INIT, c, witness=witness)
        else:
            c = Constraint.cube(lits)
            self.stats.gen_cu_init += 1
            sid = self.log.add(GEN_CU_INIT, c, witness=witness)
        trail_set = set(lits)
        while True:
            best = None
            for l in c.literals:
                reason = self._reason_constraint(l, kind)
                if reason is None:
                    continue
                others = reason.literals - {-l}
                # resolve only when the resolvent stays within the trail constraint
                safe = all((-k if kind == CLAUSE else k) in trail_set for k in others)
                if not safe:
                    continue
                p = self.trail.pos[abs(l)]
                if best is None or p > best[0]:
                    best = (p, l, reason)
            if best is None:
                return c, sid
            _, l, reason = best
            merged, new_sid = self._resolve(c, l, reason, kind, sid)
            if merged is None:
                return c, sid  # cannot happen within the trail constraint; defensive
            c, sid = merged, new_sid

    def _learn_and_apply(self, c: Constraint, sid: int, kind: str):
        """Retract so the constraint becomes unit, store it, or cascade.

        Returns None when the search can continue, or (constraint, sid) when
        the constraint re-falsifies (re-satisfies) at the retract point and
        must be analyzed again.
        """
        settled, survivors = self._settled_and_survivors(c, kind)
        if survivors:
            raise RuntimeError("learning a constraint with unassigned literals")
        keep = settled[1][0] + 1 if len(settled) > 1 else 0
        self.trail.retract_to(keep, self.phase)
        status, _ = qbcp.constraint_status(self.f.prefix, c, self.trail.assign)
        if status == UNIT_ST:
            self._store(c, sid, kind)
            return None
        self.stats.cascades += 1
        return c, sid

    def _store(self, c: Constraint, sid: int, kind: str):
        key = self._key(c)
        if key in self.step_by_key:
            if key in self.store_keys:
                self.stats.duplicate_learned += 1
            return
        self.step_by_key[key] = sid
        self.store_keys.add(key)
        if kind == CLAUSE:
            self.learned_clauses.append(c)
            self.stats.learned_clauses += 1
        else:
            self.learned_cubes.append(c)
            self.stats.learned_cubes += 1
        self._maybe_delete()

    def _maybe_delete(self):
        cap = self.config.store_deletion_cap
        if cap is None:
            return
        for store in (self.learned_clauses, self.learned_cubes):
            if len(store) <= cap:
                continue
            reasons = {
                id(e.reason[1]) for e in self.trail.entries if e.reason[0] == UNIT
            }
            keep: List[Constraint] = []
            removable: List[Constraint] = []
            for c in store:
                (keep if id(c) in reasons or len(c) <= 1 else removable).append(c)
            excess = len(store) - cap
            dropped = removable[:excess]
            for c in dropped:
                self.store_keys.discard(self._key(c))
            kept = [c for c in store if c not in dropped]
            store[:] = kept

    def _handle(self, c: Constraint, sid: int, kind: str) -> Optional[SolveResult]:
        for l in c.literals:
            self._bump(abs(l))
        self.var_inc /= 0.95
        while True:
            c, sid = self._analysis_pass(c, sid, kind)
            if c.is_empty():
                return self._finish(UNSAT if kind == CLAUSE else SAT, sid)
            retry = self._learn_and_apply(c, sid, kind)
            if retry is None:
                return None
            c, sid = retry

    # -- axioms at stable points ----------------------------------------------

    def _gen_cube_from_trail(self, counter: str) -> Tuple[Constraint, int]:
        cube = Constraint.cube(self.trail.literals())
        self.stats.gen_cu_init += 1
        sid = self.log.add(GEN_CU_INIT, cube, witness=self._witness())
        return cube, sid

    def _try_axioms(self):
        """Attempt scheduled axioms at a stable point; returns a terminal
        SolveResult, True when a constraint was learned, or None."""
        cfg = self.config.axioms
        clock = self.config.clock
        if cfg.enable_qbce:
            self.stats.qbce_tried += 1
            if qbce_reduce(self.f, self.trail.literals()).sat:
                self.stats.qbce_success += 1
                cube, sid = self._gen_cube_from_trail("qbce")
                out = self._handle(cube, sid, CUBE)
                return out if out is not None else True
        if (cfg.enable_abs or cfg.enable_trivial_truth) and self.scheduler.sat_due(self.stats.decisions):
            self.scheduler.consume_sat()
            self.stats.sat_slots += 1
            if cfg.enable_abs:
                out = self._try_abs(clock)
                if out is not None:
                    return out
            if cfg.enable_trivial_truth and not self.scheduler.sat_disabled:
                self.stats.tt_tried += 1
                self.stats.sat_calls += 1
                t0 = clock()
                ok = trivial_truth_check(self.f, self.trail.literals(), self._ua_instance(), cfg.sat_conflict_budget)
                self.scheduler.record_sat_call(clock() - t0)
                if ok:
                    self.stats.tt_success += 1
                    cube, sid = self._gen_cube_from_trail("tt")
                    out = self._handle(cube, sid, CUBE)
                    return out if out is not None else True
        if cfg.enable_oracle and self.oracle is not None and self.scheduler.oracle_due(self.stats.decisions):
            self.scheduler.consume_oracle()
            self.stats.oracle_slots += 1
            self.stats.oracle_tried += 1
            self.stats.oracle_calls += 1
            t0 = clock()
            verdict = self.oracle(self.f, self.trail.literals()).verdict
            self.scheduler.record_oracle_call(clock() - t0)
            if verdict == "SAT":
                self.stats.oracle_success += 1
                cube, sid = self._gen_cube_from_trail("oracle")
                out = self._handle(cube, sid, CUBE)
                return out if out is not None else True
            if verdict == "UNSAT":
                self.stats.oracle_success += 1
                clause = Constraint.clause([-l for l in self.trail.literals()])
                self.stats.gen_cl_init += 1
                sid = self.log.add(GEN_CL_INIT, clause, witness=self._witness())
                out = self._handle(clause, sid, CLAUSE)
                return out if out is not None else True
        return None

    def _try_abs(self, clock):
        cfg = self.config.axioms
        handled = False
        if cfg.abs_probe:
            derived = []
            for v in sorted(self.f.variables()):
                if v in self.trail.assign:
                    continue
                for lit in (v, -v):
                    if lit in self.probe_cache or self.scheduler.sat_disabled:
                        continue
                    self.probe_cache.add(lit)
                    self.stats.abs_tried += 1
                    self.stats.sat_calls += 1
                    t0 = clock()
                    res = satcore.solve_assuming(self._ea_instance(), [lit], cfg.sat_conflict_budget)
                    self.scheduler.record_sat_call(clock() - t0)
                    if res is None or res.verdict != satcore.UNSAT:
                        continue
                    failed = minimize_failed_assumptions(
                        self._ea_instance(), set(res.failed_assumptions or ()), cfg.minimize_budget, cfg.sat_conflict_budget
                    )
                    witness = tuple(sorted(failed, key=abs))
                    clause = Constraint.clause([-l for l in witness])
                    self.stats.abs_success += 1
                    self.stats.abs_cl_init += 1
                    sid = self.log.add(ABS_CL_INIT, clause, witness=tuple(WitnessEntry(w) for w in witness))
                    self.abs_applications.append((witness, clause))
                    derived.append((clause, sid))
            for clause, sid in derived:
                if clause.is_empty():
                    return self._finish(UNSAT, sid)
                clause2, sid2 = self._reduce(clause, CLAUSE, sid)
                if clause2.is_empty():
                    return self._finish(UNSAT, sid2)
                self._store(clause2, sid2, CLAUSE)
                handled = True
            if handled:
                return True
        if self.scheduler.sat_disabled:
            return True if handled else None
        self.stats.abs_tried += 1
        self.stats.sat_calls += 1
        t0 = clock()
        result = axiom_abs_cl_init(
            self.f, self.trail.literals(), self._ea_instance(), cfg.minimize_budget, cfg.sat_conflict_budget
        )
        self.scheduler.record_sat_call(clock() - t0)
        if result is None:
            return True if handled else None
        clause, witness = result
        self.stats.abs_success += 1
        self.stats.abs_cl_init += 1
        sid = self.log.add(ABS_CL_INIT, clause, witness=tuple(WitnessEntry(w) for w in witness))
        self.abs_applications.append((witness, clause))
        if clause.is_empty():
            return self._finish(UNSAT, sid)
        out = self._handle(clause, sid, CLAUSE)
        return out if out is not None else True

    # -- top level -------------------------------------------------------------

    def _finish(self, verdict: str, final_sid: Optional[int]) -> SolveResult:
        proof = None
        if verdict in (SAT, UNSAT) and final_sid is not None and self.config.emit_proof:
            proof = self.log.extract(final_sid, self.f.num_vars())
        return SolveResult(
            verdict, proof, self.stats, list(self.learned_clauses), list(self.learned_cubes), list(self.abs_applications)
        )

    def run(self) -> SolveResult:
        t0 = time.monotonic()
        try:
            return self._run()
        finally:
            self.stats.wall_ms = (time.monotonic() - t0) * 1000.0

    def _run(self) -> SolveResult:
        for c in self.f.matrix:
            if c.is_empty():
                self.stats.cl_init += 1
                sid = self.log.add(CL_INIT, c)
                return self._finish(UNSAT, sid)
        if not self.f.matrix:
            self.stats.cu_init += 1
            sid = self.log.add(CU_INIT, Constraint.cube(()), witness=())
            return self._finish(SAT, sid)
        cfg = self.config
        while True:
            res = self._propagate()
            if res.outcome == qbcp.FALSIFIED:
                self.stats.conflicts += 1
                if cfg.max_conflicts is not None and self.stats.conflicts > cfg.max_conflicts:
                    return self._finish(UNKNOWN, None)
                out = self._handle(res.conflict, self._step_of(res.conflict), CLAUSE)
                if out is not None:
                    return out
                continue
            if res.outcome == qbcp.SATISFIED:
                self.stats.solutions += 1
                if cfg.max_conflicts is not None and self.stats.solutions > cfg.max_conflicts:
                    return self._finish(UNKNOWN, None)
                if res.trigger is None:
                    cube = Constraint.cube(self.trail.literals())
                    self.stats.cu_init += 1
                    sid = self.log.add(CU_INIT, cube, witness=self._witness())
                else:
                    cube = res.trigger
                    sid = self._step_of(cube)
                out = self._handle(cube, sid, CUBE)
                if out is not None:
                    return out
                continue
            # stable: axiom attempts before the next decision
            out = self._try_axioms()
            if isinstance(out, SolveResult):
                return out
            if out:
                continue
            if cfg.enable_restarts and self.stats.conflicts - self._conflicts_at_restart >= cfg.restart_base * _luby(
                self._restart_count + 1
            ):
                self._restart_count += 1
                self._conflicts_at_restart = self.stats.conflicts
                self.stats.restarts += 1
                self.trail.retract_to(0, self.phase)
                continue
            if cfg.max_decisions is not None and self.stats.decisions >= cfg.max_decisions:
                return self._finish(UNKNOWN, None)
            lit = self.pick_decision()
            if lit is None:
                raise RuntimeError("stable state with no open decision variable")
            self.stats.decisions += 1
            self.trail.append(lit, (DECISION, None))


def _luby(i: int) -> int:
    k = 1
    while (1 << (k + 1)) - 1 <= i:
        k += 1
    while (1 << k) - 1 != i:
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << (k + 1)) - 1 <= i:
            k += 1
    return 1 << (k - 1)


def solve(f: PCNF, config: Optional[SolverConfig] = None) -> SolveResult:
    """Solve a PCNF; verdict SAT iff the empty cube is derived, UNSAT iff
    the empty clause is derived, UNKNOWN on resource-limit abort."""
    return Solver(f, config).run()
