"""Proof traces for the extended calculus: emission log, text format,
an independent checker (plain, abstraction-extended, and QU-resolution
modes), and the translator from QU-resolution to the abstraction calculus.

Trace format (line oriented)::

    p qrgp <#vars> <#steps>
    <id> <rule> <C|U> <lit...> 0 <antecedent id...> 0 [a <token...> 0]

where the optional ``a`` section records the axiom witness assignment.
Witness tokens are literals with a reason suffix: ``d`` decision,
``p`` pure, ``u<id>`` unit in proof step <id>, ``um<idx>`` unit in matrix
clause <idx> (0-based), bare for plain (non-QCDCL) assignments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from . import brute, satcore
from .formula import CLAUSE, CUBE, PCNF, Constraint, apply_assignment
from .qbce import qbce_reduce
from .qbcp import UNIT_ST, constraint_status

RES = "res"
RED = "red"
CL_INIT = "cl-init"
CU_INIT = "cu-init"
GEN_CL_INIT = "gen-cl-init"
GEN_CU_INIT = "gen-cu-init"
ABS_CL_INIT = "abs-cl-init"
QURES = "qures"

RULES = (RES, RED, CL_INIT, CU_INIT, GEN_CL_INIT, GEN_CU_INIT, ABS_CL_INIT, QURES)

MODE_QRES = "qres"
MODE_QRES_ABS = "qres-abs"
MODE_QU_RES = "qu-res"

_MODE_RULES = {
    MODE_QRES: {RES, RED, CL_INIT, CU_INIT},
    MODE_QRES_ABS: {RES, RED, CL_INIT, CU_INIT, GEN_CL_INIT, GEN_CU_INIT, ABS_CL_INIT},
    MODE_QU_RES: {RES, RED, CL_INIT, CU_INIT, QURES},
}

# witness reason tags
W_PLAIN = None
W_DECISION = "d"
W_PURE = "p"
W_UNIT = "u"  # carries a ref: ("s", step id) or ("m", matrix index)


@dataclass(frozen=True)
class WitnessEntry:
    lit: int
    tag: Optional[str] = W_PLAIN
    ref: Optional[tuple] = None  # for W_UNIT


@dataclass
class ProofStep:
    sid: int
    rule: str
    constraint: Constraint
    antecedents: Tuple[int, ...] = ()
    witness: Optional[Tuple[WitnessEntry, ...]] = None


@dataclass
class Proof:
    nvars: int
    steps: List[ProofStep]
    final: int

    def step_map(self) -> Dict[int, ProofStep]:
        return {s.sid: s for s in self.steps}


@dataclass
class CheckResult:
    ok: bool
    verdict: Optional[str] = None  # SAT for a cube proof, UNSAT for a clause proof
    step: Optional[int] = None
    reason: Optional[str] = None

    def __bool__(self):
        return self.ok


class ProofLog:
    """Append-only derivation log used by the solver; trimmed at emission."""

    def __init__(self):
        self.steps: List[ProofStep] = []

    def add(self, rule, constraint, antecedents=(), witness=None) -> int:
        sid = len(self.steps) + 1
        self.steps.append(ProofStep(sid, rule, constraint, tuple(antecedents), witness))
        return sid

    def constraint_of(self, sid: int) -> Constraint:
        return self.steps[sid - 1].constraint

    def extract(self, final_sid: int, nvars: int) -> Proof:
        """Cone of influence of the final step, renumbered consecutively."""
        needed: Set[int] = set()
        stack = [final_sid]
        while stack:
            sid = stack.pop()
            if sid in needed:
                continue
            needed.add(sid)
            step = self.steps[sid - 1]
            stack.extend(step.antecedents)
            if step.witness:
                for w in step.witness:
                    if w.tag == W_UNIT and w.ref is not None and w.ref[0] == "s":
                        stack.append(w.ref[1])
        order = sorted(needed)
        remap = {old: i + 1 for i, old in enumerate(order)}
        out = []
        for old in order:
            s = self.steps[old - 1]
            witness = None
            if s.witness is not None:
                witness = tuple(
                    WitnessEntry(w.lit, w.tag, ("s", remap[w.ref[1]]) if (w.tag == W_UNIT and w.ref[0] == "s") else w.ref)
                    for w in s.witness
                )
            out.append(ProofStep(remap[old], s.rule, s.constraint, tuple(remap[a] for a in s.antecedents), witness))
        return Proof(nvars, out, remap[final_sid])


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"^(-?\d+)(?:(d|p)|u(m?)(\d+))?$")


def write_proof(proof: Proof) -> str:
    lines = ["p qrgp %d %d" % (proof.nvars, len(proof.steps))]
    for s in proof.steps:
        parts = [str(s.sid), s.rule, "C" if s.constraint.kind == CLAUSE else "U"]
        parts += [str(l) for l in s.constraint.sorted_literals()]
        parts.append("0")
        parts += [str(a) for a in s.antecedents]
        parts.append("0")
        if s.witness is not None:
            parts.append("a")
            for w in s.witness:
                tok = str(w.lit)
                if w.tag == W_DECISION:
                    tok += "d"
                elif w.tag == W_PURE:
                    tok += "p"
                elif w.tag == W_UNIT:
                    tok += "um%d" % w.ref[1] if w.ref[0] == "m" else "u%d" % w.ref[1]
                parts.append(tok)
            parts.append("0")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


class ProofParseError(ValueError):
    pass


def parse_proof(text: str) -> Proof:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("c")]
    if not lines or not lines[0].startswith("p qrgp"):
        raise ProofParseError("missing 'p qrgp' header")
    hdr = lines[0].split()
    if len(hdr) != 4:
        raise ProofParseError("malformed header")
    nvars = int(hdr[2])
    steps = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) < 4:
            raise ProofParseError("short step line: %r" % ln)
        sid = int(toks[0])
        rule = toks[1]
        if rule not in RULES:
            raise ProofParseError("unknown rule %r" % rule)
        kind = {"C": CLAUSE, "U": CUBE}.get(toks[2])
        if kind is None:
            raise ProofParseError("bad constraint kind %r" % toks[2])
        i = 3
        lits = []
        while i < len(toks) and toks[i] != "0":
            lits.append(int(toks[i]))
            i += 1
        if i >= len(toks):
            raise ProofParseError("unterminated literal section")
        i += 1
        ants = []
        while i < len(toks) and toks[i] != "0":
            ants.append(int(toks[i]))
            i += 1
        if i >= len(toks):
            raise ProofParseError("unterminated antecedent section")
        i += 1
        witness = None
        if i < len(toks):
            if toks[i] != "a":
                raise ProofParseError("unexpected token %r" % toks[i])
            i += 1
            entries = []
            while i < len(toks) and toks[i] != "0":
                m = _TOKEN_RE.match(toks[i])
                if not m or int(m.group(1)) == 0:
                    raise ProofParseError("bad witness token %r" % toks[i])
                lit = int(m.group(1))
                if m.group(2) == "d":
                    entries.append(WitnessEntry(lit, W_DECISION))
                elif m.group(2) == "p":
                    entries.append(WitnessEntry(lit, W_PURE))
                elif m.group(4) is not None:
                    ref = ("m", int(m.group(4))) if m.group(3) else ("s", int(m.group(4)))
                    entries.append(WitnessEntry(lit, W_UNIT, ref))
                else:
                    entries.append(WitnessEntry(lit))
                i += 1
            if i >= len(toks):
                raise ProofParseError("unterminated witness section")
            witness = tuple(entries)
        try:
            constraint = Constraint(kind, frozenset(lits))
        except ValueError as e:
            raise ProofParseError("step %d: %s" % (sid, e))
        steps.append(ProofStep(sid, rule, constraint, tuple(ants), witness))
    if not steps:
        raise ProofParseError("empty proof")
    final = next((s.sid for s in steps if s.constraint.is_empty()), steps[-1].sid)
    return Proof(nvars, steps, final)


# ---------------------------------------------------------------------------
# checking
# ---------------------------------------------------------------------------


class _Checker:
    def __init__(self, f: PCNF, mode: str, oracle_budget: int):
        self.f = f
        self.mode = mode
        self.oracle_budget = oracle_budget
        self.by_id: Dict[int, ProofStep] = {}
        self._ea: Optional[satcore.SatInstance] = None
        self.matrix_sets = [c.literals for c in f.matrix]

    def ea_instance(self) -> satcore.SatInstance:
        if self._ea is None:
            self._ea = satcore.SatInstance(c.sorted_literals() for c in self.f.matrix)
            self._ea.ensure_var(self.f.num_vars())
        return self._ea

    def lookup(self, ref: tuple, sid: int) -> Optional[Constraint]:
        space, key = ref
        if space == "m":
            if 0 <= key < len(self.f.matrix):
                return self.f.matrix[key]
            return None
        if space == "s":
            if key >= sid or key not in self.by_id:
                return None
            return self.by_id[key].constraint
        return None

    def check_qcdcl_witness(self, step: ProofStep) -> Optional[str]:
        """Replay the witness: decisions respect prefix order, the rest is
        unit/pure at its position.  Returns an error string or None."""
        prefix = self.f.prefix
        assign: Dict[int, int] = {}
        block_vars: Dict[int, Set[int]] = {}
        for v in prefix.variables():
            block_vars.setdefault(prefix.block_index(v), set()).add(v)
        for w in step.witness:
            v = abs(w.lit)
            if v not in prefix:
                return "witness literal %d outside prefix" % w.lit
            if v in assign:
                return "variable %d assigned twice in witness" % v
            if w.tag == W_DECISION:
                bi = prefix.block_index(v)
                for b in range(bi):
                    if any(u not in assign for u in block_vars[b]):
                        return "decision %d skips an unassigned earlier block" % w.lit
            elif w.tag == W_UNIT:
                constr = self.lookup(w.ref, step.sid)
                if constr is None:
                    return "witness unit reference %r unavailable" % (w.ref,)
                st, lit = constraint_status(prefix, constr, assign)
                if st != UNIT_ST or lit != w.lit:
                    return "literal %d is not unit in its recorded reason" % w.lit
            elif w.tag == W_PURE:
                if not self._is_pure(w.lit, assign):
                    return "literal %d is not pure in the residual matrix" % w.lit
            else:
                return "plain witness literal %d in a QCDCL witness" % w.lit
            assign[v] = w.lit
        return None

    def _is_pure(self, lit: int, assign: Dict[int, int]) -> bool:
        # existential l assigned for pure l; universal l assigned for pure ~l
        target = lit if self.f.prefix.is_existential(lit) else -lit
        occurs = False
        for c in self.f.matrix:
            if any(assign.get(abs(l)) == l for l in c.literals):
                continue
            for l in c.literals:
                if abs(l) in assign:
                    continue
                if l == -target:
                    return False
                if l == target:
                    occurs = True
        return occurs

    def verify_residual(self, lits: List[int], want_sat: bool) -> Optional[str]:
        residual = apply_assignment(self.f, lits)
        if residual is True:
            return None if want_sat else "residual is trivially satisfiable"
        if residual is False:
            return "residual is trivially falsified" if want_sat else None
        if want_sat:
            if qbce_reduce(residual, ()).sat:
                return None
        verdict = brute.evaluate(residual, budget=self.oracle_budget)
        if verdict == brute.UNKNOWN:
            return "oracle budget exhausted while verifying the witness residual"
        if (verdict == brute.SAT) != want_sat:
            return "witness residual is %s" % verdict
        return None

    def check_step(self, step: ProofStep) -> Optional[str]:
        if step.rule not in _MODE_RULES[self.mode]:
            return "rule %s not admissible in mode %s" % (step.rule, self.mode)
        for a in step.antecedents:
            if a >= step.sid or a not in self.by_id:
                return "antecedent %d not derived before step" % a
        c = step.constraint

        if step.rule in (RES, QURES):
            if len(step.antecedents) != 2:
                return "resolution needs two antecedents"
            c1 = self.by_id[step.antecedents[0]].constraint
            c2 = self.by_id[step.antecedents[1]].constraint
            if c1.kind != c.kind or c2.kind != c.kind:
                return "antecedent kind mismatch"
            if step.rule == QURES and c.kind != CLAUSE:
                return "qures applies to clauses only"
            pivots = {abs(l) for l in c1.literals if -l in c2.literals}
            if len(pivots) != 1:
                return "antecedents must clash on exactly one variable"
            p = pivots.pop()
            q = self.f.prefix.quantifier(p)
            if step.rule == RES:
                want = "e" if c.kind == CLAUSE else "a"
                if q != want:
                    return "resolution pivot %d has the wrong quantifier" % p
            else:
                if q != "a":
                    return "qures pivot %d must be universal" % p
            merged = (c1.literals | c2.literals) - {p, -p}
            if merged != c.literals:
                return "derived constraint is not the resolvent"
            return None

        if step.rule == RED:
            if len(step.antecedents) != 1:
                return "reduction needs one antecedent"
            parent = self.by_id[step.antecedents[0]].constraint
            if parent.kind != c.kind:
                return "antecedent kind mismatch"
            removed = parent.literals - c.literals
            if not removed or not c.literals <= parent.literals:
                return "derived constraint is not a reduction of the antecedent"
            prefix = self.f.prefix
            if c.kind == CLAUSE:
                anchors = [prefix.block_index(abs(l)) for l in c.literals if prefix.is_existential(l)]
                drop_ok = prefix.is_universal
            else:
                anchors = [prefix.block_index(abs(l)) for l in c.literals if prefix.is_universal(l)]
                drop_ok = prefix.is_existential
            bound = max(anchors) if anchors else -1
            for l in removed:
                if not drop_ok(l):
                    return "reduced literal %d has the wrong quantifier" % l
                if prefix.block_index(abs(l)) <= bound:
                    return "reduced literal %d is not trailing" % l
            return None

        if step.antecedents:
            return "axiom steps take no antecedents"

        if step.rule == CL_INIT:
            if c.kind != CLAUSE:
                return "cl-init derives clauses"
            if c.literals not in self.matrix_sets:
                return "clause is not in the matrix"
            return None

        if step.witness is None:
            return "axiom %s requires a witness assignment" % step.rule
        lits = [w.lit for w in step.witness]
        try:
            witness_set = Constraint(CUBE, frozenset(lits)).literals  # validates non-complementary
        except ValueError:
            return "witness contains complementary literals"
        if len(witness_set) != len(lits):
            return "witness repeats a literal"

        if step.rule == CU_INIT:
            if c.kind != CUBE or c.literals != frozenset(lits):
                return "cube must equal the witness assignment"
            err = self.check_qcdcl_witness(step)
            if err:
                return err
            if apply_assignment(self.f, lits) is not True:
                return "witness does not satisfy the matrix"
            return None

        if step.rule == GEN_CU_INIT:
            if c.kind != CUBE or c.literals != frozenset(lits):
                return "cube must equal the witness assignment"
            err = self.check_qcdcl_witness(step)
            if err:
                return err
            return self.verify_residual(lits, want_sat=True)

        if step.rule == GEN_CL_INIT:
            if c.kind != CLAUSE or c.literals != frozenset(-l for l in lits):
                return "clause must negate the witness assignment"
            err = self.check_qcdcl_witness(step)
            if err:
                return err
            return self.verify_residual(lits, want_sat=False)

        if step.rule == ABS_CL_INIT:
            if c.kind != CLAUSE or c.literals != frozenset(-l for l in lits):
                return "clause must negate the witness assignment"
            # any assignment is allowed here; only the existential abstraction counts
            res = satcore.solve_assuming(self.ea_instance(), sorted(lits, key=abs))
            if res is None:
                return "SAT budget exhausted while checking the abstraction"
            if res.verdict != satcore.UNSAT:
                return "existential abstraction is satisfiable under the witness"
            return None

        return "unhandled rule %s" % step.rule


def check(proof: Proof, f: PCNF, mode: str = MODE_QRES_ABS, oracle_budget: int = 2_000_000) -> CheckResult:
    """Verify every step of a trace against its rule's side conditions."""
    if mode not in _MODE_RULES:
        raise ValueError("unknown mode %r" % mode)
    chk = _Checker(f, mode, oracle_budget)
    last = 0
    for step in proof.steps:
        if step.sid <= last:
            return CheckResult(False, step=step.sid, reason="step ids must increase")
        last = step.sid
        err = chk.check_step(step)
        if err:
            return CheckResult(False, step=step.sid, reason=err)
        chk.by_id[step.sid] = step
    final = chk.by_id.get(proof.final)
    if final is None:
        return CheckResult(False, step=proof.final, reason="final step missing")
    if not final.constraint.is_empty():
        return CheckResult(False, step=proof.final, reason="final step does not derive the empty constraint")
    verdict = "UNSAT" if final.constraint.kind == CLAUSE else "SAT"
    return CheckResult(True, verdict=verdict)


def translate_qu_to_abs(proof: Proof, f: PCNF, oracle_budget: int = 2_000_000) -> Proof:
    """Map a QU-resolution trace to the abstraction calculus.

    Each universal-pivot resolution step becomes an abstraction axiom step
    whose witness negates the resolvent; everything else is copied.  Step
    count never grows.
    """
    res = check(proof, f, MODE_QU_RES, oracle_budget)
    if not res.ok:
        raise ValueError("input proof fails QU-resolution checking at step %s: %s" % (res.step, res.reason))
    out = []
    for s in proof.steps:
        if s.rule == QURES:
            witness = tuple(WitnessEntry(-l) for l in s.constraint.sorted_literals())
            out.append(ProofStep(s.sid, ABS_CL_INIT, s.constraint, (), witness))
        else:
            out.append(ProofStep(s.sid, s.rule, s.constraint, s.antecedents, s.witness))
    return Proof(proof.nvars, out, proof.final)
