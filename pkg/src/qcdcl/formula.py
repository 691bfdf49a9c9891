"""Core PCNF data types: literals, prefixes, constraints, assignments.

Literals are nonzero signed integers in the DIMACS convention: the variable
is ``abs(lit)`` and the sign is the polarity.  Constraints (clauses and
cubes) store deduplicated literal sets and reject complementary pairs,
since every calculus rule forbids tautological constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

EXISTS = "e"
FORALL = "a"

BEFORE = "before"
SAME_BLOCK = "same_block"
AFTER = "after"

CLAUSE = "clause"
CUBE = "cube"


def negate(lit: int) -> int:
    """Negation of a literal; an involution."""
    if lit == 0:
        raise ValueError("0 is not a literal")
    return -lit


def var_of(lit: int) -> int:
    """Variable id of a literal (strips polarity)."""
    if lit == 0:
        raise ValueError("0 is not a literal")
    return abs(lit)


class FormulaError(ValueError):
    """Raised when a formula object would violate a structural invariant."""


@dataclass(frozen=True)
class Prefix:
    """Quantifier prefix: ordered blocks of (quantifier, variable tuple).

    Adjacent blocks alternate quantifiers and variable sets are disjoint.
    """

    blocks: tuple

    def __post_init__(self):
        seen = set()
        prev_q = None
        norm = []
        for q, block_vars in self.blocks:
            if q not in (EXISTS, FORALL):
                raise FormulaError("unknown quantifier %r" % (q,))
            vs = tuple(block_vars)
            if not vs:
                raise FormulaError("empty quantifier block")
            for v in vs:
                if not isinstance(v, int) or v <= 0:
                    raise FormulaError("variable ids must be positive ints, got %r" % (v,))
                if v in seen:
                    raise FormulaError("variable %d quantified twice" % v)
                seen.add(v)
            if q == prev_q:
                raise FormulaError("adjacent blocks share quantifier %r" % q)
            prev_q = q
            norm.append((q, vs))
        object.__setattr__(self, "blocks", tuple(norm))
        object.__setattr__(self, "_block_of", {v: i for i, (_, vs) in enumerate(norm) for v in vs})

    @staticmethod
    def from_blocks(blocks: Iterable) -> "Prefix":
        """Build a prefix, merging adjacent same-quantifier blocks."""
        merged = []
        for q, vs in blocks:
            vs = tuple(vs)
            if not vs:
                continue
            if merged and merged[-1][0] == q:
                merged[-1] = (q, merged[-1][1] + vs)
            else:
                merged.append((q, vs))
        return Prefix(tuple(merged))

    def variables(self) -> set:
        return set(self._block_of)

    def __contains__(self, var: int) -> bool:
        return var in self._block_of

    def block_index(self, var: int) -> int:
        try:
            return self._block_of[var]
        except KeyError:
            raise FormulaError("variable %d not in prefix" % var)

    def quantifier(self, lit_or_var: int) -> str:
        return self.blocks[self.block_index(abs(lit_or_var))][0]

    def is_existential(self, lit_or_var: int) -> bool:
        return self.quantifier(lit_or_var) == EXISTS

    def is_universal(self, lit_or_var: int) -> bool:
        return self.quantifier(lit_or_var) == FORALL


def prefix_order(prefix: Prefix, l1: int, l2: int) -> str:
    """Relative prefix position of two literals: before / same_block / after."""
    i = prefix.block_index(var_of(l1))
    j = prefix.block_index(var_of(l2))
    if i < j:
        return BEFORE
    if i == j:
        return SAME_BLOCK
    return AFTER


@dataclass(frozen=True)
class Constraint:
    """A clause or cube over a deduplicated, non-tautological literal set."""

    kind: str
    literals: frozenset

    def __post_init__(self):
        if self.kind not in (CLAUSE, CUBE):
            raise FormulaError("constraint kind must be clause or cube")
        lits = frozenset(self.literals)
        for l in lits:
            if not isinstance(l, int) or l == 0:
                raise FormulaError("bad literal %r" % (l,))
            if -l in lits:
                raise FormulaError("complementary pair {%d, %d} in %s" % (l, -l, self.kind))
        object.__setattr__(self, "literals", lits)

    @staticmethod
    def clause(lits: Iterable[int]) -> "Constraint":
        return Constraint(CLAUSE, frozenset(lits))

    @staticmethod
    def cube(lits: Iterable[int]) -> "Constraint":
        return Constraint(CUBE, frozenset(lits))

    def sorted_literals(self) -> list:
        return sorted(self.literals, key=lambda l: (abs(l), l < 0))

    def variables(self) -> set:
        return {abs(l) for l in self.literals}

    def is_empty(self) -> bool:
        return not self.literals

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __repr__(self):
        body = " ".join(str(l) for l in self.sorted_literals()) or "<empty>"
        return "%s(%s)" % (self.kind, body)


def is_tautological(lits: Iterable[int]) -> bool:
    s = set(lits)
    return any(-l in s for l in s)


@dataclass(frozen=True)
class PCNF:
    """A prenex CNF: quantifier prefix plus clause matrix."""

    prefix: Prefix
    matrix: tuple

    def __post_init__(self):
        clauses = tuple(self.matrix)
        declared = self.prefix.variables() if self.prefix.blocks else set()
        for c in clauses:
            if not isinstance(c, Constraint) or c.kind != CLAUSE:
                raise FormulaError("matrix entries must be clause constraints")
            for v in c.variables():
                if v not in declared:
                    raise FormulaError("free variable %d in matrix" % v)
        object.__setattr__(self, "matrix", clauses)

    def variables(self) -> set:
        return self.prefix.variables() if self.prefix.blocks else set()

    def num_vars(self) -> int:
        vs = self.variables()
        return max(vs) if vs else 0

    def __eq__(self, other):
        if not isinstance(other, PCNF):
            return NotImplemented
        return (
            self.prefix.blocks == other.prefix.blocks
            and sorted(c.literals for c in self.matrix) == sorted(c.literals for c in other.matrix)
        )

    def __hash__(self):
        return hash((self.prefix.blocks, frozenset(c.literals for c in self.matrix)))

    def __repr__(self):
        return "PCNF(%d blocks, %d clauses)" % (len(self.prefix.blocks), len(self.matrix))


def check_assignment(lits: Iterable[int]) -> set:
    """Validate an assignment literal set: at most one polarity per variable."""
    out = set()
    for l in lits:
        if l == 0:
            raise FormulaError("0 is not a literal")
        if -l in out:
            raise FormulaError("complementary assignment on variable %d" % abs(l))
        out.add(l)
    return out


def apply_assignment(f: PCNF, assignment: Iterable[int]) -> Union[PCNF, bool]:
    """Residual of ``f`` under a partial assignment.

    Clauses with a true literal are dropped, false literals are deleted,
    assigned variables leave the prefix.  Returns True when the residual
    matrix is empty, False when some clause becomes empty.
    """
    amap = check_assignment(assignment)
    fell_empty = False
    new_matrix = []
    seen_clauses = set()
    for c in f.matrix:
        if any(l in amap for l in c.literals):
            continue
        kept = frozenset(l for l in c.literals if -l not in amap)
        if not kept:
            fell_empty = True
            break
        if kept not in seen_clauses:  # CNF as a clause set
            seen_clauses.add(kept)
            new_matrix.append(Constraint(CLAUSE, kept))
    if fell_empty:
        return False
    if not new_matrix:
        return True
    assigned_vars = {abs(l) for l in amap}
    new_blocks = []
    for q, vs in f.prefix.blocks:
        kept_vs = tuple(v for v in vs if v not in assigned_vars)
        if kept_vs:
            new_blocks.append((q, kept_vs))
    return PCNF(Prefix.from_blocks(new_blocks), tuple(new_matrix))
