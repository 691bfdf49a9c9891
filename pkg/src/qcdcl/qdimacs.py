"""QDIMACS reading and writing.

Layout: header ``p cnf <vars> <clauses>``, quantifier lines ``e ... 0`` /
``a ... 0``, clause lines terminated by 0.  Consecutive same-quantifier
lines merge into one block.  Tautological clauses are dropped and duplicate
literals deduplicated at parse time; free matrix variables are an error.
Header clause-count mismatches are warnings only (common in the wild).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, List, Optional, Union

from .formula import CLAUSE, EXISTS, FORALL, PCNF, Constraint, Prefix, is_tautological


@dataclass
class ParseDiagnostics:
    line: int
    message: str

    def __str__(self):
        return "line %d: %s" % (self.line, self.message)


class QdimacsError(ValueError):
    """Malformed QDIMACS input, with a line-precise diagnostic."""

    def __init__(self, line: int, message: str):
        self.diagnostic = ParseDiagnostics(line, message)
        super().__init__(str(self.diagnostic))


def parse_qdimacs(source: Union[str, bytes, IO], warnings: Optional[List[ParseDiagnostics]] = None) -> PCNF:
    """Parse QDIMACS text (string, bytes, or readable stream) into a PCNF."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="replace")

    header = None  # (nvars, nclauses)
    blocks = []  # [(quantifier, [vars])]
    clauses = []
    quantified = set()
    pending: List[int] = []  # clause tokens carried across lines
    prefix_done = False

    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise QdimacsError(lineno, "duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise QdimacsError(lineno, "malformed header %r" % line)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise QdimacsError(lineno, "malformed header %r" % line)
            if header[0] < 0 or header[1] < 0:
                raise QdimacsError(lineno, "negative counts in header")
            continue
        if header is None:
            raise QdimacsError(lineno, "content before header")
        tok = line.split()
        if tok[0] in ("e", "a"):
            if prefix_done:
                raise QdimacsError(lineno, "quantifier line after clauses")
            if pending:
                raise QdimacsError(lineno, "quantifier line inside unterminated clause")
            if tok[-1] != "0":
                raise QdimacsError(lineno, "quantifier line not 0-terminated")
            try:
                vs = [int(t) for t in tok[1:-1]]
            except ValueError:
                raise QdimacsError(lineno, "bad token on quantifier line")
            if not vs:
                raise QdimacsError(lineno, "empty quantifier block")
            q = EXISTS if tok[0] == "e" else FORALL
            for v in vs:
                if v <= 0:
                    raise QdimacsError(lineno, "literal 0 or negative id on quantifier line")
                if v > header[0]:
                    raise QdimacsError(lineno, "variable %d exceeds header count" % v)
                if v in quantified:
                    raise QdimacsError(lineno, "variable %d quantified twice" % v)
                quantified.add(v)
            if blocks and blocks[-1][0] == q:
                blocks[-1][1].extend(vs)
            else:
                blocks.append((q, list(vs)))
            continue
        # clause line(s)
        prefix_done = True
        try:
            nums = [int(t) for t in line.split()]
        except ValueError:
            raise QdimacsError(lineno, "bad token on clause line")
        for n in nums:
            if n == 0:
                lits = pending
                pending = []
                for l in lits:
                    if abs(l) > header[0]:
                        raise QdimacsError(lineno, "variable %d exceeds header count" % abs(l))
                    if abs(l) not in quantified:
                        raise QdimacsError(lineno, "free variable %d" % abs(l))
                if not is_tautological(lits):
                    clauses.append(Constraint(CLAUSE, frozenset(lits)))
            else:
                pending.append(n)

    last = source.count("\n") + 1
    if header is None:
        raise QdimacsError(last, "missing header")
    if pending:
        raise QdimacsError(last, "unterminated clause at end of input")
    if warnings is not None and header[1] != len(clauses):
        warnings.append(ParseDiagnostics(last, "header announces %d clauses, parsed %d (after normalization)" % (header[1], len(clauses))))

    return PCNF(Prefix.from_blocks((q, tuple(vs)) for q, vs in blocks), tuple(clauses))


def write_qdimacs(f: PCNF) -> str:
    """Serialize a PCNF; ``parse_qdimacs(write_qdimacs(f))`` equals ``f``."""
    out = []
    nvars = f.num_vars()
    out.append("p cnf %d %d" % (nvars, len(f.matrix)))
    for q, vs in f.prefix.blocks:
        out.append("%s %s 0" % ("e" if q == EXISTS else "a", " ".join(str(v) for v in vs)))
    for c in f.matrix:
        out.append(" ".join(str(l) for l in c.sorted_literals()) + " 0")
    return "\n".join(out) + "\n"
