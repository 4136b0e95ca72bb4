"""Parsimonious mapping reduction from k-SAT to polynomial systems.

Boolean variables are grouped into blocks of vars1 = ceil((2/delta) *
log2(q)) variables, each encoded by vars2 = ceil(vars1 / log2(q)) field
variables; both ceilings are computed with exact integer arithmetic.  A
block's tuple, read as a base-q number v (first coordinate most
significant), decodes to the bits of v mod 2^vars1; one interpolated
polynomial per bit position recovers each Boolean variable.  A clause
becomes the product over its literals of "literal is falsified": the bit
polynomial for a negative literal, one minus it for a positive literal,
so the product vanishes exactly on encodings of satisfying assignments.

In parsimonious mode two extra families pin the correspondence down to a
bijection: per-block range polynomials vanishing exactly when v < 2^vars1
(where the decoding is injective), and one unit constraint forcing each
padding bit to 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimacsFormatError
from .field import make_field
from .mpoly import Polynomial, PolySystem, TrimmedPointSet
from .transform import TrimmedEvaluation, interpolate_trimmed


@dataclass
class Cnf:
    n_vars: int
    clauses: list[list[int]]

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    @property
    def width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)


def parse_dimacs(text: str) -> Cnf:
    """Standard DIMACS CNF: 'p cnf <n> <m>' header, 0-terminated clauses,
    'c' comment lines."""
    header = None
    tokens: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise DimacsFormatError("duplicate header")
            m = re.fullmatch(r"p\s+cnf\s+(\d+)\s+(\d+)", line)
            if not m:
                raise DimacsFormatError(f"malformed header: {line!r}")
            header = (int(m.group(1)), int(m.group(2)))
            continue
        if header is None:
            raise DimacsFormatError("clause before header")
        for tok in line.split():
            try:
                tokens.append(int(tok))
            except ValueError as exc:
                raise DimacsFormatError(f"bad literal {tok!r}") from exc
    if header is None:
        raise DimacsFormatError("missing 'p cnf' header")
    n_vars, n_clauses = header
    clauses: list[list[int]] = []
    cur: list[int] = []
    for lit in tokens:
        if lit == 0:
            if not cur:
                raise DimacsFormatError("empty clause")
            clauses.append(cur)
            cur = []
            continue
        if not 1 <= abs(lit) <= n_vars:
            raise DimacsFormatError(f"literal {lit} out of range")
        cur.append(lit)
    if cur:
        raise DimacsFormatError("missing clause terminator")
    if len(clauses) != n_clauses:
        raise DimacsFormatError(
            f"header declares {n_clauses} clauses, found {len(clauses)}")
    return Cnf(n_vars, clauses)


def _ceil_exact_vars1(q: int, delta: Fraction) -> int:
    """Smallest v with v >= (2/delta) * log2(q): v*a*log2(2) >= 2*b*log2(q)
    for delta = a/b, i.e. 2^(v*a) >= q^(2*b)."""
    a, b = delta.numerator, delta.denominator
    target = q ** (2 * b)
    v = 1
    while 2 ** (v * a) < target:
        v += 1
    return v


def _ceil_exact_vars2(q: int, vars1: int) -> int:
    """Smallest v2 with q^v2 >= 2^vars1."""
    v2 = 1
    while q ** v2 < 2 ** vars1:
        v2 += 1
    return v2


@dataclass
class ReductionPlan:
    q: int
    delta: Fraction
    k: int
    vars1: int
    vars2: int
    blocks: int
    parsimonious: bool

    @property
    def padded_vars(self) -> int:
        return self.blocks * self.vars1

    @property
    def out_vars(self) -> int:
        return self.blocks * self.vars2

    @property
    def degree_bound(self) -> int:
        return self.k * self.vars2 * (self.q - 1)


def make_plan(n_vars: int, k: int, q: int, delta, parsimonious: bool) -> ReductionPlan:
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if n_vars < 1:
        raise ValueError("formula must have at least one variable")
    make_field(q)  # validates that q is a supported prime power
    vars1 = _ceil_exact_vars1(q, delta)
    vars2 = _ceil_exact_vars2(q, vars1)
    blocks = -(-n_vars // vars1)
    return ReductionPlan(q, delta, max(k, 1), vars1, vars2, blocks, parsimonious)


def dec_table(plan: ReductionPlan) -> np.ndarray:
    """dec over the whole block grid: row v holds the vars1 bits of
    v mod 2^vars1, where v counts the canonical block enumeration.
    Column j is Boolean position j+1 inside the block (bit j of v)."""
    count = plan.q ** plan.vars2
    v = np.arange(count, dtype=np.int64) % (1 << plan.vars1)
    return np.stack([(v >> j) & 1 for j in range(plan.vars1)], axis=1)


def _interpolate_block(field, plan: ReductionPlan, values: np.ndarray) -> Polynomial:
    """Interpolate a function given on the whole vars2-grid."""
    ps = TrimmedPointSet(plan.q, plan.vars2, plan.vars2 * (plan.q - 1),
                         plan.vars2)
    ev = TrimmedEvaluation(field, ps, np.asarray(values, dtype=np.int64))
    return interpolate_trimmed(ev)


def reduce_cnf(cnf: Cnf, q: int, delta, parsimonious: bool = False) -> PolySystem:
    """Map a CNF to an equisatisfiable polynomial system over GF(q); with
    the parsimonious flag the number of common roots equals the number of
    satisfying assignments exactly."""
    plan = make_plan(cnf.n_vars, cnf.width, q, delta, parsimonious)
    field = make_field(q)
    dec = dec_table(plan)

    bit_polys = [_interpolate_block(field, plan, dec[:, j])
                 for j in range(plan.vars1)]
    one = Polynomial.constant(field, plan.vars2, 1)

    def literal_poly(lit: int) -> tuple[int, Polynomial]:
        """(block index, vars2-variate polynomial vanishing iff lit holds)."""
        var = abs(lit) - 1
        block, pos = divmod(var, plan.vars1)
        bit = bit_polys[pos]
        return block, (one.sub(bit) if lit > 0 else bit)

    def embed(block: int, poly: Polynomial) -> Polynomial:
        base = block * plan.vars2
        return poly.embed(plan.out_vars, list(range(base, base + plan.vars2)))

    polys = []
    for clause in cnf.clauses:
        per_block: dict[int, Polynomial] = {}
        for lit in clause:
            block, lp = literal_poly(lit)
            cur = per_block.get(block)
            per_block[block] = lp if cur is None else cur.mul(lp)
        acc = None
        for block in sorted(per_block):
            lifted = embed(block, per_block[block])
            acc = lifted if acc is None else acc.mul(lifted)
        polys.append(acc)

    if parsimonious:
        # unit constraints forcing every padding bit to 0
        for var in range(cnf.n_vars, plan.padded_vars):
            block, pos = divmod(var, plan.vars1)
            polys.append(embed(block, bit_polys[pos]))
        # range constraints: vanish exactly when the block value is below
        # 2^vars1, where the decoding is a bijection
        over = (np.arange(plan.q ** plan.vars2, dtype=np.int64)
                >= (1 << plan.vars1)).astype(np.int64)
        bound_poly = _interpolate_block(field, plan, over)
        for block in range(plan.blocks):
            polys.append(embed(block, bound_poly))

    return PolySystem(field, plan.out_vars, polys, plan.degree_bound)
