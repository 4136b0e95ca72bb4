"""Trimmed multipoint evaluation and interpolation over GF(q).

A polynomial of total degree at most D in n variables is determined by
its values on T(n-b, D) x GF(q)^b.  Both directions work axis by axis
through the Newton basis over the element enumeration 0, 1, ..., q-1:

  evaluation    = (monomial -> Newton on every trimmed axis), then
                  (Newton -> values on trimmed axes, monomial -> values
                   on grid axes);
  interpolation = the exact reverse.

Newton-to-values is lower triangular and monomial-to-Newton preserves the
total-degree filtration, so every one-dimensional slice of the trimmed
set closes under both passes and the work per axis is one small
triangular matrix per slice.  Total cost is O(n * |T| * q^b) field
operations (constants depending on q); FIELD_OPS accumulates the exact
multiply-accumulate count for scaling measurements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegreeTooHighError, SizeMismatchError
from .field import FieldSpec
from .mpoly import Polynomial, TrimmedPointSet, point_matrix

FIELD_OPS = 0


def reset_op_counter() -> None:
    global FIELD_OPS
    FIELD_OPS = 0


@dataclass
class TrimmedEvaluation:
    """Values of a degree-bounded polynomial in canonical point order."""

    field: FieldSpec
    point_set: TrimmedPointSet
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.point_set.size():
            raise SizeMismatchError(
                f"{len(self.values)} values for a point set of size "
                f"{self.point_set.size()}")


# ---------------------------------------------------------------------------
# cached per-(q, n, delta, b) slice structure
# ---------------------------------------------------------------------------

class _PointData:
    __slots__ = ("points", "keys", "strides", "groups")

    def __init__(self, q: int, n: int, delta: int, b: int):
        pts = point_matrix(q, n, delta, b)
        self.points = pts
        self.strides = np.array([q ** (n - 1 - i) for i in range(n)],
                                dtype=np.int64)
        self.keys = pts @ self.strides  # ascending, since pts is lex sorted
        self.groups = []
        for axis in range(n):
            rest = self.keys - pts[:, axis] * self.strides[axis]
            order = np.lexsort((pts[:, axis], rest))
            rest_sorted = rest[order]
            boundaries = np.flatnonzero(np.diff(rest_sorted)) + 1
            starts = np.concatenate(([0], boundaries))
            ends = np.concatenate((boundaries, [len(order)]))
            lengths = ends - starts
            by_len: dict[int, np.ndarray] = {}
            for ln in np.unique(lengths):
                sel = starts[lengths == ln]
                idx = sel[:, None] + np.arange(ln)[None, :]
                by_len[int(ln)] = order[idx]
            self.groups.append(by_len)


@lru_cache(maxsize=512)
def _point_data(q: int, n: int, delta: int, b: int) -> _PointData:
    return _PointData(q, n, delta, b)


def _effective_delta(q: int, n: int, delta: int, b: int) -> int:
    return min(delta, (n - b) * (q - 1))


@lru_cache(maxsize=512)
def _subset_positions(q: int, n: int, delta_small: int, delta_big: int,
                      b: int) -> np.ndarray:
    """Row positions of the smaller point set inside the bigger one."""
    small = _point_data(q, n, delta_small, b)
    big = _point_data(q, n, delta_big, b)
    pos = np.searchsorted(big.keys, small.keys)
    return pos


# ---------------------------------------------------------------------------
# per-field univariate conversion matrices
# ---------------------------------------------------------------------------

def _tri_inv(field: FieldSpec, mat: np.ndarray, lower: bool) -> np.ndarray:
    """Inverse of a triangular matrix over the field, by substitution."""
    q = mat.shape[0]
    inv = np.zeros_like(mat)
    order = range(q) if lower else range(q - 1, -1, -1)
    for j in order:
        row = np.zeros(q, dtype=np.int64)
        row[j] = 1
        rng = range(j) if lower else range(j + 1, q)
        for i in rng:
            c = int(mat[j, i])
            if c:
                row = field.vsub(row, field.vmul(c, inv[i]))
        d = int(mat[j, j])
        if d != 1:
            row = field.vmul(field.inv(d), row)
        inv[j] = row
    return inv


_MATS: dict[tuple[int, tuple[int, ...]], dict[str, np.ndarray]] = {}


def _matrices(field: FieldSpec) -> dict[str, np.ndarray]:
    key = (field.q, field.irreducible)
    mats = _MATS.get(key)
    if mats is not None:
        return mats
    q = field.q
    # Vandermonde over the index enumeration and the Newton-basis frames
    w = np.zeros((q, q), dtype=np.int64)
    for j in range(q):
        for e in range(q):
            w[j, e] = field.pow(j, e)
    newton = np.zeros((q, q), dtype=np.int64)  # newton[j, i] = N_i(sigma_j)
    col = np.ones(q, dtype=np.int64)
    for i in range(q):
        newton[:, i] = col
        if i + 1 < q:
            col = field.vmul(col, field.vsub(np.arange(q, dtype=np.int64), i))
    ntom = np.zeros((q, q), dtype=np.int64)  # ntom[e, i] = coeff of x^e in N_i
    poly = [1]
    for i in range(q):
        for e, c in enumerate(poly):
            ntom[e, i] = c
        if i + 1 < q:
            nxt = [0] + poly
            for e, c in enumerate(poly):
                nxt[e] = field.sub(nxt[e], field.mul(c, i))
            poly = nxt
    mton = _tri_inv(field, ntom, lower=False)
    newton_inv = _tri_inv(field, newton, lower=True)
    winv = field.apply_rows(newton_inv.T, ntom).T  # ntom @ newton_inv
    mats = {"W": w, "Winv": winv, "VN": newton, "VNinv": newton_inv,
            "NtoM": ntom, "MtoN": mton}
    _MATS[key] = mats
    return mats


_COMPILED: dict[tuple, object] = {}


def _compiled_block(field: FieldSpec, name: str, ln: int):
    key = (field.q, field.irreducible, name, ln)
    fn = _COMPILED.get(key)
    if fn is None:
        fn = field.compile_matrix(_matrices(field)[name][:ln, :ln])
        _COMPILED[key] = fn
    return fn


def _apply_axis(field: FieldSpec, arr: np.ndarray,
                groups: dict[int, np.ndarray], name: str) -> None:
    global FIELD_OPS
    for ln, idx in groups.items():
        arr[idx] = _compiled_block(field, name, ln)(arr[idx])
        FIELD_OPS += idx.shape[0] * ln * ln


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def evaluate_trimmed(poly: Polynomial, delta: int, b: int) -> TrimmedEvaluation:
    """Values of poly (total degree <= delta) on T(n-b, delta) x GF(q)^b."""
    field = poly.field
    q = field.q
    n = poly.n
    if not 0 <= b <= n:
        raise ValueError("need 0 <= b <= n")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if poly.degree() > delta:
        raise DegreeTooHighError(
            f"degree {poly.degree()} exceeds bound {delta}")
    deff = _effective_delta(q, n, delta, b)
    pd = _point_data(q, n, deff, b)
    arr = np.zeros(len(pd.keys), dtype=np.int64)
    if poly.num_terms():
        exps, coeffs = poly.packed_arrays()
        pos = np.searchsorted(pd.keys, exps @ pd.strides)
        arr[pos] = coeffs
    for axis in range(n - b):
        _apply_axis(field, arr, pd.groups[axis], "MtoN")
    for axis in range(n):
        _apply_axis(field, arr, pd.groups[axis],
                    "VN" if axis < n - b else "W")
    return TrimmedEvaluation(field, TrimmedPointSet(q, n, delta, b), arr)


def interpolate_trimmed(ev: TrimmedEvaluation, delta: int | None = None,
                        b: int | None = None,
                        method: str = "newton") -> Polynomial:
    """The unique polynomial of total degree <= delta (per-variable degree
    <= q-1) matching the evaluation vector."""
    ps = ev.point_set
    if delta is not None and delta != ps.delta:
        raise SizeMismatchError(f"delta {delta} != point set delta {ps.delta}")
    if b is not None and b != ps.b:
        raise SizeMismatchError(f"b {b} != point set b {ps.b}")
    if len(ev.values) != ps.size():
        raise SizeMismatchError("evaluation vector does not match point set")
    if method == "dense":
        return _dense_interpolate(ev)
    if method != "newton":
        raise ValueError(f"unknown method {method!r}")
    field = ev.field
    q, n = ps.q, ps.n
    deff = _effective_delta(q, n, ps.delta, ps.b)
    pd = _point_data(q, n, deff, ps.b)
    arr = np.array(ev.values, dtype=np.int64)
    for axis in range(n):
        _apply_axis(field, arr, pd.groups[axis],
                    "VNinv" if axis < n - ps.b else "Winv")
    for axis in range(n - ps.b):
        _apply_axis(field, arr, pd.groups[axis], "NtoM")
    nz = np.flatnonzero(arr)
    return Polynomial.from_packed_arrays(field, n, pd.points[nz], arr[nz])


def _dense_interpolate(ev: TrimmedEvaluation) -> Polynomial:
    """Independent O(|T|^2..^3) witness: solve the Vandermonde-style linear
    system by Gaussian elimination over the field.  Test oracle only."""
    field = ev.field
    ps = ev.point_set
    q, n = ps.q, ps.n
    deff = _effective_delta(q, n, ps.delta, ps.b)
    pts = point_matrix(q, n, deff, ps.b)
    # coefficient support mirrors the point set: the first n-b exponents sum
    # to at most delta, the trailing b exponents are unconstrained
    monos = point_matrix(q, n, deff, ps.b)
    npts, nmono = len(pts), len(monos)
    pw = np.zeros((q, q), dtype=np.int64)
    for x in range(q):
        for e in range(q):
            pw[x, e] = field.pow(x, e)
    a = np.ones((npts, nmono), dtype=np.int64)
    for var in range(n):
        a = field.vmul(a, pw[pts[:, var][:, None], monos[:, var][None, :]])
    rhs = np.array(ev.values, dtype=np.int64)
    # elimination
    a = a.copy()
    piv_rows: list[int] = []
    piv_cols: list[int] = []
    row = 0
    for col in range(nmono):
        sel = None
        for r in range(row, npts):
            if a[r, col]:
                sel = r
                break
        if sel is None:
            continue
        if sel != row:
            a[[row, sel]] = a[[sel, row]]
            rhs[[row, sel]] = rhs[[sel, row]]
        inv = field.inv(int(a[row, col]))
        a[row] = field.vmul(inv, a[row])
        rhs[row] = field.mul(inv, int(rhs[row]))
        for r in range(npts):
            if r != row and a[r, col]:
                c = int(a[r, col])
                a[r] = field.vsub(a[r], field.vmul(c, a[row]))
                rhs[r] = field.sub(int(rhs[r]), field.mul(c, int(rhs[row])))
        piv_rows.append(row)
        piv_cols.append(col)
        row += 1
    for r in range(row, npts):
        if rhs[r]:
            raise ValueError("evaluation vector is not consistent with the "
                             "degree bound")
    sol = np.zeros(nmono, dtype=np.int64)
    for r, c in zip(piv_rows, piv_cols):
        sol[c] = rhs[r]
    pairs = [(tuple(int(v) for v in monos[i]), int(sol[i]))
             for i in np.flatnonzero(sol)]
    return Polynomial.from_terms(field, n, pairs)


def evaluation_subset(values: np.ndarray, q: int, n: int, delta_small: int,
                      delta_big: int, b: int) -> np.ndarray:
    """Restrict values on T(n-b, delta_big) x grid to the delta_small set."""
    ds = _effective_delta(q, n, delta_small, b)
    dbig = _effective_delta(q, n, delta_big, b)
    if ds == dbig:
        return values
    return values[_subset_positions(q, n, ds, dbig, b)]


# ---------------------------------------------------------------------------
# text serialization: "evals <q> <n> <delta> <b>" then one value per line
# ---------------------------------------------------------------------------

def format_evaluation(ev: TrimmedEvaluation) -> str:
    ps = ev.point_set
    head = f"evals {ps.q} {ps.n} {ps.delta} {ps.b}"
    return "\n".join([head] + [str(int(v)) for v in ev.values]) + "\n"


def parse_evaluation(text: str) -> TrimmedEvaluation:
    from .field import make_field
    rows = [ln.strip() for ln in text.splitlines()
            if ln.strip() and not ln.strip().startswith("#")]
    if not rows or not rows[0].startswith("evals"):
        raise SizeMismatchError("expected header 'evals <q> <n> <delta> <b>'")
    head = rows[0].split()
    if len(head) != 5:
        raise SizeMismatchError("malformed evals header")
    q, n, delta, b = (int(x) for x in head[1:])
    values = np.array([int(x) for x in rows[1:]], dtype=np.int64)
    return TrimmedEvaluation(make_field(q), TrimmedPointSet(q, n, delta, b),
                             values)
