"""The randomized full/partial-sum solver.

Deciding whether a system has a common root reduces to computing the
field sum Z of the indicator prod(1 - P_i^(q-1)) over the full grid:
random affine equations isolate a single solution with probability
Omega(1/n), in which case Z = 1.  Z itself is computed through partial
sum polynomials: Z_beta sums the indicator over the last beta variables
and has total degree at most (min(m*d, n) - beta)*(q-1), so it is
recoverable from its values on a trimmed point set.  The recursion
shrinks beta by ceil(lambda*n) per level, replaces the system by
beta'+2 random combinations per repetition, corrects the per-point
errors with plurality votes over t = ceil(96*n*ln q) repetitions, sums
over the freed suffix grid and re-interpolates.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidParamsError
from .mpoly import Polynomial, PolySystem, TrimmedPointSet
from .randomized import RngStream, razborov_smolensky, valiant_vazirani
from .transform import (TrimmedEvaluation, evaluate_trimmed,
                        evaluation_subset, interpolate_trimmed)


@dataclass
class SolverParams:
    """Tunables of the sum algorithms.

    kappa fixes the initial split beta = floor(kappa*n) and lambda the
    per-level decrement ceil(lambda*n); both are exact rationals with
    0 < lambda <= kappa < 1/(2d-1).  Left unset they default to
    kappa = 0.9/(2d-1) and lambda = kappa/2.  t_override replaces the
    default repetition count t = ceil(96*n*ln q); outer_reps defaults to
    ceil(9*n) isolation trials.
    """

    kappa: Fraction | None = None
    lam: Fraction | None = None
    t_override: int | None = None
    outer_reps: int | None = None
    seed: int = 0

    def resolve(self, n: int, d: int) -> tuple[Fraction, Fraction]:
        if d < 1 or n < 1:
            raise InvalidParamsError("need n >= 1 and d >= 1")
        limit = Fraction(1, 2 * d - 1)
        kappa = self.kappa if self.kappa is not None else Fraction(9, 10) * limit
        lam = self.lam if self.lam is not None else kappa / 2
        if not 0 < lam <= kappa < limit:
            raise InvalidParamsError(
                f"need 0 < lambda <= kappa < 1/(2d-1); got lambda={lam}, "
                f"kappa={kappa}, d={d}")
        if self.t_override is not None and self.t_override < 1:
            raise InvalidParamsError("t_override must be positive")
        if self.outer_reps is not None and self.outer_reps < 1:
            raise InvalidParamsError("outer_reps must be positive")
        return kappa, lam

    def repetitions(self, n: int, q: int) -> int:
        if self.t_override is not None:
            return self.t_override
        return math.ceil(96 * n * math.log(q))


def zdegree(m: int, beta: int, n: int, d: int, q: int) -> int:
    """Degree bound (min(m*d, n) - beta) * (q - 1) on the partial-sum
    polynomial of an m-polynomial degree-d system."""
    if m < 1 or d < 1:
        raise ValueError("need m >= 1 and d >= 1")
    if not 0 <= beta <= n:
        raise ValueError("need 0 <= beta <= n")
    return (min(m * d, n) - beta) * (q - 1)


def plurality(values) -> int:
    """Most frequent value; ties broken by smallest element index."""
    if len(values) == 0:
        raise InvalidParamsError("plurality of an empty list")
    counts = Counter(int(v) for v in values)
    return min(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]


def _plurality_columns(vals: np.ndarray, q: int) -> np.ndarray:
    """Column-wise plurality of a (t, N) value matrix; argmax returns the
    first (smallest) index on ties."""
    counts = np.empty((q, vals.shape[1]), dtype=np.int64)
    for v in range(q):
        counts[v] = (vals == v).sum(axis=0)
    return np.argmax(counts, axis=0).astype(np.int64)


def _map_ordered(fn, count: int, threads: int) -> list:
    if threads <= 1 or count <= 1:
        return [fn(j) for j in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, range(count)))


def _evaluate_on_set(poly: Polynomial, delta: int, b: int) -> np.ndarray:
    """Values of poly on T(n-b, delta) x grid even when deg(poly) > delta:
    evaluate at the actual degree and restrict."""
    d = poly.degree()
    if d <= delta:
        return evaluate_trimmed(poly, delta, b).values
    full = evaluate_trimmed(poly, d, b).values
    return evaluation_subset(full, poly.field.q, poly.n, delta, d, b)


def partial_sum(system: PolySystem, beta: int, params: SolverParams,
                rng: RngStream, threads: int = 1) -> Polynomial:
    """The partial-sum polynomial over the first n - beta variables;
    equals the exact one except with probability at most q^-n."""
    field = system.field
    q, n = field.q, system.n
    if not 0 <= beta <= n:
        raise InvalidParamsError(f"beta {beta} out of range 0..{n}")
    _, lam = params.resolve(n, system.d)
    m = len(system.polys)
    if m == 0:
        # empty product: indicator is constantly 1, partial sums are q^beta
        if beta == 0:
            return Polynomial.constant(field, n, 1)
        return Polynomial.constant(field, n - beta, q ** beta % field.p)
    lam_step = math.ceil(lam * n)
    delta = max(0, zdegree(m, beta, n, system.d, q))

    if beta < lam_step or n <= 3:
        evals = np.stack([_evaluate_on_set(p, delta, beta)
                          for p in system.polys])
        indicator = np.all(evals == 0, axis=0).astype(np.int64)
        rows = indicator.reshape(-1, q ** beta)
        zvals = rows.sum(axis=1) % field.p
        ev = TrimmedEvaluation(field, TrimmedPointSet(q, n - beta, delta, 0),
                               zvals)
        return interpolate_trimmed(ev)

    beta_sub = beta - lam_step
    mu = beta_sub + 2
    t = params.repetitions(n, q)
    suffix = beta - beta_sub

    def one_repetition(j: int) -> np.ndarray:
        combos = razborov_smolensky(system, mu, rng.child(2 * j))
        sub = system.with_polys(combos)
        zsub = partial_sum(sub, beta_sub, params, rng.child(2 * j + 1))
        return _evaluate_on_set(zsub, delta, suffix)

    votes = np.stack(_map_ordered(one_repetition, t, threads))
    agreed = _plurality_columns(votes, q)
    rows = agreed.reshape(-1, q ** suffix)
    zvals = field.vsum_axis(rows, 1)
    ev = TrimmedEvaluation(field, TrimmedPointSet(q, n - beta, delta, 0),
                           zvals)
    return interpolate_trimmed(ev)


def full_sum(system: PolySystem, params: SolverParams, rng: RngStream,
             threads: int = 1) -> int:
    """The field sum of the indicator over the whole grid, correct except
    with probability at most q^-n."""
    field = system.field
    n = system.n
    kappa, _ = params.resolve(n, system.d)
    beta = math.floor(kappa * n)
    zpoly = partial_sum(system, beta, params, rng.child(0), threads)
    nv = n - beta
    if nv == 0:
        return zpoly.evaluate(())
    values = evaluate_trimmed(zpoly, max(0, zpoly.degree()), nv).values
    return field.vsum(values)


def solve_pes(system: PolySystem, params: SolverParams,
              threads: int = 1) -> bool:
    """True iff the system has a common root (bounded-error randomized).

    Runs outer_reps independent trials, each appending random affine
    equations and computing the full sum; answers SAT iff some trial's
    sum is nonzero.  Unsatisfiable systems stay unsatisfiable under
    appended equations, so a false SAT requires a partial-sum failure.
    """
    n = system.n
    params.resolve(n, system.d)
    reps = params.outer_reps if params.outer_reps is not None else math.ceil(9 * n)
    root = RngStream(params.seed)
    for r in range(reps):
        trial = root.child(r)
        extra = valiant_vazirani(system.field, n, trial.child(0))
        augmented = system.with_polys(system.polys + tuple(extra))
        if full_sum(augmented, params, trial.child(1), threads) != 0:
            return True
    return False
