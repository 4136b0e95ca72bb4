"""Shared generators for the test suite."""

from __future__ import annotations

import itertools

from fqsolve import Cnf, Polynomial, PolySystem, make_field
from fqsolve.mpoly import point_matrix


def random_polynomial(rng, q, n, delta, max_terms=10):
    """Uniform-ish sparse polynomial of total degree <= delta."""
    f = make_field(q)
    pts = point_matrix(q, n, min(delta, n * (q - 1)), 0)
    k = int(rng.integers(0, min(max_terms, len(pts)) + 1))
    take = rng.choice(len(pts), size=k, replace=False) if k else []
    pairs = [(tuple(int(v) for v in pts[i]), int(rng.integers(1, q)))
             for i in take]
    return Polynomial.from_terms(f, n, pairs)


def random_system(rng, q, n, m, d, min_terms=2, max_terms=7):
    f = make_field(q)
    pts = point_matrix(q, n, min(d, n * (q - 1)), 0)
    polys = []
    for _ in range(m):
        k = int(rng.integers(min_terms, max_terms + 1))
        take = rng.integers(0, len(pts), size=k)
        pairs = [(tuple(int(v) for v in pts[i]), int(rng.integers(1, q)))
                 for i in take]
        polys.append(Polynomial.from_terms(f, n, pairs))
    return PolySystem(f, n, polys, d)


def random_cnf(rng, n, m, width=3):
    clauses = []
    for _ in range(m):
        vs = rng.choice(n, size=min(width, n), replace=False) + 1
        clauses.append([int(v) if rng.integers(2) else -int(v) for v in vs])
    return Cnf(n, clauses)


def brute_sat_count(cnf: Cnf) -> int:
    count = 0
    for bits in itertools.product((0, 1), repeat=cnf.n_vars):
        if all(any((bits[abs(l) - 1] == 1) == (l > 0) for l in cl)
               for cl in cnf.clauses):
            count += 1
    return count


def full_grid(q, n):
    return itertools.product(range(q), repeat=n)
