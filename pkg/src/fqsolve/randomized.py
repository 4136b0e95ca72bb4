"""Seeded randomness and the two randomized primitives.

Streams are counter-based: a stream is identified by (seed, path) and
children extend the path, so any two runs with the same seed see exactly
the same draws no matter how the work is scheduled.  The two consumers
are random linear combinations of a system's polynomials (complete
always, sound except with probability q^-mu per point) and random affine
equations for solution isolation.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import FieldSpec
from .mpoly import Polynomial, PolySystem


@dataclass
class RngStream:
    """A reproducible random stream addressed by (seed, path)."""

    seed: int
    path: tuple[int, ...] = ()
    _gen: np.random.Generator | None = dc_field(
        default=None, repr=False, compare=False)

    def child(self, i: int) -> "RngStream":
        return RngStream(self.seed, self.path + (i,))

    def _key(self) -> int:
        h = hashlib.sha256()
        h.update(b"fqsolve-stream")
        h.update(self.seed.to_bytes(8, "little", signed=False))
        for p in self.path:
            h.update(p.to_bytes(8, "little", signed=True))
        return int.from_bytes(h.digest()[:16], "little")

    def generator(self) -> np.random.Generator:
        if self._gen is None:
            self._gen = np.random.Generator(np.random.Philox(key=self._key()))
        return self._gen

    def integers(self, low: int, high: int, size=None) -> np.ndarray | int:
        """Uniform integers in [low, high); draws advance this stream."""
        out = self.generator().integers(low, high, size=size)
        return out if size is not None else int(out)


def razborov_smolensky(system: PolySystem, mu: int,
                       rng: RngStream) -> list[Polynomial]:
    """mu random linear combinations of the system's polynomials.

    Every common root of the system is a root of every combination; at a
    point where some polynomial is nonzero, all mu combinations vanish
    with probability exactly q^-mu.
    """
    if mu < 1:
        raise ValueError("mu must be positive")
    f = system.field
    m = len(system.polys)
    rho = rng.integers(0, f.q, size=(mu, m))
    out = []
    for i in range(mu):
        acc = Polynomial.zero(f, system.n)
        for j in range(m):
            c = int(rho[i, j])
            if c:
                acc = acc.add(system.polys[j].scale(c))
        out.append(acc)
    return out


def valiant_vazirani(fieldspec: FieldSpec, n: int,
                     rng: RngStream) -> list[Polynomial]:
    """A uniformly random number ell in {0..n} of uniformly random affine
    polynomials a.X + b.  Appending them to a system never adds solutions;
    if the system is satisfiable, the augmented system has exactly one
    solution with probability Omega(1/n)."""
    if n < 1:
        raise ValueError("n must be positive")
    ell = rng.integers(0, n + 1)
    coeffs = rng.integers(0, fieldspec.q, size=(ell, n + 1))
    polys = []
    for r in range(ell):
        pairs = []
        for i in range(n):
            if coeffs[r, i]:
                exps = tuple(1 if j == i else 0 for j in range(n))
                pairs.append((exps, int(coeffs[r, i])))
        if coeffs[r, n]:
            pairs.append((tuple([0] * n), int(coeffs[r, n])))
        polys.append(Polynomial.from_terms(fieldspec, n, pairs))
    return polys
