import numpy as np
import pytest

from conftest import random_polynomial
from fqsolve import (Polynomial, TrimmedPointSet, enumerate_points,
                     evaluate_trimmed, format_evaluation, interpolate_trimmed,
                     make_field, parse_evaluation)
from fqsolve import transform
from fqsolve.errors import DegreeTooHighError, SizeMismatchError
from fqsolve.mpoly import point_matrix


def _random_config(rng, size_cap=20000):
    while True:
        q = int(rng.choice([2, 3, 4, 5, 7, 8, 9]))
        n = int(rng.integers(1, 7))
        delta = int(rng.integers(0, min(8, n * (q - 1)) + 1))
        b = int(rng.integers(0, n + 1))
        if TrimmedPointSet(q, n, delta, b).size() <= size_cap:
            return q, n, delta, b


class TestEvaluate:
    def test_single_variable_over_f2(self):
        x = Polynomial.variable(make_field(2), 1, 0)
        assert evaluate_trimmed(x, 1, 0).values.tolist() == [0, 1]

    def test_affine_over_f3(self):
        p = Polynomial.from_terms(make_field(3), 2, [((0, 0), 1), ((1, 0), 1)])
        ev = evaluate_trimmed(p, 1, 0)
        assert ev.values.tolist() == [1, 1, 2]
        assert enumerate_points(ev.point_set) == [(0, 0), (0, 1), (1, 0)]

    def test_zero_polynomial(self):
        z = Polynomial.zero(make_field(5), 3)
        assert not evaluate_trimmed(z, 4, 2).values.any()

    def test_degree_too_high(self):
        p = Polynomial.from_terms(make_field(3), 2, [((2, 2), 1)])
        with pytest.raises(DegreeTooHighError):
            evaluate_trimmed(p, 3, 0)


class TestInterpolate:
    def test_constant(self):
        f = make_field(5)
        ps = TrimmedPointSet(5, 2, 3, 1)
        vals = np.full(ps.size(), 4, dtype=np.int64)
        got = interpolate_trimmed(transform.TrimmedEvaluation(f, ps, vals))
        assert got == Polynomial.constant(f, 2, 4)

    def test_affine_roundtrip_example(self):
        p = Polynomial.from_terms(make_field(3), 2, [((0, 0), 1), ((1, 0), 1)])
        assert interpolate_trimmed(evaluate_trimmed(p, 1, 0)) == p

    def test_zero_vector(self):
        f = make_field(3)
        ps = TrimmedPointSet(3, 2, 2, 0)
        vals = np.zeros(ps.size(), dtype=np.int64)
        assert interpolate_trimmed(transform.TrimmedEvaluation(f, ps, vals)).is_zero()

    def test_size_mismatch(self):
        f = make_field(3)
        ps = TrimmedPointSet(3, 2, 2, 0)
        with pytest.raises(SizeMismatchError):
            transform.TrimmedEvaluation(f, ps, np.zeros(3, dtype=np.int64))


class TestRoundtrip:
    def test_random_roundtrips(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            q, n, delta, b = _random_config(rng)
            p = random_polynomial(rng, q, n, delta)
            assert interpolate_trimmed(evaluate_trimmed(p, delta, b)) == p

    def test_matches_naive_evaluation(self):
        rng = np.random.default_rng(8)
        for _ in range(60):
            q, n, delta, b = _random_config(rng, size_cap=600)
            p = random_polynomial(rng, q, n, delta, max_terms=8)
            ev = evaluate_trimmed(p, delta, b)
            pts = enumerate_points(TrimmedPointSet(q, n, delta, b))
            assert ev.values.tolist() == [p.evaluate(pt) for pt in pts]

    def test_dense_solver_agrees(self):
        rng = np.random.default_rng(9)
        for _ in range(25):
            q, n, delta, b = _random_config(rng, size_cap=120)
            p = random_polynomial(rng, q, n, delta, max_terms=6)
            ev = evaluate_trimmed(p, delta, b)
            assert interpolate_trimmed(ev, method="dense") == \
                interpolate_trimmed(ev) == p

    def test_uniqueness_via_perturbation(self):
        rng = np.random.default_rng(10)
        for _ in range(25):
            q, n, delta, b = _random_config(rng, size_cap=2000)
            f = make_field(q)
            p = random_polynomial(rng, q, n, delta, max_terms=6)
            base = evaluate_trimmed(p, delta, b).values
            pts = point_matrix(q, n, delta, 0)
            mono = tuple(int(v) for v in pts[rng.integers(0, len(pts))])
            bump = Polynomial.from_terms(f, n, [(mono, int(rng.integers(1, q)))])
            other = p.add(bump)
            if other == p:
                continue
            assert (evaluate_trimmed(other, delta, b).values != base).any()


class TestOpCounting:
    def test_counter_grows_linearly_in_set_size(self):
        # fixed q and n, growing degree budget: multiply-accumulate count
        # stays within a 2x band of an affine fit in |T|
        q, n = 2, 12
        rng = np.random.default_rng(11)
        sizes, ops = [], []
        for delta in range(1, n * (q - 1) + 1):
            p = random_polynomial(rng, q, n, delta, max_terms=6)
            transform.reset_op_counter()
            evaluate_trimmed(p, delta, 0)
            sizes.append(TrimmedPointSet(q, n, delta, 0).size())
            ops.append(transform.FIELD_OPS)
        sizes = np.array(sizes, dtype=float)
        ops = np.array(ops, dtype=float)
        slope = (ops * sizes).sum() / (sizes * sizes).sum()
        ratio = ops / (slope * sizes)
        assert ratio.max() <= 2.0 and ratio.min() >= 0.5


class TestSerialization:
    def test_text_roundtrip(self):
        rng = np.random.default_rng(12)
        p = random_polynomial(rng, 3, 3, 4, max_terms=5)
        ev = evaluate_trimmed(p, 4, 1)
        text = format_evaluation(ev)
        assert text.splitlines()[0] == "evals 3 3 4 1"
        back = parse_evaluation(text)
        assert back.point_set == ev.point_set
        assert (back.values == ev.values).all()
        assert interpolate_trimmed(back) == p
