import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import full_grid, random_polynomial
from fqsolve import (Polynomial, PolySystem, TrimmedPointSet, enumerate_points,
                     eval_indicator, ext_binom_cum, format_pes, make_field,
                     parse_pes, symbolic_coefficient)
from fqsolve.errors import PesFormatError


def P(q, n, pairs):
    return Polynomial.from_terms(make_field(q), n, pairs)


class TestArithmetic:
    def test_square_of_variable_over_f2(self):
        x = Polynomial.variable(make_field(2), 1, 0)
        assert x.mul(x) == x  # a^q = a

    def test_exponent_reduction_over_f3(self):
        x2 = P(3, 1, [((2,), 1)])
        assert x2.mul(x2) == x2  # 4 -> 2
        for v in range(3):
            f = make_field(3)
            assert f.pow(v, 4) == f.pow(v, 2)

    def test_add_identity(self):
        p = P(5, 2, [((1, 2), 3)])
        assert p.add(Polynomial.zero(make_field(5), 2)) == p

    def test_mismatch_raises(self):
        with pytest.raises(ValueError):
            P(3, 2, []).add(P(3, 3, []))
        with pytest.raises(ValueError):
            P(3, 2, []).mul(P(5, 2, []))

    @pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (5, 2), (4, 2)])
    def test_mul_preserves_function(self, q, n):
        rng = np.random.default_rng(q * 10 + n)
        for _ in range(10):
            a = random_polynomial(rng, q, n, n * (q - 1), max_terms=6)
            b = random_polynomial(rng, q, n, n * (q - 1), max_terms=6)
            prod = a.mul(b)
            f = make_field(q)
            for pt in full_grid(q, n):
                assert prod.evaluate(pt) == f.mul(a.evaluate(pt), b.evaluate(pt))

    def test_power_matches_repeated_mul(self):
        rng = np.random.default_rng(0)
        p = random_polynomial(rng, 3, 2, 4, max_terms=4)
        assert p.power(3) == p.mul(p).mul(p)
        assert p.power(0) == Polynomial.constant(make_field(3), 2, 1)

    def test_scale(self):
        p = P(5, 1, [((1,), 2)])
        assert p.scale(3).terms() == [((1,), 1)]  # 2*3 = 6 = 1 mod 5
        assert p.scale(0).is_zero()


class TestEvaluate:
    def test_examples(self):
        assert P(3, 1, [((0,), 1), ((1,), 1)]).evaluate((2,)) == 0
        assert P(5, 2, [((1, 1), 1)]).evaluate((3, 4)) == 2
        assert Polynomial.zero(make_field(7), 3).evaluate((1, 2, 3)) == 0

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            P(3, 2, []).evaluate((1,))


class TestModPSumLemma:
    @pytest.mark.parametrize("q,n", [(2, 3), (3, 3), (4, 2), (5, 2)])
    def test_monomial_grid_sums(self, q, n):
        f = make_field(q)
        for exps in full_grid(q, n):
            acc = 0
            for pt in full_grid(q, n):
                term = 1
                for x, e in zip(pt, exps):
                    term = f.mul(term, f.pow(x, e))
                acc = f.add(acc, term)
            if all(e == q - 1 for e in exps):
                assert acc == f.pow(f.from_int(q - 1), n)
            else:
                assert acc == 0


class TestSymbolicCoefficient:
    def test_examples(self):
        p = P(2, 2, [((1, 1), 1)])
        assert symbolic_coefficient(p, 1).terms() == [((1,), 1)]
        p = P(3, 2, [((1, 0), 1)])
        assert symbolic_coefficient(p, 1).is_zero()

    @pytest.mark.parametrize("q,n,n2", [(2, 3, 1), (3, 3, 2), (5, 2, 1), (4, 2, 2)])
    def test_trailing_sum_identity(self, q, n, n2):
        rng = np.random.default_rng(q * 100 + n * 10 + n2)
        f = make_field(q)
        mult = f.pow(f.from_int(q - 1), n2)
        for _ in range(20):
            p = random_polynomial(rng, q, n, n * (q - 1), max_terms=8)
            p1 = symbolic_coefficient(p, n2)
            for x in full_grid(q, n - n2):
                acc = 0
                for y in full_grid(q, n2):
                    acc = f.add(acc, p.evaluate(x + y))
                assert f.mul(mult, p1.evaluate(x)) == acc


class TestPointSets:
    def test_example_enumerations(self):
        assert enumerate_points(TrimmedPointSet(3, 2, 1, 0)) == \
            [(0, 0), (0, 1), (1, 0)]
        assert enumerate_points(TrimmedPointSet(2, 1, 0, 1)) == [(0,), (1,)]
        assert enumerate_points(TrimmedPointSet(4, 1, 3, 0)) == \
            [(0,), (1,), (2,), (3,)]

    @pytest.mark.parametrize("q,n,delta,b",
                             [(2, 4, 2, 1), (3, 3, 3, 0), (4, 2, 3, 2),
                              (5, 2, 4, 1), (3, 4, 5, 2)])
    def test_against_filtered_grid(self, q, n, delta, b):
        ps = TrimmedPointSet(q, n, delta, b)
        pts = enumerate_points(ps)
        expected = [p for p in full_grid(q, n) if sum(p[:n - b]) <= delta]
        assert pts == expected  # same order: itertools.product is lex
        assert len(pts) == ps.size() == ext_binom_cum(n - b, delta, q) * q ** b
        assert all(pts[i] < pts[i + 1] for i in range(len(pts) - 1))
        assert all(ps.contains(p) for p in pts)


class TestIndicator:
    def test_examples(self):
        f2 = make_field(2)
        x1 = Polynomial.variable(f2, 1, 0)
        s = PolySystem(f2, 1, [x1], 1)
        assert eval_indicator(s, (0,)) == 1
        assert eval_indicator(s, (1,)) == 0
        f3 = make_field(3)
        y = Polynomial.variable(f3, 1, 0)
        s = PolySystem(f3, 1, [y, y.add(Polynomial.constant(f3, 1, 1))], 1)
        for x in range(3):
            assert eval_indicator(s, (x,)) == 0

    def test_empty_system_is_one(self):
        s = PolySystem(make_field(3), 2, [], 1)
        assert eval_indicator(s, (1, 2)) == 1


class TestPesFormat:
    def test_roundtrip(self):
        rng = np.random.default_rng(5)
        f = make_field(4)
        polys = [random_polynomial(rng, 4, 3, 5, max_terms=6) for _ in range(3)]
        s = PolySystem(f, 3, polys, max(max(p.degree() for p in polys), 1))
        text = format_pes(s)
        back = parse_pes(text)
        assert [p.terms() for p in back.polys] == [p.terms() for p in s.polys]
        assert format_pes(back) == text

    def test_comments_and_blanks(self):
        text = "# header comment\n\npes 2 2 1\n# poly follows\npoly 1\n1 1 0\n"
        s = parse_pes(text)
        assert len(s.polys) == 1
        assert s.polys[0].terms() == [((1, 0), 1)]

    def test_zero_polynomial_roundtrips(self):
        s = parse_pes("pes 3 1 1\npoly 0\n")
        assert s.polys[0].is_zero()

    @pytest.mark.parametrize("text", [
        "",
        "pes 2 2\npoly 0\n",
        "pes 6 2 1\npoly 0\n",              # not a prime power
        "pes 2 2 1\npoly 1\n0 1 0\n",       # zero coefficient
        "pes 2 2 1\npoly 1\n1 2 0\n",       # exponent out of range
        "pes 2 2 1\npoly 2\n1 1 0\n",       # missing term line
        "pes 2 2 1\npoly 1\n1 1\n",         # wrong arity
        "pes 2 2 1\npoly 1\n1 1 0\n1 0 1\n",  # trailing content
    ])
    def test_rejects_malformed(self, text):
        from fqsolve.errors import NotPrimePowerError
        with pytest.raises((PesFormatError, NotPrimePowerError)):
            parse_pes(text)


class TestSystemValidation:
    def test_degree_bound_enforced(self):
        f = make_field(2)
        p = P(2, 2, [((1, 1), 1)])
        with pytest.raises(ValueError):
            PolySystem(f, 2, [p], 1)

    def test_embed(self):
        p = P(3, 2, [((1, 2), 2)])
        e = p.embed(4, [3, 1])
        assert e.terms() == [((0, 2, 0, 1), 2)]


@given(st.integers(0, 3 ** 6 - 1))
@settings(max_examples=60, deadline=None)
def test_pack_unpack_roundtrip(seed):
    q, n = 4, 3
    rng = np.random.default_rng(seed)
    exps = tuple(int(v) for v in rng.integers(0, q, size=n))
    key = Polynomial._pack(exps, q)
    assert Polynomial._unpack(key, n, q) == exps
