"""Scalar arithmetic, parsing, and sparse polynomial matrices."""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cotangent_lsa.errors import DivisionByZero, NonSquareMatrix, ParseError
from cotangent_lsa.exactnum import (
    MultiPoly,
    format_scalar,
    nonzero_point,
    parse_scalar,
    poly_mat_mul,
    poly_matrix_power_trace,
    power_traces,
    scalar_arith,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**4)


class TestScalar:
    def test_add(self):
        assert scalar_arith(F(1, 2), F(1, 3), "add") == F(5, 6)

    def test_sub_self_is_zero(self):
        assert scalar_arith(F(3, 2), F(3, 2), "sub") == F(0)

    def test_div_by_zero(self):
        with pytest.raises(DivisionByZero):
            scalar_arith(F(2), F(0), "div")

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            scalar_arith(F(1), F(1), "pow")

    @pytest.mark.parametrize("text,value", [
        ("3/2", F(3, 2)),
        ("-7/3", F(-7, 3)),
        ("5", F(5)),
        ("-2", F(-2)),
        ("4/6", F(2, 3)),  # reduced on parse
    ])
    def test_parse(self, text, value):
        assert parse_scalar(text) == value

    @pytest.mark.parametrize("bad", ["1.5", "", "1/0", "a", "1/-2", "1e3", "1/02"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_scalar(bad)

    def test_format_canonical(self):
        assert format_scalar(F(4, 6)) == "2/3"
        assert format_scalar(F(-8, 4)) == "-2"
        assert format_scalar(F(0)) == "0"

    @given(rationals, rationals, rationals)
    def test_field_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == 0
        if a != 0:
            assert a * (1 / a) == 1


class TestMultiPoly:
    def test_zero_terms_dropped(self):
        p = MultiPoly(2, {(1, 0): F(0), (0, 1): F(2)})
        assert p.terms == {(0, 1): F(2)}

    def test_zero_poly_is_empty_map(self):
        x = MultiPoly.variable(2, 0)
        assert (x - x).is_zero
        assert (x - x).terms == {}

    def test_arithmetic(self):
        x = MultiPoly.variable(2, 0)
        y = MultiPoly.variable(2, 1)
        p = (x + y) * (x - y)
        assert p == x * x - y * y

    def test_eq_with_scalar(self):
        assert MultiPoly.const(3, F(5, 2)) == F(5, 2)
        assert MultiPoly(3) == 0

    def test_evaluate(self):
        x = MultiPoly.variable(2, 0)
        y = MultiPoly.variable(2, 1)
        p = 2 * x * x * y - y + 3
        assert p.evaluate((F(1, 2), F(4))) == 2 * F(1, 4) * 4 - 4 + 3

    def test_degree_bound_of_products(self):
        x = MultiPoly.variable(1, 0)
        p = x + 1
        q = p
        for _ in range(4):
            q = q * p
        assert q.degree_in(0) == 5

    def test_substitute(self):
        x = MultiPoly.variable(2, 0)
        y = MultiPoly.variable(2, 1)
        p = x * y + y
        assert p.substitute(0, F(2)) == 3 * y


class TestPowerTrace:
    def test_scalar_square(self):
        x = MultiPoly.variable(1, 0)
        assert poly_matrix_power_trace([[x]], 2) == x * x

    def test_strictly_triangular(self):
        x = MultiPoly.variable(2, 0)
        zero = MultiPoly(2)
        assert poly_matrix_power_trace([[zero, x], [zero, zero]], 2) == 0

    def test_offdiagonal_pair(self):
        x = MultiPoly.variable(2, 0)
        y = MultiPoly.variable(2, 1)
        zero = MultiPoly(2)
        assert poly_matrix_power_trace([[zero, x], [y, zero]], 2) == 2 * x * y

    def test_rejects_non_square(self):
        x = MultiPoly.variable(1, 0)
        with pytest.raises(NonSquareMatrix):
            poly_matrix_power_trace([[x, x]], 2)

    def test_rejects_bad_power(self):
        x = MultiPoly.variable(1, 0)
        with pytest.raises(ValueError):
            poly_matrix_power_trace([[x]], 0)

    def _random_matrix(self, rng, size, nvars):
        entries = []
        for _ in range(size):
            row = []
            for _ in range(size):
                p = MultiPoly.const(nvars, rng.randint(-2, 2))
                if rng.random() < 0.6:
                    p = p + rng.randint(-2, 2) * MultiPoly.variable(nvars, rng.randrange(nvars))
                row.append(p)
            entries.append(row)
        return entries

    def test_matches_binary_exponentiation(self):
        # independent path: square-and-multiply instead of the linear loop
        import random

        rng = random.Random(7)
        for _ in range(10):
            size = rng.randint(1, 3)
            M = self._random_matrix(rng, size, 2)
            k = rng.randint(1, 5)
            acc = None
            base = M
            e = k
            while e:
                if e & 1:
                    acc = base if acc is None else poly_mat_mul(acc, base)
                e >>= 1
                if e:
                    base = poly_mat_mul(base, base)
            expected = MultiPoly(2)
            for i in range(size):
                expected = expected + acc[i][i]
            assert poly_matrix_power_trace(M, k) == expected

    def test_commutes_with_evaluation(self):
        # independent path: evaluate first, then take scalar matrix powers
        import random

        rng = random.Random(11)
        for _ in range(10):
            size = rng.randint(1, 3)
            M = self._random_matrix(rng, size, 2)
            k = rng.randint(1, 5)
            point = (F(rng.randint(-3, 3)), F(rng.randint(-3, 3), 2))
            scalar_rows = [[e.evaluate(point) for e in row] for row in M]
            power = scalar_rows
            for _ in range(k - 1):
                power = [
                    [sum(power[i][m] * scalar_rows[m][j] for m in range(size))
                     for j in range(size)]
                    for i in range(size)
                ]
            expected = sum(power[i][i] for i in range(size))
            assert poly_matrix_power_trace(M, k).evaluate(point) == expected

    def test_power_traces_match_single_calls(self):
        x = MultiPoly.variable(2, 0)
        y = MultiPoly.variable(2, 1)
        zero = MultiPoly(2)
        M = [[x, y], [y, zero]]
        traces = power_traces(M, 4)
        for k, t in enumerate(traces, start=1):
            assert t == poly_matrix_power_trace(M, k)


class TestNonzeroPoint:
    def test_linear(self):
        x = MultiPoly.variable(1, 0)
        assert nonzero_point(x) == (F(1),)

    def test_vanishing_at_small_grid_points(self):
        x = MultiPoly.variable(2, 0)
        y = MultiPoly.variable(2, 1)
        p = x * (x - 1) * y
        pt = p.evaluate(nonzero_point(p))
        assert pt != 0

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError):
            nonzero_point(MultiPoly(3))
