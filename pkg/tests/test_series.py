import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lrcexp.errors import ContextMismatch, NoContraction
from lrcexp.galois import make_field
from lrcexp.series import LaurentSeries, series_arith, series_inv, solve_fixed_point, valuation

FIELDS = {"F2": make_field(2), "F4": make_field(2, 2), "F5": make_field(5), "F9": make_field(3, 2)}


@st.composite
def series(draw, ctx, nonzero=False):
    v = draw(st.integers(min_value=-4, max_value=4))
    n = draw(st.integers(min_value=1, max_value=10))
    coeffs = draw(st.lists(st.integers(min_value=0, max_value=ctx.q - 1), min_size=n, max_size=n))
    if nonzero:
        coeffs[0] = draw(st.integers(min_value=1, max_value=ctx.q - 1))
    return LaurentSeries.make(ctx, v, coeffs)


def _naive_mul(a, b):
    """Coefficientwise Cauchy product over the windows, with the pessimistic precision rule."""
    ctx = a.ctx
    prec = min(a.prec + b.v, b.prec + a.v)
    lo = a.v + b.v
    out = [0] * max(prec - lo, 0)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            k = i + j
            if k < len(out):
                out[k] = ctx.add(out[k], ctx.mul(x, y))
    return LaurentSeries.make(ctx, lo, out, prec)


def test_examples_f5():
    F = FIELDS["F5"]
    a = LaurentSeries.make(F, 0, [1, 1], 6)
    b = LaurentSeries.make(F, 0, [1, 4], 6)
    assert (a * b).window(0, 6) == [1, 0, 4, 0, 0, 0]
    z = a + (-a)
    assert z.is_zero_window and z.v == z.prec == 6
    assert valuation(z) == math.inf


def test_examples_f2():
    F = FIELDS["F2"]
    s = LaurentSeries.make(F, 1, [1, 0, 1], 6)
    t_inv = LaurentSeries.make(F, -1, [1], 10)
    prod = s * t_inv
    assert prod.v == 0 and prod.window(0, 3) == [1, 0, 1]


def test_precision_rules():
    F = FIELDS["F5"]
    a = LaurentSeries.make(F, 2, [1, 2, 3])  # prec 5
    b = LaurentSeries.make(F, -1, [4, 1])  # prec 1
    assert (a + b).prec == 1
    assert (a * b).prec == min(5 - 1, 1 + 2)


def test_canonical_form_and_dump():
    F = FIELDS["F5"]
    s = LaurentSeries.make(F, -2, [0, 0, 3, 1], 4)
    assert s.v == 0 and s.coeffs[0] == 3 and s.prec == 4
    assert LaurentSeries.load(F, s.dump()) == s
    assert LaurentSeries.zero(F, 3).dump() == "3;3;"


def test_context_mismatch():
    a = LaurentSeries.constant(FIELDS["F5"], 1, 3)
    b = LaurentSeries.constant(FIELDS["F4"], 1, 3)
    with pytest.raises(ContextMismatch):
        series_arith("add", a, b)


@pytest.mark.parametrize("name", list(FIELDS))
def test_properties(name):
    ctx = FIELDS[name]

    @given(series(ctx, nonzero=True), series(ctx, nonzero=True))
    def check(a, b):
        prod = a * b
        assert prod == _naive_mul(a, b)
        if not prod.is_zero_window:
            assert valuation(prod) == valuation(a) + valuation(b)
        total = a + b
        if not total.is_zero_window:
            assert valuation(total) >= min(a.v, b.v)
            if a.v != b.v and min(a.v, b.v) < total.prec:
                assert valuation(total) == min(a.v, b.v)
        assert (a - b) + b == a.truncate(min(a.prec, b.prec))

    check()


@pytest.mark.parametrize("name", list(FIELDS))
def test_inverse_round_trip(name):
    ctx = FIELDS[name]

    @given(series(ctx, nonzero=True), st.integers(min_value=1, max_value=12))
    def check(a, rel):
        inv = series_inv(a, -a.v + rel)
        prod = a * inv
        one = LaurentSeries.constant(ctx, 1, prod.prec)
        assert prod.prec >= min(rel, len(a.coeffs))
        assert (prod - one).is_zero_window

    check()


def test_fixed_point_residual():
    # u = 1 + t^3 u^(-1): a unit solving the Hermitian q0 = 2 relation
    F = FIELDS["F4"]
    t3 = LaurentSeries.monomial(F, 1, 3, 40)

    def fmap(u):
        return LaurentSeries.constant(F, 1, 40) + t3 * u.inv(40)

    u = solve_fixed_point(fmap, LaurentSeries.constant(F, 1, 40), 30)
    assert u.prec == 30
    residual = fmap(u).truncate(30) - u
    assert residual.is_zero_window and residual.prec == 30


def test_fixed_point_rejects_non_contraction():
    F = FIELDS["F5"]
    two = LaurentSeries.constant(F, 2, 10)
    with pytest.raises(NoContraction):
        solve_fixed_point(lambda u: u + two, LaurentSeries.constant(F, 0, 10), 10)


def test_power_and_shift():
    F = FIELDS["F9"]
    s = LaurentSeries.make(F, 1, [1, 2], 8)
    assert s**3 == s * s * s
    assert s.shift(-1).v == 0
    assert s**-1 == series_inv(s, (s**-1).prec)
