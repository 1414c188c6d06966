from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lrcexp import bounds as B
from lrcexp.errors import BadParams, DomainError, NotASquare, NotOddPower

import oracles

# frozen after agreeing with the scipy oracles in oracles.py
LP_4096_63_03 = 0.6889292439586
GV_2_11_01 = 0.5243262503365949


def test_entropy():
    assert B.entropy_q(2, 0.5) == pytest.approx(1.0, abs=1e-15)
    assert B.entropy_q(7, 0) == 0
    for q in [2, 3, 16, 4096]:
        assert B.entropy_q(q, 1 - 1 / q) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DomainError):
        B.entropy_q(2, 1.5)


def test_singleton_plotkin():
    assert B.singleton_rate(1, 0) == Fr(1, 2)
    assert B.plotkin_rate(2, 1, Fr(1, 2)) == 0


@given(st.sampled_from([2, 3, 4, 16, 256, 4096]), st.integers(1, 70), st.floats(0.001, 0.999))
def test_bound_ordering(q, r, frac):
    delta = frac * (1 - 1 / q)
    top = r / (r + 1)
    assert B.plotkin_rate(q, r, delta) <= B.singleton_rate(r, delta)
    assert B.gv_bound(q, r, delta) <= top + 1e-12
    assert B.lp_bound(q, r, delta) <= top + 1e-12


def test_lp_regression_and_oracle():
    assert B.lp_bound(4096, 63, 0.3) == pytest.approx(LP_4096_63_03, abs=1e-9)
    for q, r, d in [(2, 11, 0.1), (16, 3, 0.4), (4096, 64, 0.5), (3, 5, 0.2)]:
        assert B.lp_bound(q, r, d) == pytest.approx(oracles.lp_value(q, r, d), abs=1e-9)


def test_lp_endpoint():
    # tau = 1/(r+1) kills the second term
    tau = np.array([1 / 12])
    assert B._lp_objective(2, 11, 0.2, tau)[0] == pytest.approx(11 / 12)


def test_gv_regression_and_oracle():
    assert B.gv_bound(2, 11, 0.1) == pytest.approx(GV_2_11_01, abs=1e-12)
    for q, r, d in [(4096, 63, 0.3), (8192, 64, 0.2), (2, 11, 0.3), (16, 3, 0.4)]:
        assert B.gv_bound(q, r, d) == pytest.approx(oracles.gv_value(q, r, d), abs=1e-9)


def test_gv_small_delta_limit():
    assert B.gv_bound(16, 7, 0) == 7 / 8
    assert B.gv_bound(16, 7, 1e-9) == pytest.approx(7 / 8, abs=1e-6)


def test_gv_derivative_numerator_increasing_at_half():
    for q, r in [(4, 2), (16, 5), (4096, 63)]:
        s = np.linspace(1e-6, 1.0, 20_000)
        vals = B.gv_derivative_sign(q, r, 0.5, s)
        assert np.all(np.diff(vals) > -1e-12)
        assert B.half_delta_bracket_certified(q, r)


def test_affine_examples():
    assert B.cor12_square(64, 7, 0) == Fr(3, 4)
    assert B.cor12_square(4096, 63, 0.3) == Fr(107, 160)
    assert B.eq6_bound(4096, 63, 0) == Fr(63, 64) * (1 - Fr(3, 65))
    assert not B.eq6_bound(4096, 64, 0)
    assert B.eq7_bound(4096, 64, 0) == Fr(64, 65) * (1 - Fr(128, 4095))
    assert not B.eq7_bound(4096, 62, 0)
    with pytest.raises(NotASquare):
        B.cor12_square(8192, 64, 0)
    with pytest.raises(NotOddPower):
        B.cor12_oddpower(2, 0, 64, 0)


def test_affine_bound_has_unit_slope():
    a = B.tvz_rate(10, Fr(1, 10), 5, clamp=False)
    b = B.tvz_rate(10, Fr(2, 10), 5, clamp=False)
    assert a - b == Fr(1, 10)


def test_float_delta_is_read_exactly_as_written():
    assert B.cor12_square(4096, 63, 0.3) == B.cor12_square(4096, 63, Fr(3, 10))


def test_crossover_examples():
    assert B.crossover_delta(4096, 63, "eq7") == Fr(62 * 63, 4095)
    assert B.crossover_delta(4096, 63, "eq8") == Fr(3906, 4032)
    assert B.crossover_delta(4096, 1, "eq7") == 0


def test_prime_field_bound_pieces():
    pf = B.prime_field_bound(2, 11)
    assert pf.b == 12
    assert [(p.e, p.intercept, p.start, p.end) for p in pf.pieces] == [
        (12, Fr(227, 252), 0, Fr(4, 189)),
        (6, Fr(65, 84), Fr(4, 189), Fr(2, 21)),
        (4, Fr(7, 12), Fr(2, 21), Fr(7, 48)),
    ]
    assert pf.lines[2] < 0
    assert pf.value(0) == Fr(227, 252)


@pytest.mark.parametrize("q,r", [(2, 11), (3, 4), (5, 7), (2, 6), (7, 5), (3, 11)])
def test_prime_field_envelope_properties(q, r):
    pf = B.prime_field_bound(q, r)
    slopes = [p.slope for p in pf.pieces]
    assert slopes == sorted(slopes) and len(set(slopes)) == len(slopes)
    for a, b in zip(pf.pieces, pf.pieces[1:]):
        assert a.end == b.start and a(a.end) == b(b.start)
    for p in pf.pieces:
        for d in [p.start, (p.start + p.end) / 2, p.end]:
            assert pf.value(d) == max(p(d), 0)


def test_prime_field_bound_needs_prime():
    with pytest.raises(BadParams):
        B.prime_field_bound(4, 3)


def test_tower_and_ihara():
    assert B.gs_tower_params(2, 2)[0] == 1
    assert B.gs_tower_params(2, 3)[0] == 3
    assert B.ihara_lower(2**13) == 2 * Fr(127) / (3 + Fr(1, 63))
    assert B.ihara_lower(4096) == 63
    assert B.ihara_lower(2) is None


def test_divisibility_bound_parameters():
    assert B.lmx_parameters(4096, 63) == (1, 6)
    assert B.lmx_parameters(4096, 64) is None
    assert not B.lmx_bound(4096, 64, 0.1)


def test_gv_exceedance():
    assert B.gv_exceedance_check(4096, 63, 0.5)
    assert B.gv_exceedance_check(2**20, 40, 0.5)
    assert not B.gv_exceedance_check(4096, 63, 1 - 1 / 4096)


def test_delta_grid():
    g = B.delta_grid("0:0.15:0.005")
    assert len(g) == 31 and g[-1] == Fr(3, 20)


def test_figure_csv_shape():
    curves, notes = B.figure_curves(5)
    text = B.curves_to_csv(curves)
    lines = text.splitlines()
    assert lines[0] == "delta,rate,bound_id,params"
    assert {ln.split(",")[2] for ln in lines[1:]} == {"gv", "eq12"}
    assert notes == []
