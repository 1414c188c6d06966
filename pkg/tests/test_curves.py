import random

import pytest

from lrcexp.curves import (
    HermitianBackend,
    Place,
    RationalBackend,
    auxiliary_function,
    expand_at_infinity,
    irreducibles_of_degree,
    make_backend,
    parse_place,
    rational_places,
    rr_basis_at_infinity,
)
from lrcexp.errors import BadParams, Exhausted, NonRationalPlace, PlaceAtInfinity
from lrcexp.galois import make_field
from lrcexp.series import LaurentSeries

PREC = 14


@pytest.fixture(scope="module")
def herm2():
    return HermitianBackend(make_field(2, 2), 2)


@pytest.fixture(scope="module")
def herm3():
    return HermitianBackend(make_field(3, 2), 3)


def test_place_counts(herm2, herm3):
    assert len(rational_places(RationalBackend(make_field(5)))) == 6
    assert len(rational_places(herm2)) == 9
    assert len(rational_places(herm3)) == 28
    assert rational_places(herm3)[-1] == Place.infinity()


def test_hermitian_places_on_curve(herm3):
    F = herm3.ctx
    for P in rational_places(herm3)[:-1]:
        a, b = P.coords
        assert F.add(F.pow(b, 3), b) == F.pow(a, 4)


def test_place_literals_round_trip():
    for lit in ["inf", "a=3", "(a=2,b=5)", "poly=1,1,1"]:
        assert parse_place(lit).literal() == lit


def test_genus_and_pole_numbers(herm2, herm3):
    assert herm2.genus == 1 and herm3.genus == 3
    assert [n for _, n in rr_basis_at_infinity(herm2)] == [0]
    assert [n for _, n in rr_basis_at_infinity(herm3)] == [0, 3, 4]
    assert rr_basis_at_infinity(RationalBackend(make_field(7))) == []


def test_basis_valuations(herm3):
    for f, n in rr_basis_at_infinity(herm3):
        assert expand_at_infinity(herm3, f, PREC).valuation() == -n


def test_unit_expansion(herm2):
    assert herm2.unit(10).dump() == "0;10;1,0,0,1,0,0,1,0,0,0"
    x = expand_at_infinity(herm2, herm2.coordinate("x"), PREC)
    y = expand_at_infinity(herm2, herm2.coordinate("y"), PREC)
    assert x.valuation() == -2 and y.valuation() == -3
    # local parameter x/y has valuation 1
    assert (x * y.inv()).valuation() == 1


@pytest.mark.parametrize("q0", [2, 3])
def test_curve_equation_residual(q0):
    B = HermitianBackend(make_field(q0, 2) if q0 == 3 else make_field(2, 2), q0)
    x = expand_at_infinity(B, B.coordinate("x"), 30)
    y = expand_at_infinity(B, B.coordinate("y"), 30)
    res = y ** q0 + y - x ** (q0 + 1)
    assert res.is_zero_window
    assert res.prec >= 30 - (q0 + 1) * q0


def _random_rational(B, rng):
    F = B.ctx
    num = [rng.randrange(F.q) for _ in range(rng.randint(1, 3))] + [1]
    den = [rng.randrange(1, F.q)] + [rng.randrange(F.q) for _ in range(rng.randint(0, 2))] + [1]
    return B.function(num, den)


def _random_hermitian(B, rng):
    F = B.ctx
    terms = {(rng.randrange(3), rng.randrange(B.q0)): rng.randrange(1, F.q) for _ in range(3)}
    a = rng.randrange(F.q)
    den = [F.neg(a), 1] if rng.random() < 0.5 else [1]
    return B.function(terms, den)


def _agree(s1, s2):
    prec = min(s1.prec, s2.prec)
    return (s1.truncate(prec) - s2.truncate(prec)).is_zero_window


@pytest.mark.parametrize("kind", ["rational", "hermitian"])
def test_expansion_is_a_homomorphism(kind, herm2):
    rng = random.Random(7)
    if kind == "rational":
        B, gen = RationalBackend(make_field(7)), _random_rational
    else:
        B, gen = herm2, _random_hermitian
    for _ in range(25):
        f, h = gen(B, rng), gen(B, rng)
        ef, eh = expand_at_infinity(B, f, PREC), expand_at_infinity(B, h, PREC)
        assert _agree(expand_at_infinity(B, B.add(f, h), PREC), ef + eh)
        assert _agree(expand_at_infinity(B, B.mul(f, h), PREC), ef * eh)


def test_rational_expansion_example():
    B = RationalBackend(make_field(5))
    s = expand_at_infinity(B, auxiliary_function(B, Place.affine(2)), 5)
    assert s.window(0, 5) == [0, 1, 2, 4, 3]


def test_rational_auxiliary_valuations():
    B = RationalBackend(make_field(7))
    for P in rational_places(B)[:-1]:
        f = auxiliary_function(B, P)
        assert expand_at_infinity(B, f, PREC).valuation() >= 1  # -(2g-1) with g = 0
        assert B.expand_at_affine(f, P.coords[0], PREC).valuation() == -1
        other = (P.coords[0] + 1) % 7
        assert B.expand_at_affine(f, other, PREC).valuation() == 0


@pytest.mark.parametrize("q0", [2, 3])
def test_hermitian_auxiliary_valuations(q0):
    B = HermitianBackend(make_field(2, 2) if q0 == 2 else make_field(3, 2), q0)
    F = B.ctx
    for P in rational_places(B)[:-1]:
        f = auxiliary_function(B, P)
        assert expand_at_infinity(B, f, PREC).valuation() == -(2 * B.genus - 1)
        assert B.numerator_at(f, P) != 0
        a, _ = P.coords
        for b2 in B.fiber(a):
            if b2 != P.coords[1]:
                assert B.numerator_at(f, Place.affine(a, b2)) == 0
        # x - a vanishes exactly on the fiber over a
        assert len(B.fiber(a)) == q0 and F.q == q0 * q0


def test_auxiliary_errors(herm2):
    with pytest.raises(PlaceAtInfinity):
        auxiliary_function(RationalBackend(make_field(5)), Place.infinity())
    with pytest.raises(NonRationalPlace):
        auxiliary_function(herm2, Place.affine(1, 0))


def test_higher_degree_block():
    B = RationalBackend(make_field(2))
    Q = Place.higher([1, 1, 0, 1])
    funcs = B.higher_degree_block(Q)
    assert len(funcs) == 3
    for s, f in enumerate(funcs):
        assert expand_at_infinity(B, f, PREC).valuation() == 3 - s


def test_irreducibles():
    assert irreducibles_of_degree(make_field(2), 3) == [[1, 1, 0, 1], [1, 0, 1, 1]]
    assert len(irreducibles_of_degree(make_field(3), 2)) == 3
    assert len(irreducibles_of_degree(make_field(2), 4)) == 3
    with pytest.raises(Exhausted):
        irreducibles_of_degree(make_field(2), 2, count=2)


def test_make_backend():
    assert isinstance(make_backend(make_field(3, 2), "hermitian", 3), HermitianBackend)
    with pytest.raises(BadParams):
        make_backend(make_field(5), "hermitian", 2)
