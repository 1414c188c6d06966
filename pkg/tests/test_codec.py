import random

import pytest

from lrcexp import linalg
from lrcexp.builder import LrcCode
from lrcexp.codec import (
    CodeReport,
    analyze,
    dimension_and_generator,
    min_distance_exact,
    random_codewords,
    repair_erasure,
    singleton_defect,
    verify_locality,
    verify_t_independence,
)
from lrcexp.errors import BudgetExceeded, DistanceUnknown, InconsistentWord, MultipleErasures, NotInAnyGroup
from lrcexp.galois import field_of_order

from helpers import brute_distance, f5_instance, hermitian_instance, prime_instance, rank_oracle

F2 = field_of_order(2)


def parity3():
    return LrcCode.from_parity_check(F2, [[1, 1, 1]], groups=[[0, 1, 2]], r=2)


def test_dimension_examples():
    assert dimension_and_generator(parity3())[0] == 2
    assert dimension_and_generator(LrcCode.from_parity_check(F2, [[0, 0, 0]]))[0] == 3


def test_generator_is_orthogonal_to_H():
    for code in [f5_instance(), hermitian_instance(3, 3, 4, 2), prime_instance(3, 2, 2, 2)]:
        k, G = dimension_and_generator(code)
        assert k == code.n - rank_oracle(code.ctx, code.H)
        assert all(not any(linalg.matvec(code.ctx, code.H, g)) for g in G)


def test_distance_examples():
    assert min_distance_exact(parity3()) == 2
    assert min_distance_exact(f5_instance()) >= 3
    assert min_distance_exact(parity3(), budget=0) is None


@pytest.mark.parametrize(
    "make",
    [parity3, f5_instance, lambda: hermitian_instance(2, 2, 2, 1), lambda: prime_instance(2, 3, 4, 1),
     lambda: prime_instance(3, 2, 2, 1)],
)
def test_distance_strategies_agree_with_brute_force(make):
    code = make()
    msg = min_distance_exact(code, strategy="messages")
    sup = min_distance_exact(code, strategy="supports")
    assert msg == sup
    if code.ctx.q ** code.n <= 2**18:
        assert msg == brute_distance(code)


def test_random_matrices_strategies_agree():
    rng = random.Random(3)
    F = field_of_order(3)
    for _ in range(30):
        n = rng.randint(3, 7)
        rows = rng.randint(1, n - 1)
        H = [[rng.randrange(3) for _ in range(n)] for _ in range(rows)]
        code = LrcCode.from_parity_check(F, H)
        assert min_distance_exact(code, strategy="messages") == min_distance_exact(code, strategy="supports")


def test_support_search_budget():
    code = hermitian_instance(3, 3, 4, 2)
    assert min_distance_exact(code, budget=5, strategy="supports") is None


def test_t_independence():
    code = f5_instance()
    assert verify_t_independence(code, 2)
    assert verify_t_independence(code, 0)
    zero_col = LrcCode.from_parity_check(F2, [[1, 0, 1], [1, 0, 0]])
    assert not verify_t_independence(zero_col, 1)
    with pytest.raises(BudgetExceeded):
        verify_t_independence(code, 3, budget=10)


def test_locality():
    ok, wit = verify_locality(f5_instance(), 2)
    assert ok and wit[0] == [1, 2]
    full = LrcCode.from_parity_check(F2, [], n=3)
    assert verify_locality(full, 1)[0] is False
    assert verify_locality(LrcCode.from_parity_check(F2, [[1, 1, 1]]), 2)[0]


def test_locality_literal_check_finds_hidden_repair():
    # two parity groups, but the second one only appears summed with the first
    code = LrcCode.from_parity_check(F2, [[1, 1, 1, 1, 1, 1], [1, 1, 1, 0, 0, 0]])
    ok, wit = verify_locality(code, 2)
    assert ok and wit[3] == [4, 5]
    assert verify_locality(code, 1)[0] is False


def test_repair_examples():
    code = f5_instance()
    zero = [0] * code.n
    for i in range(code.n):
        word = list(zero)
        word[i] = None
        assert repair_erasure(code, word) == 0
    with pytest.raises(MultipleErasures):
        repair_erasure(code, [None, None, 0, 0, 0, 0])
    bad = random_codewords(code, 1, seed=4)[0]
    bad[3] = (bad[3] + 1) % 5
    bad[0] = None
    with pytest.raises(InconsistentWord):
        repair_erasure(code, bad)
    orphan = LrcCode.from_parity_check(F2, [[1, 1, 0]], r=1)
    with pytest.raises(NotInAnyGroup):
        repair_erasure(orphan, [0, 0, None])


@pytest.mark.parametrize("make", [f5_instance, lambda: hermitian_instance(3, 3, 4, 2), lambda: prime_instance(2, 3, 4, 2)])
def test_repair_all_positions(make):
    code = make()
    for w in random_codewords(code, 100, seed=1):
        assert not any(linalg.matvec(code.ctx, code.H, w))
        for i in range(code.n):
            erased = [None if j == i else x for j, x in enumerate(w)]
            assert repair_erasure(code, erased) == w[i]


def test_singleton_defect():
    assert singleton_defect(CodeReport(n=6, k_exact=2, r=2, d_exact=5)) == 0
    assert singleton_defect(CodeReport(n=6, k_exact=2, r=2, d_exact=3)) == 2
    with pytest.raises(AssertionError):
        singleton_defect(CodeReport(n=6, k_exact=2, r=2, d_exact=6))
    with pytest.raises(DistanceUnknown):
        singleton_defect(CodeReport(n=6, k_exact=2, r=2))


def test_analyze_f5():
    rep = analyze(f5_instance(), exact_distance=True, verify_locality_flag=True, independence_t=2)
    rep.check()
    assert rep.d_exact >= 3 and rep.locality_certified and rep.t_independence_certified
    assert rep.unknown == []


def test_analyze_reports_unknowns():
    rep = analyze(hermitian_instance(3, 3, 4, 2), exact_distance=True, independence_t=3, budget=10)
    assert rep.d_exact is None and set(rep.unknown) == {"d_exact", "t_independence_certified"}
