import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultrapower.errors import DescriptorMismatch, NoInteriorPoint
from ultrapower.orders import (
    Dual,
    FiniteOrder,
    Integers,
    LexProduct,
    Ordering,
    Rationals,
    cmp,
    density_pick,
    descriptor_from_dict,
    is_dense,
    monotone_subsequence,
)

Z, Q = Integers(), Rationals()
ZZ = LexProduct(Z, Z)


def test_cmp_examples():
    assert cmp(Q, Fraction(2, 3), Fraction(3, 4)) is Ordering.LESS
    assert cmp(Q, Fraction(5, 7), Fraction(5, 7)) is Ordering.EQUAL
    assert cmp(ZZ, (1, 5), (1, 2)) is Ordering.GREATER
    assert cmp(ZZ, (0, 99), (1, -99)) is Ordering.LESS


def test_cmp_rejects_foreign_elements():
    with pytest.raises(DescriptorMismatch):
        cmp(Z, 1, Fraction(1, 2))
    with pytest.raises(DescriptorMismatch):
        cmp(FiniteOrder.of_size(2), 0, 2)
    with pytest.raises(DescriptorMismatch):
        cmp(Z, True, 1)


def test_is_dense_examples():
    assert is_dense(Q)
    assert not is_dense(Z)
    assert not is_dense(FiniteOrder(("t1", "t2")))
    assert is_dense(FiniteOrder(("only",)))


@pytest.mark.parametrize(
    "d, dense",
    [
        (LexProduct(Q, Q), True),
        (LexProduct(Z, Q), True),  # right factor has no extrema
        (LexProduct(Q, Z), False),
        (LexProduct(Z, FiniteOrder.of_size(1)), False),
        (LexProduct(Q, FiniteOrder.of_size(1)), True),
        (LexProduct(FiniteOrder.of_size(2), Q), True),
        (Dual(Z), False),
        (Dual(Q), True),
    ],
)
def test_lex_density_rule(d, dense):
    assert d.is_dense is dense
    if not dense:
        p, q = d.gap()
        assert d.lt(p, q)
        if d.is_finite:
            assert not any(d.lt(p, x) and d.lt(x, q) for x in d.elements())


def test_lex_pick_crosses_adjacent_left_coordinates():
    d = LexProduct(Z, Q)
    c = density_pick(d, (0, Fraction(5)), (1, Fraction(-3)))
    assert d.lt((0, Fraction(5)), c) and d.lt(c, (1, Fraction(-3)))


def test_density_pick_examples():
    assert density_pick(Q, 0, 1) == Fraction(1, 2)
    assert density_pick(Q, Fraction(1, 3), Fraction(1, 2)) == Fraction(5, 12)
    with pytest.raises(NoInteriorPoint):
        density_pick(Z, 0, 1)
    with pytest.raises(NoInteriorPoint):
        density_pick(Q, 1, 1)


def _brute_longest_monotone(xs, strict):
    for r in range(len(xs), 0, -1):
        for c in combinations(range(len(xs)), r):
            pairs = list(zip(c, c[1:]))
            up = all(xs[i] < xs[j] if strict else xs[i] <= xs[j] for i, j in pairs)
            down = all(xs[i] > xs[j] if strict else xs[i] >= xs[j] for i, j in pairs)
            if up or down:
                return r
    return 0


def test_monotone_subsequence_examples():
    xs = [3, 1, 4, 1, 5, 9, 2, 6]
    idx = monotone_subsequence(Z, xs)
    # brute force over all 2^8 subsequences gives 4
    assert len(idx) == 4
    assert [xs[i] for i in idx] == sorted(xs[i] for i in idx)
    assert monotone_subsequence(Z, [1, 2, 3], strict=True) == [0, 1, 2]
    assert monotone_subsequence(Z, [5, 4, 3, 2], strict=True) == [0, 1, 2, 3]


def test_monotone_subsequence_direction_and_errors():
    assert monotone_subsequence(Z, [5, 4, 3, 2], direction="increasing") == [0]
    with pytest.raises(ValueError):
        monotone_subsequence(Z, [])
    with pytest.raises(ValueError):
        monotone_subsequence(Z, [1, 1], strict=True)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=9), st.booleans())
def test_monotone_subsequence_matches_brute_force(xs, strict):
    if strict:
        xs = list(dict.fromkeys(xs))
    idx = monotone_subsequence(Z, xs, strict=strict)
    assert idx == sorted(set(idx))
    vals = [xs[i] for i in idx]
    pairs = list(zip(vals, vals[1:]))
    if strict:
        assert all(a < b for a, b in pairs) or all(a > b for a, b in pairs)
    else:
        assert all(a <= b for a, b in pairs) or all(a >= b for a, b in pairs)
    assert len(idx) == _brute_longest_monotone(xs, strict)
    assert len(idx) >= math.ceil(math.sqrt(len(xs)))


rats = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 7))


@given(rats, rats, rats)
def test_trichotomy_and_transitivity(a, b, c):
    o = cmp(Q, a, b)
    assert [o < 0, o == 0, o > 0].count(True) == 1
    assert cmp(Q, b, a) == o.reversed()
    if cmp(Q, a, b) < 0 and cmp(Q, b, c) < 0:
        assert cmp(Q, a, c) < 0


@given(st.tuples(st.integers(-3, 3), rats), st.tuples(st.integers(-3, 3), rats))
def test_density_pick_is_strictly_inside(a, b):
    d = LexProduct(Z, Q)
    if d.cmp(a, b) == 0:
        return
    lo, hi = (a, b) if d.lt(a, b) else (b, a)
    c = density_pick(d, lo, hi)
    assert d.lt(lo, c) and d.lt(c, hi)


@pytest.mark.parametrize(
    "d", [Z, Q, FiniteOrder(("a", "b", "c")), LexProduct(Z, FiniteOrder(("x",))), Dual(Q)]
)
def test_descriptor_round_trip(d):
    assert descriptor_from_dict(d.to_dict()) == d


def test_descriptor_serialized_forms():
    assert FiniteOrder(("a", "b", "c")).to_dict() == {"kind": "finite", "elements": ["a", "b", "c"]}
    assert Q.to_dict() == {"kind": "rationals"}
    with pytest.raises(ValueError):
        descriptor_from_dict({"kind": "reals"})
    with pytest.raises(ValueError):
        FiniteOrder(("a", "a"))


def test_rational_encoding_is_exact():
    assert Q.encode(Fraction(6, 4)) == "3/2"
    assert Q.decode("3/2") == Fraction(3, 2)
    assert Q.decode(-4) == Fraction(-4)
    with pytest.raises(DescriptorMismatch):
        Q.decode(0.5)
