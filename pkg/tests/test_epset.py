import doctest
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import ultrapower.epset
from ultrapower.epset import (
    EPSet,
    ep_complement,
    ep_intersect,
    ep_is_infinite,
    ep_member,
    ep_superset,
    ep_union,
    period_cap,
)
from ultrapower.errors import PeriodCapExceeded

from strategies import epsets

N = EPSet.naturals()
EMPTY = EPSet.empty()
EVENS = EPSet.residue_class(0, 2)
ODDS = EPSet.residue_class(1, 2)


def bitmap(s, stop):
    return [s.member(n) for n in range(stop)]


def window(*sets):
    return max(s.offset for s in sets) + 4 * math.lcm(*(s.period for s in sets))


def test_doctests():
    assert doctest.testmod(ultrapower.epset).failed == 0


def test_complement_examples():
    assert ep_complement(EVENS) == ODDS
    assert ODDS.period == 2 and ODDS.residues == (1,)
    assert ep_complement(EMPTY) == N
    finite = EPSet.finite({0, 1, 2})
    assert ep_complement(finite) == EPSet.cofinite({0, 1, 2})
    assert ep_complement(finite).prefix == (False, False, False)


def test_intersect_union_examples():
    assert ep_intersect(EVENS, EPSet.residue_class(0, 3)) == EPSet.residue_class(0, 6)
    assert ep_intersect(EVENS, N) == EVENS
    assert ep_union(EVENS, ODDS) == N


def test_is_infinite_examples():
    assert ep_is_infinite(EVENS)
    assert not ep_is_infinite(EPSet.finite({5}))
    assert ep_is_infinite(EPSet.cofinite({0}))


def test_superset_examples():
    assert ep_superset(N, EVENS)
    assert ep_superset(EVENS, EPSet.residue_class(0, 6))
    assert not ep_superset(EVENS, ODDS)


def test_member_examples():
    assert ep_member(EVENS, 4)
    assert not ep_member(EVENS, 7)
    exception = EPSet.finite({1}) | EPSet.residue_class(0, 2, start=2)
    assert ep_member(exception, 1)
    assert not ep_member(exception, 0)
    assert not ep_member(exception, 3)


def test_canonical_form_minimizes_period_and_prefix():
    s = EPSet([True, False, True, False], 4, [0, 2])
    assert (s.prefix, s.period, s.residues) == ((), 2, (0,))
    s = EPSet([False, True, True], 6, [1, 3, 5])
    # index 2 is an exception to the odd tail
    assert (s.prefix, s.period, s.residues) == ((False, True, True), 2, (1,))


def test_serialization():
    s = EPSet.finite({1}) | EPSet.residue_class(0, 2, start=2)
    assert s.to_dict() == {"prefix": [0, 1], "period": 2, "residues": [0]}
    assert EPSet.from_dict(s.to_dict()) == s
    assert EPSet.from_dict({"prefix": [1, 0, 1, 0], "period": 4, "residues": [0, 2]}) == EVENS


def test_period_cap():
    with period_cap(10):
        with pytest.raises(PeriodCapExceeded):
            EPSet.residue_class(0, 7) & EPSet.residue_class(0, 3)
        EPSet.residue_class(0, 5) & EPSet.residue_class(0, 2)
    assert (EPSet.residue_class(0, 7) & EPSet.residue_class(0, 3)).period == 21


@given(epsets(), epsets())
def test_operations_agree_with_bitmaps(k, l):
    stop = window(k, l)
    bk, bl = bitmap(k, stop), bitmap(l, stop)
    assert bitmap(k & l, stop) == [x and y for x, y in zip(bk, bl)]
    assert bitmap(k | l, stop) == [x or y for x, y in zip(bk, bl)]
    assert bitmap(~k, stop) == [not x for x in bk]
    assert bitmap(k - l, stop) == [x and not y for x, y in zip(bk, bl)]
    assert l.issubset(k) == all(y <= x for x, y in zip(bk, bl))
    assert k.is_infinite == any(bk[k.offset:])


@given(epsets(), epsets(), epsets())
def test_boolean_algebra_laws(a, b, c):
    assert ~(a & b) == (~a | ~b)
    assert ~(a | b) == (~a & ~b)
    assert a & (b | c) == (a & b) | (a & c)
    assert a | (b & c) == (a | b) & (a | c)
    assert ~~a == a
    assert a | ~a == N and a & ~a == EMPTY


@given(epsets(), st.integers(1, 4), st.integers(0, 5))
def test_equal_denotations_canonicalize_identically(k, factor, extra):
    period = k.period * factor
    offset = k.offset + extra
    again = EPSet.from_window(offset, period, k.member)
    assert again == k
    assert hash(again) == hash(k)
    assert EPSet(k.prefix, k.period, k.residues) == k
