from fractions import Fraction

from hypothesis import strategies as st

from ultrapower.epset import EPSet
from ultrapower.hyper import EPSeq
from ultrapower.orders import FiniteOrder, Integers, Rationals
from ultrapower.ultrafilter import MinusOneSelector, ProfiniteSelector, UltrafilterTrace, ZeroSelector


@st.composite
def epsets(draw, max_period=24, max_prefix=10):
    p = draw(st.integers(1, max_period))
    mask = draw(st.integers(0, (1 << p) - 1))
    prefix = draw(st.lists(st.booleans(), max_size=max_prefix))
    return EPSet(prefix, p, mask=mask)


def selectors():
    return st.one_of(
        st.just(ZeroSelector()),
        st.just(MinusOneSelector()),
        st.integers(0, 10_000).map(ProfiniteSelector),
    )


def traces():
    return selectors().map(UltrafilterTrace)


integers = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 4))

CARRIERS = {
    "Z": (Integers(), integers),
    "Q": (Rationals(), rationals),
    "3": (FiniteOrder.of_size(3), st.integers(0, 2)),
}


@st.composite
def epseqs(draw, carrier="Z", max_prefix=3, max_cycle=4):
    d, elems = CARRIERS[carrier]
    prefix = draw(st.lists(elems, max_size=max_prefix))
    cycle = draw(st.lists(elems, min_size=1, max_size=max_cycle))
    return EPSeq(d, prefix, cycle)
