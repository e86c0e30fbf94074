import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ultrapower.epset import EPSet
from ultrapower.errors import (
    DegenerateInput,
    DensityRequired,
    FiniteCarrierRequired,
    MalformedChain,
    NotAnUpperBound,
)
from ultrapower.hyper import EPSeq, embed_constant, hyper_cmp, hyper_equal, hyper_lt, index_set_lt
from ultrapower.orders import Dual, FiniteOrder, Integers, Ordering, Rationals
from ultrapower.random_objects import random_chain, standard_selectors
from ultrapower.ultrafilter import UltrafilterTrace, ZeroSelector
from ultrapower.witnesses import (
    ChainDescriptor,
    cantor_witness,
    density_counterexample,
    enumerate_epseqs,
    finite_collapse,
    inf_refuter,
    open_cantor_witness,
    sup_refuter,
)

Z, Q = Integers(), Rationals()
ZERO = UltrafilterTrace(ZeroSelector())
SELECTORS = standard_selectors(7)


def const(d, t):
    return EPSeq.constant(d, t)


def shrinking(K, strictness="closed"):
    return ChainDescriptor(
        Q, tuple((const(Q, Fraction(-1, k)), const(Q, Fraction(1, k))) for k in range(1, K + 1)), strictness
    )


def pointwise_alpha(chain, n, strict):
    """Level map recomputed from raw values, without any index-set algebra."""
    d, K = chain.descriptor, chain.depth

    def alive(k):
        return all(
            d._cmp(chain.a(i).at(n), chain.b(i).at(n)) < (1 if not strict else 0)
            and (i == 1 or (d._cmp(chain.a(i - 1).at(n), chain.a(i).at(n)) <= 0
                            and d._cmp(chain.b(i).at(n), chain.b(i - 1).at(n)) <= 0))
            for i in range(1, k + 1)
        )

    levels = [k for k in range(1, K + 1) if alive(k)]
    if not levels:
        return 0
    return min(n, K) if len(levels) == K else min(n, max(levels))


def check_supports_pointwise(trace, stop=200):
    for cert in trace.certificates:
        for n in range(stop):
            if n in cert.support:
                assert cert.holds_at(n), (cert.label, n)


def test_cantor_shrinking_chain():
    chain = shrinking(10)
    trace = cantor_witness(ZERO, chain)
    assert len(trace.certificates) == 20
    assert all(r.verified for r in trace.verify(ZERO))
    expected = [Fraction(-1)] + [Fraction(-1, min(n, 10)) for n in range(1, 40)]
    assert [trace.witness(n) for n in range(40)] == expected
    assert [trace.witness_ep(n) for n in range(40)] == expected
    check_supports_pointwise(trace)
    # third level's lower certificate, support D_3 minus {0, 1, 2}
    cert = trace.certificates[4]
    assert cert.label == "a_3 <= c" and cert.support == EPSet.cofinite({0, 1, 2})


def test_constant_chain_collapses_to_the_constant():
    t = Fraction(3, 7)
    chain = ChainDescriptor(Q, tuple((const(Q, t), const(Q, t)) for _ in range(5)))
    trace = cantor_witness(ZERO, chain)
    assert all(s == EPSet.naturals() for s in trace.D_sets.values())
    assert trace.witness_ep == embed_constant(Q, t)


def test_single_level_chain():
    chain = ChainDescriptor(Z, ((EPSeq(Z, [], [0, 5]), const(Z, 4)),))
    trace = cantor_witness(ZERO, chain)
    assert len(trace.certificates) == 2
    assert all(r.verified for r in trace.verify(ZERO))
    assert trace.D_sets[1] == EPSet.residue_class(0, 2)


def test_malformed_chain_names_the_level():
    levels = [(const(Z, 0), const(Z, 10)), (const(Z, 1), const(Z, 9)), (const(Z, 0), const(Z, 8))]
    with pytest.raises(MalformedChain) as info:
        cantor_witness(ZERO, ChainDescriptor(Z, tuple(levels)))
    assert info.value.level == 2


def test_open_cantor_examples():
    trace = open_cantor_witness(ZERO, shrinking(10, "open"))
    assert all(c.relation == "lt" for c in trace.certificates)
    assert all(r.verified for r in trace.verify(ZERO))
    check_supports_pointwise(trace)
    one = ChainDescriptor(Q, ((const(Q, 0), const(Q, 1)),), "open")
    w = open_cantor_witness(ZERO, one).witness_ep
    # index 0 carries the fallback a_1 at 0; every support excludes it
    assert w == EPSeq(Q, [0], [Fraction(1, 2)])
    assert hyper_equal(ZERO, w, const(Q, Fraction(1, 2)))
    ints = ChainDescriptor(Z, ((const(Z, 0), const(Z, 5)),), "open")
    with pytest.raises(DensityRequired):
        open_cantor_witness(ZERO, ints)


def test_density_counterexamples():
    found = density_counterexample(Z)
    assert (found.p, found.q) == (0, 1)
    assert all(a == const(Z, 0) and b == const(Z, 1) for a, b in found.chain.levels)
    three = FiniteOrder(("t1", "t2", "t3"))
    found = density_counterexample(three)
    assert (three.labels[found.p], three.labels[found.q]) == ("t1", "t2")
    assert found.method == "exhaustive"
    # 3 + 9 + 27 prefixes times 3 + 9 cycles, minus duplicate denotations
    assert found.checked == len(list(enumerate_epseqs(three, range(3), 2, 2)))
    assert density_counterexample(Q) is None


def test_sup_refuter_example():
    t = [1 - Fraction(1, k) for k in range(1, 13)]
    trace = sup_refuter(ZERO, t, const(Q, 1))
    assert len(trace.certificates) == 7
    assert all(r.verified for r in trace.verify(ZERO))
    c = trace.witness
    assert [c(n) for n in range(2)] == [1, 1]
    assert all(c(n) == t[min(n, 12) // 2 - 1] for n in range(2, 60))
    assert all(c(n) < 1 for n in range(2, 200))
    assert trace.certificates[-1].support == EPSet.cofinite({0, 1})
    assert hyper_lt(ZERO, trace.witness_ep, const(Q, 1))


def test_sup_refuter_with_the_top_value_as_bound():
    t = [Fraction(k) for k in range(1, 9)]
    trace = sup_refuter(ZERO, t, const(Q, t[-1]))
    assert trace.D_sets[8] == EPSet.naturals()
    assert all(r.verified for r in trace.verify(ZERO))
    assert hyper_lt(ZERO, trace.witness_ep, const(Q, t[-1]))
    for k in range(1, 5):
        assert hyper_cmp(ZERO, const(Q, t[k - 1]), trace.witness_ep) is not Ordering.GREATER


def test_refuter_errors():
    with pytest.raises(DegenerateInput):
        sup_refuter(ZERO, [Fraction(0)], const(Q, 1))
    with pytest.raises(DegenerateInput):
        inf_refuter(ZERO, [Fraction(1)], const(Q, 0))
    with pytest.raises(DegenerateInput):
        sup_refuter(ZERO, [Fraction(0), Fraction(0)], const(Q, 1))
    with pytest.raises(NotAnUpperBound) as info:
        sup_refuter(ZERO, [Fraction(0), Fraction(1), Fraction(2)], const(Q, Fraction(3, 2)))
    assert info.value.level == 3


def test_inf_refuter_example():
    v = [Fraction(1, k) for k in range(1, 13)]
    trace = inf_refuter(ZERO, v, const(Q, 0))
    assert all(r.verified for r in trace.verify(ZERO))
    assert hyper_lt(ZERO, const(Q, 0), trace.witness_ep)
    for k in range(1, 7):
        assert hyper_cmp(ZERO, trace.witness_ep, const(Q, v[k - 1])) is not Ordering.GREATER


@pytest.mark.parametrize("u", SELECTORS, ids=lambda u: u.selector.describe())
def test_inf_refuter_is_the_dual_of_sup_refuter(u):
    v = [Fraction(1, k) for k in range(1, 13)]
    b = EPSeq(Q, [Fraction(-3)], [0, Fraction(-1, 2)])
    direct = inf_refuter(u, v, b)
    mirrored = sup_refuter(u, v, EPSeq(Dual(Q), b.prefix, b.cycle))
    assert direct.witness_ep.prefix == mirrored.witness_ep.prefix
    assert direct.witness_ep.cycle == mirrored.witness_ep.cycle
    assert direct.D_sets == mirrored.D_sets


def test_finite_collapse_examples():
    xy = FiniteOrder(("x", "y"))
    assert finite_collapse(ZERO, EPSeq(xy, [], [0, 1])) == 0
    assert finite_collapse(ZERO, const(xy, 1)) == 1
    xyz = FiniteOrder(("x", "y", "z"))
    assert finite_collapse(ZERO, EPSeq(xyz, [2], [1])) == 1
    with pytest.raises(FiniteCarrierRequired):
        finite_collapse(ZERO, const(Q, 0))


def test_alpha_is_recomputed_pointwise():
    rng = random.Random(5)
    for d in (Q, Z, FiniteOrder.of_size(4)):
        for u in SELECTORS:
            chain = random_chain(rng, u, d, rng.randint(2, 6))
            trace = cantor_witness(u, chain)
            for n, m in trace.alpha.items():
                assert m == pointwise_alpha(chain, n, strict=False)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["Q", "Z", "4"]), st.integers(1, 8))
def test_cantor_trace_invariants(seed, carrier, depth):
    rng = random.Random(seed)
    d = {"Q": Q, "Z": Z, "4": FiniteOrder.of_size(4)}[carrier]
    u = rng.choice(SELECTORS)
    trace = cantor_witness(u, random_chain(rng, u, d, depth))
    D = trace.D_sets
    for k in range(1, depth + 1):
        assert D[k] in u
        if k < depth:
            assert D[k + 1] <= D[k]
    for n, m in trace.alpha.items():
        for k in range(1, depth + 1):
            if n in D[k] and k <= n:
                assert m >= k
    assert all(trace.witness(n) == trace.witness_ep(n) for n in range(len(trace.alpha)))
    assert all(r.verified for r in trace.verify(u))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 10))
def test_sup_refuter_never_finds_a_least_bound(seed, depth):
    rng = random.Random(seed)
    u = rng.choice(SELECTORS)
    t = sorted({Fraction(rng.randint(-30, 30), rng.randint(1, 5)) for _ in range(3 * depth)})[:depth]
    if len(t) < 2:
        return
    top = t[-1]
    b = EPSeq(Q, [Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(0, 3))],
              [top + Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))])
    trace = sup_refuter(u, t, b)
    assert all(r.verified for r in trace.verify(u))
    assert index_set_lt(trace.witness_ep, b) in u
    for k in range(1, len(t) // 2 + 1):
        assert hyper_cmp(u, embed_constant(Q, t[k - 1]), trace.witness_ep) is not Ordering.GREATER


@pytest.mark.parametrize("size", [1, 2, 3])
def test_finite_collapse_exhaustive_small(size):
    d = FiniteOrder.of_size(size)
    for u in SELECTORS:
        for a in enumerate_epseqs(d, range(size), 2, 2):
            assert hyper_equal(u, a, embed_constant(d, finite_collapse(u, a)))
