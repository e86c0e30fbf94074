"""Executable proofs: common points of interval chains, refuted suprema,
collapse of ultrapowers of finite chains.

Every construction returns a :class:`WitnessTrace` holding the index sets it
built, the level map ``alpha`` on a window of indices, the witness sequence
and certificates that any third party can re-check with
:func:`~ultrapower.hyper.compare_with_certificate`.

Indices ``n`` run over ``0, 1, 2, ...`` while chain levels ``k`` run over
``1..K``. Chains are finite: level sets are taken relative to ``{1..K}``, and
an index that lies in every level set is treated as lying in an unbounded
one, giving ``alpha_n = min(n, K)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .epset import EPSet, check_period
from .errors import (
    DegenerateInput,
    DensityRequired,
    FiniteCarrierRequired,
    MalformedChain,
    NoInteriorPoint,
    NotAnUpperBound,
    UndecidableWithoutCertificate,
)
from .hyper import (
    Certificate,
    EPSeq,
    OpaqueSeq,
    VerificationReport,
    compare_with_certificate,
    embed_constant,
    hyper_equal,
    index_set,
    index_set_eq,
    index_set_leq,
    index_set_lt,
)
from .orders import OrderedSet
from .ultrafilter import UltrafilterTrace, cover_select

__all__ = [
    "ChainDescriptor",
    "WitnessTrace",
    "Counterexample",
    "cantor_witness",
    "open_cantor_witness",
    "density_counterexample",
    "sup_refuter",
    "inf_refuter",
    "finite_collapse",
    "enumerate_epseqs",
]

ALPHA_WINDOW_CAP = 1024


@dataclass(frozen=True)
class ChainDescriptor:
    """Levels ``(a_k, b_k)`` for ``k = 1..K`` of a nested interval chain."""

    descriptor: OrderedSet
    levels: tuple
    strictness: str = "closed"

    def __post_init__(self):
        levels = tuple((a, b) for a, b in self.levels)
        if not levels:
            raise MalformedChain(0, "a chain needs at least one level")
        if self.strictness not in ("closed", "open"):
            raise ValueError(f"strictness must be 'closed' or 'open', not {self.strictness!r}")
        for k, (a, b) in enumerate(levels, 1):
            for s in (a, b):
                if not isinstance(s, EPSeq):
                    raise MalformedChain(k, f"level {k} is not eventually periodic")
                if s.descriptor != self.descriptor:
                    raise MalformedChain(k, f"level {k} lives in {s.descriptor}, not {self.descriptor}")
        object.__setattr__(self, "levels", levels)

    @property
    def depth(self) -> int:
        return len(self.levels)

    def a(self, k: int) -> EPSeq:
        return self.levels[k - 1][0]

    def b(self, k: int) -> EPSeq:
        return self.levels[k - 1][1]

    def truncated(self, depth: int) -> "ChainDescriptor":
        if not 1 <= depth <= self.depth:
            raise DegenerateInput(f"depth {depth} outside 1..{self.depth}")
        return ChainDescriptor(self.descriptor, self.levels[:depth], self.strictness)

    def validate(self, u: UltrafilterTrace) -> None:
        """Raise :class:`MalformedChain` naming the first bad level."""
        inner = "lt" if self.strictness == "open" else "leq"
        for k in range(1, self.depth + 1):
            if index_set(self.a(k), self.b(k), inner) not in u:
                raise MalformedChain(k, f"level {k}: a_{k} {'<' if inner == 'lt' else '<='} b_{k} fails")
            if k < self.depth:
                if index_set_leq(self.a(k), self.a(k + 1)) not in u:
                    raise MalformedChain(k, f"level {k}: a_{k} <= a_{k + 1} fails")
                if index_set_leq(self.b(k + 1), self.b(k)) not in u:
                    raise MalformedChain(k, f"level {k}: b_{k + 1} <= b_{k} fails")


@dataclass
class WitnessTrace:
    """Everything one run of a construction produced.

    ``points`` names the input sequences the certificates refer to.
    ``witness`` is the constructed sequence as a function of the index; at
    finite depth it is eventually periodic and ``witness_ep`` is that
    materialization, which allows an exact cross-check by decidable
    comparison.
    """

    kind: str
    D_sets: dict
    alpha: dict
    witness: OpaqueSeq
    witness_ep: EPSeq
    certificates: list
    report: list = field(default_factory=list)
    depth: int = 0
    points: dict = field(default_factory=dict)

    def verify(self, u: UltrafilterTrace) -> list[VerificationReport]:
        return [compare_with_certificate(u, c) for c in self.certificates]


def _level_alpha(levels: dict[int, EPSet], depth: int) -> Callable[[int], int]:
    """``alpha_n`` from the nested level sets ``levels[1] >= levels[2] >= ...``."""

    def alpha(n: int) -> int:
        ks = [k for k in range(1, depth + 1) if n in levels[k]]
        if not ks:
            return 0
        if len(ks) == depth:
            # still inside every level at the truncation depth
            return min(n, depth)
        return min(n, max(ks))

    return alpha


def _materialize(descriptor, fn, offset: int, period: int) -> EPSeq:
    check_period(period)
    return EPSeq(descriptor, [fn(n) for n in range(offset)], [fn(n) for n in range(offset, offset + period)])


def _periodic_frame(depth: int, sets: Sequence[EPSet], seqs: Sequence[EPSeq]) -> tuple[int, int]:
    offset = max([depth] + [s.offset for s in sets] + [s.offset for s in seqs])
    period = check_period(math.lcm(*[s.period for s in sets], *[s.period for s in seqs]))
    return offset, period


def _cantor(u: UltrafilterTrace, chain: ChainDescriptor, pick) -> WitnessTrace:
    d = chain.descriptor
    K = chain.depth
    strict = chain.strictness == "open"
    inner = index_set_lt if strict else index_set_leq
    chain.validate(u)

    A = {i: index_set_leq(chain.a(i), chain.a(i + 1)) for i in range(1, K)}
    B = {i: index_set_leq(chain.b(i + 1), chain.b(i)) for i in range(1, K)}
    C = {i: inner(chain.a(i), chain.b(i)) for i in range(1, K + 1)}
    D = {1: C[1]}
    acc = C[1]
    for k in range(2, K + 1):
        acc = acc & A[k - 1] & B[k - 1] & C[k]
        D[k] = acc
    for k in range(1, K + 1):
        assert D[k] in u, k

    alpha = _level_alpha(D, K)
    fallback = chain.a(1).at(0)

    def c(n: int):
        m = alpha(n)
        if m == 0:
            return fallback
        if strict:
            return pick(chain.a(m).at(n), chain.b(m).at(n))
        return chain.a(m).at(n)

    seqs = [s for level in chain.levels for s in level]
    offset, period = _periodic_frame(K, list(D.values()), seqs)
    kind = "open_cantor" if strict else "cantor"
    witness = OpaqueSeq(d, c, name="c")
    witness_ep = _materialize(d, c, offset, period)

    rel = "lt" if strict else "leq"
    sym = "<" if strict else "<="
    certs = []
    for k in range(1, K + 1):
        support = D[k].without_below(k)
        certs.append(Certificate(rel, chain.a(k), witness, support, f"a_{k} {sym} c"))
        certs.append(Certificate(rel, witness, chain.b(k), support, f"c {sym} b_{k}"))

    window = min(offset + period, ALPHA_WINDOW_CAP)
    log = [
        f"{kind}: carrier {d}, depth {K}, selector {u.selector.describe()}",
        *(f"D_{k} = {D[k].describe()}" for k in range(1, K + 1)),
        f"witness c = {witness_ep.describe()} (eventually periodic from index {offset}, period {period})",
        f"{len(certs)} certificates, supports D_k minus {{0..k-1}}",
    ]
    points = {}
    for k in range(1, K + 1):
        points[f"a_{k}"] = chain.a(k)
        points[f"b_{k}"] = chain.b(k)
    return WitnessTrace(kind, D, {n: alpha(n) for n in range(window)}, witness, witness_ep, certs, log, K, points)


def cantor_witness(u: UltrafilterTrace, chain: ChainDescriptor) -> WitnessTrace:
    """A point lying in every closed interval ``[a_k, b_k]`` of the chain."""
    if chain.strictness != "closed":
        chain = ChainDescriptor(chain.descriptor, chain.levels, "closed")
    return _cantor(u, chain, None)


def open_cantor_witness(u: UltrafilterTrace, chain: ChainDescriptor, pick=None) -> WitnessTrace:
    """A point lying in every open interval of the chain; the carrier must be dense.

    ``pick(x, y)`` must return an element strictly between ``x < y``; it
    defaults to the carrier's own deterministic choice.
    """
    d = chain.descriptor
    if not d.is_dense:
        raise DensityRequired(f"{d} is not dense, open chains may have empty intersection")
    if chain.strictness != "open":
        chain = ChainDescriptor(d, chain.levels, "open")
    return _cantor(u, chain, pick or d.density_pick)


def _refute(u: UltrafilterTrace, values: Sequence, b, depth: int | None, upper: bool) -> WitnessTrace:
    kind = "sup_refuter" if upper else "inf_refuter"
    if not isinstance(b, EPSeq):
        raise UndecidableWithoutCertificate("the bound must be eventually periodic")
    d = b.descriptor
    values = list(values)
    K = len(values) if depth is None else depth
    if K < 2:
        raise DegenerateInput(f"{kind} needs depth at least 2, got {K}")
    if K > len(values):
        raise DegenerateInput(f"depth {K} exceeds the {len(values)} given values")
    t = [None] + [d.check(x) for x in values[:K]]  # 1-based
    for k in range(1, K):
        if (d._cmp(t[k], t[k + 1]) >= 0) if upper else (d._cmp(t[k], t[k + 1]) <= 0):
            raise DegenerateInput(f"values are not strictly {'increasing' if upper else 'decreasing'} at {k}")

    consts = [None] + [embed_constant(d, x) for x in t[1:]]
    D = {}
    for k in range(1, K + 1):
        D[k] = index_set_leq(consts[k], b) if upper else index_set_leq(b, consts[k])
        if D[k] not in u:
            raise NotAnUpperBound(k, f"level {k}: the bound is not {'above' if upper else 'below'} value {k}")

    alpha = _level_alpha(D, K)

    def c(n: int):
        m = alpha(n)
        return b.at(n) if m < 2 else t[m // 2]

    offset, period = _periodic_frame(K, list(D.values()), [b])
    witness = OpaqueSeq(d, c, name="c")
    witness_ep = _materialize(d, c, offset, period)

    certs = []
    for k in range(1, K // 2 + 1):
        support = D[2 * k].without_below(2 * k)
        if upper:
            certs.append(Certificate("leq", consts[k], witness, support, f"t_{k} <= c"))
        else:
            certs.append(Certificate("leq", witness, consts[k], support, f"c <= u_{k}"))
    strict_support = D[2].without_below(2)
    if upper:
        certs.append(Certificate("lt", witness, b, strict_support, "c < b"))
    else:
        certs.append(Certificate("lt", b, witness, strict_support, "b < c"))

    window = min(offset + period, ALPHA_WINDOW_CAP)
    log = [
        f"{kind}: carrier {d}, depth {K}, selector {u.selector.describe()}",
        *(f"D_{k} = {D[k].describe()}" for k in range(1, K + 1)),
        f"refuting bound c = {witness_ep.describe()}",
        f"bound certified for levels 1..{K // 2} (beta = floor(alpha / 2) halves the depth)",
        f"strictness support {strict_support.describe()}",
    ]
    letter = "t" if upper else "u"
    points = {f"{letter}_{k}": consts[k] for k in range(1, K + 1)}
    points["b"] = b
    return WitnessTrace(kind, D, {n: alpha(n) for n in range(window)}, witness, witness_ep, certs, log, K, points)


def sup_refuter(u: UltrafilterTrace, t: Sequence, b: EPSeq, depth: int | None = None) -> WitnessTrace:
    """From an upper bound ``b`` of the constants ``t_1 < t_2 < ...``, a strictly smaller one.

    The returned witness ``c`` is certified above ``t_k`` for every
    ``k <= depth // 2`` and strictly below ``b``.
    """
    return _refute(u, t, b, depth, upper=True)


def inf_refuter(u: UltrafilterTrace, v: Sequence, b: EPSeq, depth: int | None = None) -> WitnessTrace:
    """Order dual of :func:`sup_refuter` for strictly decreasing ``v``."""
    return _refute(u, v, b, depth, upper=False)


def finite_collapse(u: UltrafilterTrace, a: EPSeq):
    """The element ``t`` of a finite carrier whose constant class equals ``a``'s."""
    d = a.descriptor
    if not d.is_finite:
        raise FiniteCarrierRequired(f"{d} is infinite")
    elements = d.elements()
    cover = collapse_cover(a)
    m = cover_select(u, cover)
    t = elements[m]
    assert hyper_equal(u, a, embed_constant(d, t))
    return t


def collapse_cover(a: EPSeq) -> list[EPSet]:
    """``[{n : a_n == t} for t in carrier]``, a partition of the naturals."""
    d = a.descriptor
    if not d.is_finite:
        raise FiniteCarrierRequired(f"{d} is infinite")
    return [index_set_eq(a, embed_constant(d, t)) for t in d.elements()]


def enumerate_epseqs(d: OrderedSet, values: Sequence, max_prefix: int, max_cycle: int):
    """Every sequence with prefix length ``<= max_prefix`` and cycle length ``<= max_cycle``."""
    seen = set()
    for plen in range(max_prefix + 1):
        for clen in range(1, max_cycle + 1):
            for prefix in itertools.product(values, repeat=plen):
                for cycle in itertools.product(values, repeat=clen):
                    s = EPSeq(d, prefix, cycle)
                    if s not in seen:
                        seen.add(s)
                        yield s


@dataclass(frozen=True)
class Counterexample:
    """Adjacent ``p < q`` and the constant open chain with empty intersection."""

    p: object
    q: object
    chain: ChainDescriptor
    checked: int
    method: str


def density_counterexample(d: OrderedSet, depth: int = 3, max_prefix: int = 2, max_cycle: int = 2):
    """An empty open hyper-interval when ``d`` is not dense, else ``None``.

    For finite carriers emptiness is confirmed over every eventually
    periodic sequence within the given prefix and cycle lengths: for each
    such ``x`` the set ``{n : p < x_n < q}`` is empty, so no ultrafilter
    accepts it.
    """
    if d.is_dense:
        return None
    p, q = d.gap()
    if d._cmp(p, q) >= 0:
        raise AssertionError("gap endpoints out of order")
    if d.is_finite:
        values = d.elements()
        method = "exhaustive"
    else:
        values = _neighbourhood(d, p, q)
        method = "neighbourhood"
    if any(d._cmp(p, x) < 0 < d._cmp(q, x) for x in values):
        raise AssertionError("gap is not empty")
    cp, cq = embed_constant(d, p), embed_constant(d, q)
    checked = 0
    for x in enumerate_epseqs(d, values, max_prefix, max_cycle):
        between = index_set_lt(cp, x) & index_set_lt(x, cq)
        if between != EPSet.empty():
            raise AssertionError(f"{x!r} falls strictly between the gap endpoints")
        checked += 1
    chain = ChainDescriptor(d, tuple((cp, cq) for _ in range(depth)), "open")
    return Counterexample(p, q, chain, checked, method)


def _neighbourhood(d: OrderedSet, p, q) -> list:
    out = [p, q]
    lo, hi = p, q
    for _ in range(2):
        try:
            lo = d.below(lo)
            out.insert(0, lo)
        except NoInteriorPoint:
            break
    for _ in range(2):
        try:
            hi = d.above(hi)
            out.append(hi)
        except NoInteriorPoint:
            break
    return out
