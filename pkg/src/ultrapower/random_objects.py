"""Seeded generators for sets, sequences, selectors and chains.

Shared by the ``check-axioms`` command and the test-suite. All functions take
an explicit :class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import functools
import random
from fractions import Fraction

from .epset import EPSet
from .hyper import EPSeq, standard_part
from .orders import Dual, FiniteOrder, Integers, LexProduct, OrderedSet, Rationals
from .ultrafilter import MinusOneSelector, ProfiniteSelector, UltrafilterTrace, ZeroSelector
from .witnesses import ChainDescriptor


def random_epset(rng: random.Random, max_period: int = 50, max_prefix: int = 20) -> EPSet:
    p = rng.randint(1, max_period)
    style = rng.random()
    if style < 0.1:
        mask = 0
    elif style < 0.2:
        mask = (1 << p) - 1
    elif style < 0.35:
        mask = 1 << rng.randrange(p)
    else:
        mask = rng.getrandbits(p)
    prefix = [rng.random() < 0.5 for _ in range(rng.randint(0, max_prefix))]
    return EPSet(prefix, p, mask=mask)


def standard_selectors(seed: int = 0) -> list[UltrafilterTrace]:
    """The zero selector, the ``p - 1`` selector and one pseudo-random one."""
    return [
        UltrafilterTrace(ZeroSelector()),
        UltrafilterTrace(MinusOneSelector()),
        UltrafilterTrace(ProfiniteSelector(seed)),
    ]


def random_element(rng: random.Random, d: OrderedSet):
    if isinstance(d, Integers):
        return rng.randint(-10, 10)
    if isinstance(d, Rationals):
        return Fraction(rng.randint(-24, 24), rng.randint(1, 6))
    if isinstance(d, FiniteOrder):
        return rng.randrange(len(d))
    if isinstance(d, LexProduct):
        return random_element(rng, d.left), random_element(rng, d.right)
    if isinstance(d, Dual):
        return random_element(rng, d.base)
    raise TypeError(f"no generator for {d}")


def random_epseq(rng: random.Random, d: OrderedSet, max_prefix: int = 3, max_cycle: int = 6, values=None) -> EPSeq:
    draw = (lambda: rng.choice(values)) if values is not None else (lambda: random_element(rng, d))
    prefix = [draw() for _ in range(rng.randint(0, max_prefix))]
    cycle = [draw() for _ in range(rng.randint(1, max_cycle))]
    return EPSeq(d, prefix, cycle)


def force_class(u: UltrafilterTrace, s: EPSeq, value) -> EPSeq:
    """Copy of ``s`` whose class equals ``value``'s constant class.

    Only the cycle slot on the selected residue class is overwritten, so
    the sequence still disagrees with the constant elsewhere.
    """
    cycle = list(s.cycle)
    j = (u.residue(s.period) - s.offset) % s.period
    cycle[j] = value
    out = EPSeq(s.descriptor, s.prefix, cycle)
    assert standard_part(u, out) == value
    return out


def equivalent_variant(rng: random.Random, u: UltrafilterTrace, s: EPSeq, values=None) -> EPSeq:
    """A different representative of the class of ``s``.

    The sequence is unrolled to a longer prefix and a multiple of its cycle,
    then every entry off the selected residue class is redrawn.
    """
    d = s.descriptor
    draw = (lambda: rng.choice(values)) if values is not None else (lambda: random_element(rng, d))
    offset = s.offset + rng.randint(0, 3)
    period = s.period * rng.randint(1, 3)
    r = u.residue(period)
    prefix = [draw() for _ in range(offset)]
    cycle = [s.at(n) if n % period == r else draw() for n in range(offset, offset + period)]
    return EPSeq(d, prefix, cycle)


def random_chain(
    rng: random.Random,
    u: UltrafilterTrace,
    d: OrderedSet,
    depth: int,
    strictness: str = "closed",
    max_prefix: int = 3,
    max_cycle: int = 6,
) -> ChainDescriptor:
    """A chain valid under ``u`` whose levels still misbehave off the ultrafilter."""
    while True:
        ends = sorted((random_element(rng, d) for _ in range(2 * depth)), key=_sort_key(d))
        lows, highs = ends[:depth], ends[depth:][::-1]
        if strictness == "closed" or d._cmp(lows[-1], highs[-1]) < 0:
            break
    levels = []
    for lo, hi in zip(lows, highs):
        a = force_class(u, random_epseq(rng, d, max_prefix, max_cycle), lo)
        b = force_class(u, random_epseq(rng, d, max_prefix, max_cycle), hi)
        levels.append((a, b))
    chain = ChainDescriptor(d, tuple(levels), strictness)
    chain.validate(u)
    return chain


def _sort_key(d: OrderedSet):
    return functools.cmp_to_key(lambda x, y: int(d._cmp(x, y)))
