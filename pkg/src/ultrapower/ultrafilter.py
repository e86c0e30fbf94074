"""A decidable ultrafilter trace on eventually periodic sets.

A residue selector picks one residue ``r_p`` for every modulus ``p`` such
that ``r_{pq} % p == r_p``; equivalently it is a profinite integer. The
family of eventually periodic sets containing (a tail of) the selected
class ``{n : n % p == r_p}`` for their own period is closed under supersets
and finite intersections, consists of infinite sets only, and contains
exactly one of every set and its complement. That family is what the rest
of the package uses as the ultrafilter. A full ultrafilter on all subsets of
the naturals is never materialized.
"""

from __future__ import annotations

import functools
import hashlib
from typing import Iterable, Sequence

from .epset import EPSet
from .errors import FiniteGenerator, IncompatibleSelector, NotACover

__all__ = [
    "ResidueSelector",
    "ZeroSelector",
    "MinusOneSelector",
    "ProfiniteSelector",
    "TableSelector",
    "UltrafilterTrace",
    "decide",
    "frechet_contains",
    "frechet_extension_contains",
    "cover_select",
]


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _crt(pairs: Iterable[tuple[int, int]]) -> tuple[int, int]:
    r, m = 0, 1
    for ri, mi in pairs:
        # moduli are pairwise coprime prime powers
        t = ((ri - r) * pow(m, -1, mi)) % mi
        r, m = r + m * t, m * mi
    return r % m, m


class ResidueSelector:
    """Compatible choice of one residue class per modulus."""

    def residue(self, p: int) -> int:
        if p < 1:
            raise ValueError("modulus must be positive")
        if p == 1:
            return 0
        return _crt((self._prime_power(q, e), q**e) for q, e in _factor(p))[0]

    def _prime_power(self, q: int, e: int) -> int:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def describe(self) -> str:
        return str(self.to_dict())

    def __eq__(self, other):
        return isinstance(other, ResidueSelector) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(repr(self.to_dict()))


class ZeroSelector(ResidueSelector):
    """``r_p = 0``: concentrates on highly divisible indices."""

    def residue(self, p):
        if p < 1:
            raise ValueError("modulus must be positive")
        return 0

    def to_dict(self):
        return {"kind": "zero"}

    def __repr__(self):
        return "ZeroSelector()"


class MinusOneSelector(ResidueSelector):
    """``r_p = p - 1``, the profinite integer -1."""

    def residue(self, p):
        if p < 1:
            raise ValueError("modulus must be positive")
        return p - 1

    def to_dict(self):
        return {"kind": "minus-one"}

    def __repr__(self):
        return "MinusOneSelector()"


class ProfiniteSelector(ResidueSelector):
    """Pseudo-random profinite integer, reproducible from ``seed``.

    The ``i``-th base-``q`` digit of the ``q``-adic component is derived from
    a hash of ``(seed, q, i)``, so residues for ``q**e`` extend those for
    ``q**(e-1)`` and compatibility holds by construction.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed)

    @functools.lru_cache(maxsize=4096)
    def _digit(self, q: int, i: int) -> int:
        h = hashlib.sha256(f"{self.seed}:{q}:{i}".encode()).digest()
        return int.from_bytes(h[:8], "big") % q

    def _prime_power(self, q, e):
        return sum(self._digit(q, i) * q**i for i in range(e))

    def to_dict(self):
        return {"kind": "random", "seed": self.seed}

    def __repr__(self):
        return f"ProfiniteSelector(seed={self.seed})"


class TableSelector(ResidueSelector):
    """Selector given by explicit ``(p, r_p)`` pairs.

    The pairs are validated for compatibility. Moduli not covered by the
    table take the smallest residue consistent with it: each prime-power
    component is fixed as far as some entry determines it and padded with
    zero digits beyond that.
    """

    def __init__(self, pairs: Sequence[tuple[int, int]]):
        known: dict[int, tuple[int, int]] = {}  # prime -> (exponent, residue mod q**exponent)
        clean = []
        for p, r in pairs:
            p, r = int(p), int(r)
            if p < 1 or not 0 <= r < p:
                raise IncompatibleSelector(f"entry ({p}, {r}) is not a residue modulo {p}")
            clean.append((p, r))
            for q, e in _factor(p):
                rq = r % q**e
                if q in known:
                    e0, r0 = known[q]
                    low = min(e, e0)
                    if rq % q**low != r0 % q**low:
                        raise IncompatibleSelector(
                            f"entry ({p}, {r}) disagrees with an earlier entry modulo {q ** low}"
                        )
                    if e <= e0:
                        continue
                known[q] = (e, rq)
        self.pairs = tuple(sorted(set(clean)))
        self._known = known
        for p, r in self.pairs:
            if self.residue(p) != r:
                raise IncompatibleSelector(f"entry ({p}, {r}) is inconsistent with the table")

    def _prime_power(self, q, e):
        if q not in self._known:
            return 0
        e0, r0 = self._known[q]
        return r0 % q ** min(e, e0)

    def to_dict(self):
        return {"kind": "table", "pairs": [list(x) for x in self.pairs]}

    def __repr__(self):
        return f"TableSelector({list(self.pairs)})"


class UltrafilterTrace:
    """Membership oracle for the ultrafilter determined by ``selector``."""

    def __init__(self, selector: ResidueSelector | None = None):
        self.selector = selector if selector is not None else ZeroSelector()
        self._residues: dict[int, int] = {}

    def residue(self, p: int) -> int:
        r = self._residues.get(p)
        if r is None:
            r = self._residues[p] = self.selector.residue(p)
        return r

    def __contains__(self, k: EPSet) -> bool:
        return bool((k.mask >> self.residue(k.period)) & 1)

    def decide(self, k: EPSet) -> bool:
        return k in self

    def selected_class(self, p: int, start: int = 0) -> EPSet:
        return EPSet.residue_class(self.residue(p), p, start)

    def __eq__(self, other):
        return isinstance(other, UltrafilterTrace) and self.selector == other.selector

    def __hash__(self):
        return hash(self.selector)

    def __repr__(self):
        return f"UltrafilterTrace({self.selector!r})"


def decide(u: UltrafilterTrace, k: EPSet) -> bool:
    return k in u


def frechet_contains(k: EPSet) -> bool:
    """Membership in the filter of cofinite sets."""
    return k.is_cofinite


def frechet_extension_contains(k: EPSet, m: EPSet) -> bool:
    """Whether some cofinite ``L`` has ``k & L <= m``, i.e. ``k - m`` is finite."""
    if not k.is_infinite:
        raise FiniteGenerator("the generating set must be infinite")
    return not (k - m).is_infinite


def cover_select(u: UltrafilterTrace, cover: Sequence[EPSet]) -> int:
    """Index of the first part of a finite cover of the naturals lying in ``u``."""
    if not cover:
        raise NotACover("empty family")
    union = EPSet.empty()
    for part in cover:
        union |= part
    if union != EPSet.naturals():
        missing = (~union).first_from(0)
        raise NotACover(f"the family misses {missing}")
    for i, part in enumerate(cover):
        if part in u:
            return i
    raise AssertionError("no part of a cover was accepted")  # impossible for a genuine ultrafilter
