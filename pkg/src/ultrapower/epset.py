"""Eventually periodic subsets of the natural numbers.

An :class:`EPSet` is stored as an explicit membership prefix for the indices
``0..N-1`` together with a period ``p`` and the set of residues ``r`` such
that every ``n >= N`` with ``n % p == r`` is a member. Residues are taken of
``n`` itself, not of ``n - N``, so the tail pattern does not depend on the
prefix length and two sets align by repeating their patterns up to the lcm
of the periods.

Every instance is kept in canonical form (minimal period, then minimal
prefix), which makes structural equality coincide with set equality.

The tail pattern is held as an ``int`` bitmask: bit ``r`` is set iff residue
``r`` belongs to the set.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from typing import Callable, Iterable

from .errors import PeriodCapExceeded

__all__ = [
    "EPSet",
    "DEFAULT_PERIOD_CAP",
    "period_cap",
    "get_period_cap",
    "ep_complement",
    "ep_intersect",
    "ep_union",
    "ep_is_infinite",
    "ep_superset",
    "ep_member",
]

DEFAULT_PERIOD_CAP = 10_000

_cap: contextvars.ContextVar[int] = contextvars.ContextVar("period_cap", default=DEFAULT_PERIOD_CAP)


def get_period_cap() -> int:
    return _cap.get()


@contextlib.contextmanager
def period_cap(limit: int):
    """Temporarily change the largest period any index set may have."""
    if limit < 1:
        raise ValueError("period cap must be positive")
    token = _cap.set(limit)
    try:
        yield limit
    finally:
        _cap.reset(token)


def check_period(p: int) -> int:
    cap = _cap.get()
    if p > cap:
        raise PeriodCapExceeded(p, cap)
    return p


def _divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _full(p: int) -> int:
    return (1 << p) - 1


def _repeat(mask: int, p: int, length: int) -> int:
    """The length-``length`` pattern obtained by repeating a period-``p`` one."""
    if p == length:
        return mask
    return mask * (_full(length) // _full(p))


def _minimal_period(mask: int, p: int) -> tuple[int, int]:
    full = _full(p)
    for d in _divisors(p):
        if d == p:
            break
        rotated = ((mask >> d) | (mask << (p - d))) & full
        if rotated == mask:
            return d, mask & _full(d)
    return p, mask


class EPSet:
    """An eventually periodic subset of ``{0, 1, 2, ...}``.

    >>> evens = EPSet.residue_class(0, 2)
    >>> sorted(evens.sample(7))
    [0, 2, 4, 6]
    >>> (evens & EPSet.residue_class(0, 3)) == EPSet.residue_class(0, 6)
    True
    """

    __slots__ = ("prefix", "period", "mask", "_hash")

    def __init__(self, prefix: Iterable = (), period: int = 1, residues: Iterable[int] = (), *, mask: int | None = None):
        if period < 1:
            raise ValueError("period must be positive")
        check_period(period)
        if mask is None:
            mask = 0
            for r in residues:
                if not 0 <= r < period:
                    raise ValueError(f"residue {r} out of range for period {period}")
                mask |= 1 << r
        elif mask >> period:
            raise ValueError("mask has bits beyond the period")
        prefix = [bool(b) for b in prefix]
        period, mask = _minimal_period(mask, period)
        n = len(prefix)
        while n and prefix[n - 1] == bool((mask >> ((n - 1) % period)) & 1):
            n -= 1
        self.prefix = tuple(prefix[:n])
        self.period = period
        self.mask = mask
        self._hash = hash((self.prefix, period, mask))

    # -- constructors --------------------------------------------------
    @classmethod
    def empty(cls) -> "EPSet":
        return cls()

    @classmethod
    def naturals(cls) -> "EPSet":
        return cls(mask=1)

    @classmethod
    def finite(cls, members: Iterable[int]) -> "EPSet":
        members = set(members)
        if any(m < 0 for m in members):
            raise ValueError("members must be natural numbers")
        n = max(members) + 1 if members else 0
        return cls([i in members for i in range(n)])

    @classmethod
    def cofinite(cls, excluded: Iterable[int]) -> "EPSet":
        return ~cls.finite(excluded)

    @classmethod
    def residue_class(cls, r: int, p: int, start: int = 0) -> "EPSet":
        """``{n >= start : n % p == r % p}``."""
        r %= p
        return cls([False] * start, p, mask=1 << r)

    @classmethod
    def from_window(cls, offset: int, period: int, member: Callable[[int], bool]) -> "EPSet":
        """Build the set from a predicate known to be ``period``-periodic from ``offset`` on."""
        check_period(period)
        prefix = [bool(member(n)) for n in range(offset)]
        mask = 0
        for n in range(offset, offset + period):
            if member(n):
                mask |= 1 << (n % period)
        return cls(prefix, period, mask=mask)

    # -- queries -------------------------------------------------------
    @property
    def offset(self) -> int:
        return len(self.prefix)

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(r for r in range(self.period) if (self.mask >> r) & 1)

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n < len(self.prefix):
            return self.prefix[n]
        return bool((self.mask >> (n % self.period)) & 1)

    def member(self, n: int) -> bool:
        return n in self

    @property
    def is_infinite(self) -> bool:
        return self.mask != 0

    @property
    def is_cofinite(self) -> bool:
        return self.mask == _full(self.period)

    def sample(self, stop: int) -> list[int]:
        return [n for n in range(stop) if n in self]

    def finite_members(self) -> list[int]:
        if self.is_infinite:
            raise ValueError("set is infinite")
        return self.sample(len(self.prefix))

    def first_from(self, start: int) -> int | None:
        """Smallest member ``>= start``, or ``None``."""
        stop = max(start, len(self.prefix)) + self.period
        for n in range(start, stop):
            if n in self:
                return n
        return None

    # -- algebra -------------------------------------------------------
    def _aligned(self, other: "EPSet"):
        length = check_period(math.lcm(self.period, other.period))
        offset = max(len(self.prefix), len(other.prefix))
        return (
            offset,
            length,
            _repeat(self.mask, self.period, length),
            _repeat(other.mask, other.period, length),
        )

    def __and__(self, other: "EPSet") -> "EPSet":
        offset, length, a, b = self._aligned(other)
        prefix = [(n in self) and (n in other) for n in range(offset)]
        return EPSet(prefix, length, mask=a & b)

    def __or__(self, other: "EPSet") -> "EPSet":
        offset, length, a, b = self._aligned(other)
        prefix = [(n in self) or (n in other) for n in range(offset)]
        return EPSet(prefix, length, mask=a | b)

    def __invert__(self) -> "EPSet":
        return EPSet([not b for b in self.prefix], self.period, mask=_full(self.period) & ~self.mask)

    def __sub__(self, other: "EPSet") -> "EPSet":
        return self & ~other

    def __xor__(self, other: "EPSet") -> "EPSet":
        return (self - other) | (other - self)

    def issubset(self, other: "EPSet") -> bool:
        offset, length, a, b = self._aligned(other)
        if a & ~b:
            return False
        return all(n in other for n in range(offset) if n in self)

    def issuperset(self, other: "EPSet") -> bool:
        return other.issubset(self)

    __le__ = issubset
    __ge__ = issuperset

    def without_below(self, k: int) -> "EPSet":
        """``self`` minus ``{0, ..., k-1}``."""
        return self - EPSet.finite(range(k))

    def __eq__(self, other):
        if not isinstance(other, EPSet):
            return NotImplemented
        return self.prefix == other.prefix and self.period == other.period and self.mask == other.mask

    def __hash__(self):
        return self._hash

    def __repr__(self):
        bits = "".join("1" if b else "0" for b in self.prefix)
        return f"EPSet(prefix={bits!r}, period={self.period}, residues={list(self.residues)})"

    def describe(self) -> str:
        if not self.is_infinite:
            return "{" + ", ".join(map(str, self.finite_members())) + "}"
        tail = f"n % {self.period} in {list(self.residues)}" if self.period > 1 else "all n"
        if not self.prefix:
            return "{n : " + tail + "}"
        return f"{{n < {self.offset} : bits {''.join('1' if b else '0' for b in self.prefix)}}} + {{n >= {self.offset} : {tail}}}"

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        return {"prefix": [int(b) for b in self.prefix], "period": self.period, "residues": list(self.residues)}

    @classmethod
    def from_dict(cls, doc: dict) -> "EPSet":
        return cls(doc.get("prefix", ()), int(doc["period"]), doc.get("residues", ()))


def ep_complement(k: EPSet) -> EPSet:
    return ~k


def ep_intersect(k: EPSet, l: EPSet) -> EPSet:
    return k & l


def ep_union(k: EPSet, l: EPSet) -> EPSet:
    return k | l


def ep_is_infinite(k: EPSet) -> bool:
    return k.is_infinite


def ep_superset(k: EPSet, l: EPSet) -> bool:
    """True iff ``l`` is contained in ``k``."""
    return l.issubset(k)


def ep_member(k: EPSet, n: int) -> bool:
    return n in k
