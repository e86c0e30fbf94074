"""Linearly ordered carrier sets.

A carrier is described by a small immutable descriptor object. Elements are
plain Python values: ``int`` for the integers, :class:`fractions.Fraction`
(or ``int``) for the rationals, an index ``0..k-1`` for a finite chain and a
pair for a lexicographic product. Labels of finite chains are presentation
only.

Density of a lexicographic product ``L x R`` is decided structurally: it is
dense iff ``R`` is dense and, in addition, ``L`` is dense or ``R`` lacks a
minimum or a maximum. For ``(a1, a2) < (b1, b2)`` with ``a1 == b1`` an
interior point needs ``R`` to be dense; with ``a1 < b1`` adjacent in ``L``
one needs something above ``a2`` or below ``b2`` inside ``R``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .errors import DescriptorMismatch, NoInteriorPoint

__all__ = [
    "Ordering",
    "OrderedSet",
    "Integers",
    "Rationals",
    "FiniteOrder",
    "LexProduct",
    "Dual",
    "cmp",
    "is_dense",
    "density_pick",
    "monotone_subsequence",
    "descriptor_from_dict",
]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, a, b) -> "Ordering":
        if a < b:
            return cls.LESS
        if a == b:
            return cls.EQUAL
        return cls.GREATER

    def reversed(self) -> "Ordering":
        return Ordering(-int(self))


class OrderedSet:
    """Base class for carrier descriptors.

    Subclasses implement ``contains`` and ``_cmp``; the remaining structure
    (density, extrema, enumeration) is implemented per carrier.
    """

    kind: str = ""

    def contains(self, x) -> bool:
        raise NotImplementedError

    def check(self, x):
        if not self.contains(x):
            raise DescriptorMismatch(f"{x!r} is not an element of {self}")
        return x

    def cmp(self, a, b) -> Ordering:
        self.check(a)
        self.check(b)
        return self._cmp(a, b)

    def _cmp(self, a, b) -> Ordering:
        raise NotImplementedError

    def le(self, a, b) -> bool:
        return self._cmp(a, b) <= 0

    def lt(self, a, b) -> bool:
        return self._cmp(a, b) < 0

    @property
    def is_dense(self) -> bool:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def has_min(self) -> bool:
        return False

    @property
    def has_max(self) -> bool:
        return False

    def elements(self) -> list:
        """All elements in ascending order (finite carriers only)."""
        raise TypeError(f"{self} is infinite")

    def some_element(self):
        raise NotImplementedError

    def above(self, x):
        """Some element strictly above ``x``; requires no maximum."""
        raise NoInteriorPoint(f"{self} has a maximum")

    def below(self, x):
        """Some element strictly below ``x``; requires no minimum."""
        raise NoInteriorPoint(f"{self} has a minimum")

    def _pick(self, a, b):
        raise NoInteriorPoint(f"{self} is not dense")

    def density_pick(self, a, b):
        if self.cmp(a, b) >= 0:
            raise NoInteriorPoint(f"{self.format(a)} is not below {self.format(b)}")
        c = self._pick(a, b)
        assert self._cmp(a, c) < 0 < self._cmp(b, c)
        return c

    def gap(self):
        """A pair ``p < q`` with nothing strictly between, or ``None``."""
        return None

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        return {"kind": self.kind}

    def encode(self, x) -> Any:
        return x

    def decode(self, v):
        return self.check(v)

    def format(self, x) -> str:
        return str(self.encode(x))


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


@dataclass(frozen=True)
class Integers(OrderedSet):
    kind = "integers"

    def contains(self, x) -> bool:
        return _is_int(x)

    def _cmp(self, a, b):
        return Ordering.of(a, b)

    @property
    def is_dense(self):
        return False

    def some_element(self):
        return 0

    def above(self, x):
        return x + 1

    def below(self, x):
        return x - 1

    def gap(self):
        return 0, 1

    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class Rationals(OrderedSet):
    kind = "rationals"

    def contains(self, x) -> bool:
        return _is_int(x) or isinstance(x, Fraction)

    def _cmp(self, a, b):
        return Ordering.of(a, b)

    @property
    def is_dense(self):
        return True

    def some_element(self):
        return Fraction(0)

    def above(self, x):
        return Fraction(x) + 1

    def below(self, x):
        return Fraction(x) - 1

    def _pick(self, a, b):
        # midpoint; Fraction keeps it in lowest terms
        return (Fraction(a) + Fraction(b)) / 2

    def encode(self, x):
        x = Fraction(x)
        if x.denominator == 1:
            return x.numerator
        return f"{x.numerator}/{x.denominator}"

    def decode(self, v):
        if _is_int(v):
            return Fraction(v)
        if isinstance(v, str):
            try:
                return Fraction(v.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise DescriptorMismatch(f"bad rational {v!r}") from exc
        raise DescriptorMismatch(f"rationals are written as integers or 'p/q' strings, got {v!r}")

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class FiniteOrder(OrderedSet):
    """A finite chain ``labels[0] < labels[1] < ...``, stored by index."""

    labels: tuple = ()
    kind = "finite"

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if not labels:
            raise ValueError("a finite ordered set must be non-empty")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of_size(cls, k: int) -> "FiniteOrder":
        return cls(tuple(f"t{i + 1}" for i in range(k)))

    def __len__(self):
        return len(self.labels)

    def contains(self, x) -> bool:
        return _is_int(x) and 0 <= x < len(self.labels)

    def _cmp(self, a, b):
        return Ordering.of(a, b)

    @property
    def is_dense(self):
        return len(self.labels) == 1

    @property
    def is_finite(self):
        return True

    @property
    def has_min(self):
        return True

    @property
    def has_max(self):
        return True

    def elements(self):
        return list(range(len(self.labels)))

    def some_element(self):
        return 0

    def gap(self):
        if len(self.labels) < 2:
            return None
        return 0, 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DescriptorMismatch(f"{label!r} is not one of {list(self.labels)}") from None

    def to_dict(self):
        return {"kind": self.kind, "elements": list(self.labels)}

    def encode(self, x):
        return self.labels[x]

    def decode(self, v):
        if not isinstance(v, str):
            raise DescriptorMismatch(f"finite elements are written by label, got {v!r}")
        return self.index(v)

    def __str__(self):
        return "{" + "<".join(self.labels) + "}"


@dataclass(frozen=True)
class LexProduct(OrderedSet):
    """Pairs ordered by the left coordinate first, then the right."""

    left: OrderedSet
    right: OrderedSet
    kind = "lex_product"

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == 2
            and self.left.contains(x[0])
            and self.right.contains(x[1])
        )

    def _cmp(self, a, b):
        first = self.left._cmp(a[0], b[0])
        if first:
            return first
        return self.right._cmp(a[1], b[1])

    @property
    def is_dense(self):
        r = self.right
        return r.is_dense and (self.left.is_dense or not (r.has_min and r.has_max))

    @property
    def is_finite(self):
        return self.left.is_finite and self.right.is_finite

    @property
    def has_min(self):
        return self.left.has_min and self.right.has_min

    @property
    def has_max(self):
        return self.left.has_max and self.right.has_max

    def elements(self):
        return [(x, y) for x in self.left.elements() for y in self.right.elements()]

    def some_element(self):
        return self.left.some_element(), self.right.some_element()

    def above(self, x):
        if not self.right.has_max:
            return x[0], self.right.above(x[1])
        return self.left.above(x[0]), x[1]

    def below(self, x):
        if not self.right.has_min:
            return x[0], self.right.below(x[1])
        return self.left.below(x[0]), x[1]

    def _pick(self, a, b):
        if self.left._cmp(a[0], b[0]) == 0:
            return a[0], self.right._pick(a[1], b[1])
        if self.left.is_dense:
            return self.left._pick(a[0], b[0]), a[1]
        if not self.right.has_max:
            return a[0], self.right.above(a[1])
        if not self.right.has_min:
            return b[0], self.right.below(b[1])
        raise NoInteriorPoint(f"{self} is not dense")

    def gap(self):
        if self.is_dense:
            return None
        inner = self.right.gap()
        if inner is not None:
            x = self.left.some_element()
            return (x, inner[0]), (x, inner[1])
        # right is dense with both extrema (a singleton), left has a gap
        outer = self.left.gap()
        top = self.right.elements()[-1] if self.right.is_finite else None
        bottom = self.right.elements()[0] if self.right.is_finite else None
        if outer is None or top is None:
            return None
        return (outer[0], top), (outer[1], bottom)

    def to_dict(self):
        return {"kind": self.kind, "left": self.left.to_dict(), "right": self.right.to_dict()}

    def encode(self, x):
        return [self.left.encode(x[0]), self.right.encode(x[1])]

    def decode(self, v):
        if not isinstance(v, (list, tuple)) or len(v) != 2:
            raise DescriptorMismatch(f"product elements are written as pairs, got {v!r}")
        return self.left.decode(v[0]), self.right.decode(v[1])

    def __str__(self):
        return f"({self.left} x {self.right})"


@dataclass(frozen=True)
class Dual(OrderedSet):
    """The same carrier with the order reversed."""

    base: OrderedSet
    kind = "dual"

    def contains(self, x) -> bool:
        return self.base.contains(x)

    def _cmp(self, a, b):
        return self.base._cmp(b, a)

    @property
    def is_dense(self):
        return self.base.is_dense

    @property
    def is_finite(self):
        return self.base.is_finite

    @property
    def has_min(self):
        return self.base.has_max

    @property
    def has_max(self):
        return self.base.has_min

    def elements(self):
        return self.base.elements()[::-1]

    def some_element(self):
        return self.base.some_element()

    def above(self, x):
        return self.base.below(x)

    def below(self, x):
        return self.base.above(x)

    def _pick(self, a, b):
        return self.base._pick(b, a)

    def gap(self):
        g = self.base.gap()
        return None if g is None else (g[1], g[0])

    def to_dict(self):
        return {"kind": self.kind, "of": self.base.to_dict()}

    def encode(self, x):
        return self.base.encode(x)

    def decode(self, v):
        return self.base.decode(v)

    def __str__(self):
        return f"{self.base}^op"


def cmp(d: OrderedSet, a, b) -> Ordering:
    return d.cmp(a, b)


def is_dense(d: OrderedSet) -> bool:
    return d.is_dense


def density_pick(d: OrderedSet, a, b):
    """Deterministic ``c`` with ``a < c < b``; the midpoint over the rationals."""
    if not d.is_dense:
        raise NoInteriorPoint(f"{d} is not dense")
    return d.density_pick(a, b)


def _longest_chain(d: OrderedSet, xs: Sequence, ok) -> list[int]:
    n = len(xs)
    length = [1] * n
    prev = [-1] * n
    for j in range(n):
        for i in range(j):
            if ok(d._cmp(xs[i], xs[j])) and length[i] + 1 > length[j]:
                length[j] = length[i] + 1
                prev[j] = i
    end = max(range(n), key=lambda j: (length[j], -j))
    out = []
    while end != -1:
        out.append(end)
        end = prev[end]
    return out[::-1]


def monotone_subsequence(
    d: OrderedSet, xs: Sequence, strict: bool = False, direction: str = "either"
) -> list[int]:
    """Indices of a longest monotone subsequence of ``xs``.

    ``direction`` is ``"increasing"``, ``"decreasing"`` or ``"either"`` (the
    longer of the two, increasing on ties). With ``strict`` the input must be
    duplicate-free and the result is strictly monotone. Any input of length
    ``n`` yields at least ``ceil(sqrt(n))`` indices.
    """
    if not xs:
        raise ValueError("monotone_subsequence needs a non-empty list")
    for x in xs:
        d.check(x)
    if strict and any(d._cmp(a, b) == 0 for i, a in enumerate(xs) for b in xs[i + 1:]):
        raise ValueError("strict monotone subsequences need a duplicate-free input")
    if direction not in ("increasing", "decreasing", "either"):
        raise ValueError(f"unknown direction {direction!r}")
    up = (lambda o: o < 0) if strict else (lambda o: o <= 0)
    down = (lambda o: o > 0) if strict else (lambda o: o >= 0)
    best: list[int] = []
    if direction in ("increasing", "either"):
        best = _longest_chain(d, xs, up)
    if direction in ("decreasing", "either"):
        dec = _longest_chain(d, xs, down)
        if len(dec) > len(best):
            best = dec
    if direction == "either":
        assert len(best) >= math.isqrt(len(xs) - 1) + 1
    return best


def descriptor_from_dict(doc) -> OrderedSet:
    """Inverse of ``OrderedSet.to_dict``; raises ``ValueError`` on bad input."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError(f"an ordered-set descriptor needs a 'kind', got {doc!r}")
    kind = doc["kind"]
    if kind == "integers":
        return Integers()
    if kind == "rationals":
        return Rationals()
    if kind == "finite":
        elements = doc.get("elements")
        if not isinstance(elements, list):
            raise ValueError("finite descriptors list their 'elements'")
        return FiniteOrder(tuple(elements))
    if kind == "lex_product":
        return LexProduct(descriptor_from_dict(doc.get("left")), descriptor_from_dict(doc.get("right")))
    if kind == "dual":
        return Dual(descriptor_from_dict(doc.get("of")))
    raise ValueError(f"unknown ordered-set kind {kind!r}")
