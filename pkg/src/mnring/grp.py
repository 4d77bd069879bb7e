"""The free abelian group on x_1, x_2, ... with its lexicographic total order."""

from __future__ import annotations

import enum
import re
from functools import total_ordering
from typing import Iterable, Mapping


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@total_ordering
class GroupElement:
    """Finitely supported exponent vector, written multiplicatively.

    ``exponents`` is a tuple of ``(index, n_index)`` pairs, indices ascending,
    zero exponents never stored.  The identity is the empty tuple.
    """

    __slots__ = ("exponents", "_hash")

    def __init__(self, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[int, int] = {}
        for i, n in items:
            if i < 1:
                raise ValueError(f"generator index must be positive, got {i}")
            acc[i] = acc.get(i, 0) + int(n)
        self.exponents = tuple(sorted((i, n) for i, n in acc.items() if n))
        self._hash = None

    @classmethod
    def _raw(cls, exponents: tuple[tuple[int, int], ...]) -> "GroupElement":
        obj = cls.__new__(cls)
        obj.exponents = exponents
        obj._hash = None
        return obj

    @classmethod
    def identity(cls) -> "GroupElement":
        return _IDENTITY

    @classmethod
    def gen(cls, i: int, n: int = 1) -> "GroupElement":
        return cls({i: n})

    def exponent(self, i: int) -> int:
        for j, n in self.exponents:
            if j == i:
                return n
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def max_index(self) -> int:
        return self.exponents[-1][0] if self.exponents else 0

    def is_identity(self) -> bool:
        return not self.exponents

    def parity_mask(self, level: int) -> int:
        """Bitmask of indices i <= level with odd exponent."""
        mask = 0
        for i, n in self.exponents:
            if i > level:
                break
            if n & 1:
                mask |= 1 << (i - 1)
        return mask

    def height(self) -> int:
        return sum(abs(n) for _, n in self.exponents)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __pow__(self, k: int) -> "GroupElement":
        return GroupElement._raw(tuple((i, n * k) for i, n in self.exponents) if k else ())

    def __invert__(self) -> "GroupElement":
        return invert(self)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.exponents == other.exponents

    def __lt__(self, other: "GroupElement") -> bool:
        return lex_compare(self, other) is Ordering.LT

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.exponents)
        return self._hash

    def __repr__(self):
        return f"GroupElement({format_group(self)})"

    def __str__(self):
        return format_group(self)


_IDENTITY = GroupElement._raw(())


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    if not g.exponents:
        return h
    if not h.exponents:
        return g
    acc = dict(g.exponents)
    for i, n in h.exponents:
        acc[i] = acc.get(i, 0) + n
    return GroupElement._raw(tuple(sorted((i, n) for i, n in acc.items() if n)))


def invert(g: GroupElement) -> GroupElement:
    return GroupElement._raw(tuple((i, -n) for i, n in g.exponents))


def lex_compare(g: GroupElement, h: GroupElement) -> Ordering:
    """Compare exponent sequences from index 1 upward; absent positions are 0."""
    a, b = g.exponents, h.exponents
    ia = ib = 0
    while ia < len(a) or ib < len(b):
        ja = a[ia][0] if ia < len(a) else None
        jb = b[ib][0] if ib < len(b) else None
        if ja is not None and (jb is None or ja < jb):
            # position ja: g has a[ia][1], h has 0
            return Ordering.LT if a[ia][1] < 0 else Ordering.GT
        if jb is not None and (ja is None or jb < ja):
            return Ordering.GT if b[ib][1] < 0 else Ordering.LT
        na, nb = a[ia][1], b[ib][1]
        if na != nb:
            return Ordering.LT if na < nb else Ordering.GT
        ia += 1
        ib += 1
    return Ordering.EQ


def in_H(g: GroupElement) -> bool:
    """Membership in the subgroup of squares, i.e. all exponents even."""
    return all(n % 2 == 0 for _, n in g.exponents)


def translation_invariance_check(g: GroupElement, h: GroupElement, k: GroupElement) -> bool:
    return lex_compare(g, h) == lex_compare(compose(g, k), compose(h, k))


def format_group(g: GroupElement) -> str:
    """``x1^2*x3^-1`` style, indices ascending; identity prints as ``1``."""
    if not g.exponents:
        return "1"
    return "*".join(f"x{i}" if n == 1 else f"x{i}^{n}" for i, n in g.exponents)


_MONO = re.compile(r"\s*x(\d+)(?:\s*\^\s*(-?\d+))?\s*")


def parse_group(text: str) -> GroupElement:
    """Inverse of :func:`format_group`; factors may appear in any order."""
    text = text.strip()
    if text == "1":
        return GroupElement.identity()
    acc: dict[int, int] = {}
    for part in text.split("*"):
        m = _MONO.fullmatch(part)
        if not m:
            raise ValueError(f"bad group monomial {part!r}")
        i = int(m.group(1))
        acc[i] = acc.get(i, 0) + int(m.group(2) or 1)
    return GroupElement(acc)
