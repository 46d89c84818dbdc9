"""Exact partition arithmetic, Young-diagram operations and the two orders.

Everything here is integer or :class:`fractions.Fraction` arithmetic; no
floating point is used, so lexicographic ties are decided exactly.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import ContainmentViolation, EmptyPartition, NotAPartition, SizeMismatch


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))``. Tuple ordering coincides with the
    zero-padded lexicographic order on partitions.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for i, p in enumerate(parts):
            if p <= 0:
                raise NotAPartition(f"non-positive part {p} in {parts}")
            if i and parts[i - 1] < p:
                raise NotAPartition(f"parts not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the bracket form ``[4,1,1]``; ``[2^5]`` and ``[4^2,1,1]`` are accepted.

        Brackets are optional, and ``[]`` or ``∅`` is the empty partition.
        """
        body = text.strip()
        if body in ("", "∅", "[]", "()"):
            return cls()
        if body[0] in "[(" and body[-1] in "])":
            body = body[1:-1]
        parts: list[int] = []
        for token in filter(None, (t.strip() for t in body.split(","))):
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", token)
            if m is None:
                raise NotAPartition(f"cannot parse partition {text!r}")
            value, reps = int(m.group(1)), int(m.group(2) or 1)
            parts.extend([value] * reps)
        return cls(parts)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def size(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """Return part ``i`` (0-based), or 0 past the end."""
        return self[i] if i < len(self) else 0

    def is_rectangular(self) -> bool:
        return len(set(self)) <= 1

    def contains(self, other: "Partition") -> bool:
        """True iff ``other`` fits inside this diagram."""
        return len(other) <= len(self) and all(o <= s for o, s in zip(other, self))

    def transpose(self) -> "Partition":
        return transpose(self)

    def scale(self, ell: int) -> "Partition":
        return scale(self, ell)


def as_partition(p: Partition | Sequence[int] | str) -> Partition:
    if isinstance(p, Partition):
        return p
    if isinstance(p, str):
        return Partition.parse(p)
    return Partition(p)


@dataclass(frozen=True)
class RationalSpectrum:
    """Weakly decreasing vector of exact rationals summing to one."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        entries = tuple(Fraction(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if sum(entries) != 1:
            raise ValueError(f"spectrum does not sum to 1: {entries}")
        if any(e < 0 or e > 1 for e in entries):
            raise ValueError(f"spectrum entries outside [0, 1]: {entries}")
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise ValueError(f"spectrum is not decreasing: {entries}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def rank(self) -> int:
        return sum(1 for e in self.entries if e != 0)

    def padded(self, dim: int) -> tuple[Fraction, ...]:
        if dim < len(self.entries):
            raise ValueError("cannot pad to a shorter length")
        return self.entries + (Fraction(0),) * (dim - len(self.entries))

    def as_strings(self) -> list[str]:
        return [str(e) for e in self.entries]

    def __str__(self) -> str:
        return "(" + ", ".join(self.as_strings()) + ")"


def transpose(p: Partition) -> Partition:
    p = as_partition(p)
    if not p:
        return Partition()
    return Partition(sum(1 for part in p if part > c) for c in range(p[0]))


def intersect(p: Partition, q: Partition) -> Partition:
    """Componentwise minimum of two partitions."""
    p, q = as_partition(p), as_partition(q)
    return Partition(min(a, b) for a, b in zip(p, q))


def skew_as_partition(p: Partition, q: Partition) -> Partition:
    """Return the skew diagram ``p / q`` as a partition, when it is one.

    The skew diagram counts as a partition when its non-empty rows are
    consecutive, share the same left edge, and have weakly decreasing
    lengths, i.e. it is a translate of a Young diagram.
    """
    p, q = as_partition(p), as_partition(q)
    if not p.contains(q):
        raise ContainmentViolation(f"{q} is not contained in {p}")
    rows = [(i, q.part(i), p[i] - q.part(i)) for i in range(len(p)) if p[i] > q.part(i)]
    if not rows:
        return Partition()
    indices = [r[0] for r in rows]
    lefts = {r[1] for r in rows}
    lengths = [r[2] for r in rows]
    if indices != list(range(indices[0], indices[-1] + 1)) or len(lefts) != 1:
        raise NotAPartition(f"skew shape {p}/{q} is not a partition shape")
    try:
        return Partition(lengths)
    except NotAPartition:
        raise NotAPartition(f"skew shape {p}/{q} is not a partition shape") from None


def scale(p: Partition, ell: int) -> Partition:
    if ell < 1:
        raise ValueError("scale factor must be a positive integer")
    return Partition(ell * part for part in as_partition(p))


def normalize(p: Partition) -> RationalSpectrum:
    p = as_partition(p)
    n = p.size()
    if n == 0:
        raise EmptyPartition("cannot normalize the empty partition")
    return RationalSpectrum(tuple(Fraction(part, n) for part in p))


def _padded_pair(a: Sequence, b: Sequence) -> tuple[list, list]:
    width = max(len(a), len(b))
    return list(a) + [0] * (width - len(a)), list(b) + [0] * (width - len(b))


def cmp_lex(a: Sequence, b: Sequence) -> Ordering:
    """Lexicographic comparison with zero padding; entries must be exact."""
    for x, y in zip(*_padded_pair(a, b)):
        if isinstance(x, float) or isinstance(y, float):
            raise TypeError("cmp_lex requires exact integers or rationals")
        if x != y:
            return Ordering.LESS if x < y else Ordering.GREATER
    return Ordering.EQUAL


def cmp_dominance(a: Partition, b: Partition) -> Ordering:
    """Dominance (majorization) order via prefix sums."""
    a, b = as_partition(a), as_partition(b)
    if a.size() != b.size():
        raise SizeMismatch(f"sizes differ: {a.size()} vs {b.size()}")
    below = above = False
    sa = sb = 0
    for x, y in zip(*_padded_pair(a, b)):
        sa += x
        sb += y
        below |= sa < sb
        above |= sa > sb
    if below and above:
        return Ordering.INCOMPARABLE
    if below:
        return Ordering.LESS
    if above:
        return Ordering.GREATER
    return Ordering.EQUAL


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int, max_length: int) -> tuple[Partition, ...]:
    if n == 0:
        return (Partition(),)
    if max_length == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first, max_length - 1):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def enumerate_partitions(n: int, max_length: int | None = None) -> list[Partition]:
    """All partitions of ``n`` in decreasing lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_partitions(n, n, n if max_length is None else max_length))


def subpartitions(p: Partition) -> Iterator[Partition]:
    """All partitions whose diagram fits inside ``p`` (including ∅ and ``p``)."""
    p = as_partition(p)

    def rec(i: int, bound: int, acc: tuple[int, ...]) -> Iterator[Partition]:
        if i == len(p):
            yield Partition(acc)
            return
        for v in range(min(bound, p[i]), -1, -1):
            if v == 0:
                yield Partition(acc)
            else:
                yield from rec(i + 1, v, acc + (v,))

    yield from rec(0, p.part(0), ())
