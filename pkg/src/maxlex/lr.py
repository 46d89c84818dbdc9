"""Littlewood-Richardson coefficients by direct LR-tableau enumeration."""

from __future__ import annotations

from dataclasses import dataclass

from .partitions import Partition, as_partition


@dataclass(frozen=True)
class LrQuery:
    """Asks for the coefficient of ``outer`` in the product of the two inner shapes."""

    outer: Partition
    inner_left: Partition
    inner_right: Partition

    def __post_init__(self) -> None:
        for name in ("outer", "inner_left", "inner_right"):
            object.__setattr__(self, name, as_partition(getattr(self, name)))

    def size_ok(self) -> bool:
        return self.outer.size() == self.inner_left.size() + self.inner_right.size()


def _count_lr_tableaux(q: LrQuery, stop_at: int | None) -> int:
    nu, lam, mu = q.outer, q.inner_left, q.inner_right
    if not q.size_ok() or not nu.contains(lam) or not nu.contains(mu):
        return 0
    # Cells in reverse reading order: rows top to bottom, each right to left.
    cells = [(r, c) for r in range(len(nu)) for c in range(nu[r] - 1, lam.part(r) - 1, -1)]
    if not cells:
        return 1
    letters = len(mu)
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (letters + 1)
    found = 0

    def place(k: int) -> bool:
        nonlocal found
        if k == len(cells):
            found += 1
            return stop_at is not None and found >= stop_at
        r, c = cells[k]
        hi = filling.get((r, c + 1), letters)
        lo = filling.get((r - 1, c), 0) + 1
        for v in range(lo, hi + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] >= counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            if place(k + 1):
                return True
            counts[v] -= 1
            del filling[(r, c)]
        return False

    place(0)
    return found


def lr_coefficient(q: LrQuery | None = None, *, outer=None, inner_left=None, inner_right=None) -> int:
    """Number of LR tableaux of shape ``outer / inner_left`` and content ``inner_right``.

    Size mismatches and non-contained shapes give 0.
    """
    if q is None:
        q = LrQuery(outer, inner_left, inner_right)
    return _count_lr_tableaux(q, stop_at=None)


def lr_positive(q: LrQuery | None = None, *, outer=None, inner_left=None, inner_right=None) -> bool:
    """Whether the LR coefficient is nonzero; stops at the first tableau found."""
    if q is None:
        q = LrQuery(outer, inner_left, inner_right)
    return _count_lr_tableaux(q, stop_at=1) > 0
