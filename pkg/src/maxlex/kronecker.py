"""Brute-force Kronecker coefficients from symmetric-group characters.

Characters are evaluated with the Murnaghan-Nakayama rule on beta-sets
(abacus positions); a Kronecker coefficient is the exact class sum

    g(lam, mu; nu) = sum over classes rho of chi^lam(rho) chi^mu(rho) chi^nu(rho) / z_rho.

These routines are deliberately exhaustive. They are the ground truth the
strip-type construction is checked against.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from pathlib import Path

from .errors import BudgetExceeded, DomainError, SizeMismatch
from .partitions import (
    Partition,
    RationalSpectrum,
    as_partition,
    enumerate_partitions,
    normalize,
    transpose,
)

KRONECKER_BUDGET = 20
PHI_BUDGET = 12
CACHE_ENV = "MAXLEX_CACHE_DIR"


@dataclass(frozen=True)
class ConjugacyClass:
    cycle_type: Partition
    centralizer_order: int

    @property
    def size(self) -> int:
        return factorial(self.cycle_type.size()) // self.centralizer_order


def centralizer_order(rho: Partition) -> int:
    """z_rho = prod_i i^{m_i} m_i! where m_i is the multiplicity of part i."""
    z = 1
    for part in set(rho):
        mult = rho.count(part)
        z *= part**mult * factorial(mult)
    return z


def conjugacy_classes(n: int) -> list[ConjugacyClass]:
    return [ConjugacyClass(rho, centralizer_order(rho)) for rho in enumerate_partitions(n)]


def _hook_dimension(lam: tuple[int, ...]) -> int:
    n = sum(lam)
    conj = transpose(Partition(lam))
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j) + (conj[j] - i) - 1
    return factorial(n) // prod


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], rho: tuple[int, ...]) -> int:
    if not rho:
        return 1
    if rho[0] == 1:
        return _hook_dimension(lam)
    r, rest = rho[0], rho[1:]
    length = len(lam)
    beta = [lam[i] + length - 1 - i for i in range(length)]
    occupied = set(beta)
    total = 0
    for i, b in enumerate(beta):
        target = b - r
        if target < 0 or target in occupied:
            continue
        # Beads jumped over when sliding b down to target give the leg length.
        height = sum(1 for x in beta if target < x < b)
        moved = sorted(beta[:i] + [target] + beta[i + 1 :], reverse=True)
        shape = tuple(x - (length - 1 - j) for j, x in enumerate(moved))
        shape = tuple(p for p in shape if p > 0)
        term = _mn(shape, rest)
        total += -term if height % 2 else term
    return total


def character_value(lam: Partition, rho: Partition) -> int:
    """chi^lam evaluated on the class of cycle type rho (memoized)."""
    lam, rho = as_partition(lam), as_partition(rho)
    if lam.size() != rho.size():
        raise SizeMismatch(f"|{lam}| != |{rho}|")
    return _mn(tuple(lam), tuple(rho))


@dataclass(frozen=True)
class CharacterTable:
    n: int
    classes: tuple[ConjugacyClass, ...]
    values: dict  # (lam, rho) -> int; treat as read-only

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        return self.values[key]

    def irreducibles(self) -> list[Partition]:
        return [c.cycle_type for c in self.classes]

    def row(self, lam: Partition) -> list[int]:
        return [self.values[(lam, c.cycle_type)] for c in self.classes]


_tables: dict[int, CharacterTable] = {}
_tables_lock = threading.Lock()


def _cache_file(cache_dir: str | os.PathLike | None, n: int) -> Path | None:
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    if not cache_dir:
        return None
    return Path(cache_dir) / f"chartable_{n}.txt"


def write_table(table: CharacterTable, path: str | os.PathLike) -> None:
    """Write one ``<lam> <rho> <value>`` line per entry, e.g. ``[2,1] [1,1,1] 2``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        fh.write(f"# character table of S_{table.n}: partition cycle_type value\n")
        for (lam, rho), value in table.values.items():
            fh.write(f"{lam} {rho} {value}\n")
    os.replace(tmp, path)


def read_table(path: str | os.PathLike, n: int) -> CharacterTable:
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            lam, rho, value = line.split()
            values[(Partition.parse(lam), Partition.parse(rho))] = int(value)
    classes = tuple(conjugacy_classes(n))
    expected = len(classes) ** 2
    if len(values) != expected:
        raise ValueError(f"{path}: expected {expected} entries, found {len(values)}")
    return CharacterTable(n, classes, values)


def character_table(n: int, *, budget: int = PHI_BUDGET, cache_dir=None) -> CharacterTable:
    """Full character table of S_n, built at most once per process.

    When a cache directory is given (or set through ``MAXLEX_CACHE_DIR``)
    the table is read from / written to ``chartable_<n>.txt`` there.
    """
    if n > budget:
        raise BudgetExceeded(f"character table of S_{n} exceeds budget n <= {budget}")
    with _tables_lock:
        if n in _tables:
            return _tables[n]
        path = _cache_file(cache_dir, n)
        if path is not None and path.exists():
            table = read_table(path, n)
        else:
            classes = tuple(conjugacy_classes(n))
            values = {
                (lam.cycle_type, rho.cycle_type): _mn(tuple(lam.cycle_type), tuple(rho.cycle_type))
                for lam in classes
                for rho in classes
            }
            table = CharacterTable(n, classes, values)
            if path is not None:
                write_table(table, path)
        _tables[n] = table
        return table


def _check_sizes(*parts: Partition) -> int:
    sizes = {p.size() for p in parts}
    if len(sizes) != 1:
        raise SizeMismatch("partitions must have equal size: " + ", ".join(map(str, parts)))
    return sizes.pop()


def kronecker_coefficient(lam, mu, nu, *, budget: int = KRONECKER_BUDGET) -> int:
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    n = _check_sizes(lam, mu, nu)
    if n > budget:
        raise BudgetExceeded(f"Kronecker coefficient at size {n} exceeds budget n <= {budget}")
    nfact = factorial(n)
    total = 0
    for rho in enumerate_partitions(n):
        key = tuple(rho)
        a = _mn(tuple(lam), key)
        if a == 0:
            continue
        b = _mn(tuple(mu), key)
        if b == 0:
            continue
        c = _mn(tuple(nu), key)
        total += (nfact // centralizer_order(rho)) * a * b * c
    g, rem = divmod(total, nfact)
    if rem:
        raise ArithmeticError(f"non-integral class sum for g({lam},{mu};{nu}): {Fraction(total, nfact)}")
    if g < 0:
        raise ArithmeticError(f"negative Kronecker coefficient g({lam},{mu};{nu}) = {g}")
    return g


def transposed_kronecker(lam, mu, nu, *, budget: int = KRONECKER_BUDGET) -> int:
    """g(lam, mu^t; nu^t), equal to g(lam, mu; nu) by the transposition symmetry."""
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    _check_sizes(lam, mu, nu)
    return kronecker_coefficient(lam, transpose(mu), transpose(nu), budget=budget)


@dataclass(frozen=True)
class PhiSet:
    """The partitions nu with g(lam, mu; nu) > 0, largest first in lex order."""

    lam: Partition
    mu: Partition
    members: tuple[tuple[Partition, int], ...]

    def partitions(self) -> list[Partition]:
        return [nu for nu, _ in self.members]

    def max_lex(self) -> Partition:
        return self.members[0][0]

    def __contains__(self, nu) -> bool:
        return as_partition(nu) in self.partitions()

    def __len__(self) -> int:
        return len(self.members)


def phi_set(lam, mu, *, budget: int = PHI_BUDGET, cache_dir=None) -> PhiSet:
    lam, mu = as_partition(lam), as_partition(mu)
    n = _check_sizes(lam, mu)
    table = character_table(n, budget=budget, cache_dir=cache_dir)
    nfact = factorial(n)
    weights = [
        (nfact // c.centralizer_order) * table[(lam, c.cycle_type)] * table[(mu, c.cycle_type)]
        for c in table.classes
    ]
    members = []
    for nu in enumerate_partitions(n):
        total = sum(w * table[(nu, c.cycle_type)] for w, c in zip(weights, table.classes) if w)
        g, rem = divmod(total, nfact)
        if rem or g < 0:
            raise ArithmeticError(f"invalid class sum for g({lam},{mu};{nu})")
        if g:
            members.append((nu, g))
    return PhiSet(lam, mu, tuple(members))


def uniform_margin_partitions(n: int, m: int) -> tuple[Partition, Partition, int]:
    """Rectangles ((k/n)^n), ((k/m)^m) of size k = lcm(n, m)."""
    if n < 1 or m < 1:
        raise DomainError("dimensions must be positive")
    if n > m:
        raise DomainError(f"need n <= m, got n={n}, m={m}")
    k = lcm(n, m)
    return Partition([k // n] * n), Partition([k // m] * m), k


def rational_spectra_slice(n: int, m: int, ell: int, *, budget: int = PHI_BUDGET) -> list[RationalSpectrum]:
    """Spectra nu / (ell k) for nu in Phi(ell lam, ell mu) with uniform-margin rectangles."""
    if ell < 1:
        raise DomainError("ell must be a positive integer")
    lam, mu, _ = uniform_margin_partitions(n, m)
    phi = phi_set(lam.scale(ell), mu.scale(ell), budget=budget)
    seen = {normalize(nu) for nu in phi.partitions()}
    return sorted(seen, key=lambda s: s.entries, reverse=True)
