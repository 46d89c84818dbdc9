"""Strip-type derivation for rectangular pairs and the counterexample families.

For rectangles lam, mu of equal size, the only strip-type chain peels off
the common corner lam ∩ mu at every step:

    lam(i+1) = lam(i) / (lam(i) ∩ mu(i)),   mu(i+1) = mu(i) / (lam(i) ∩ mu(i)),

and nu_i = |lam(i) ∩ mu(i)|. The resulting nu is the lex-largest member of
Phi(lam, mu), which fixes the lex-maximal spectrum nu / k for uniform margins.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import ceil

from .errors import BudgetExceeded, DomainError, NotRectangular, SizeMismatch
from .kronecker import KRONECKER_BUDGET, kronecker_coefficient, uniform_margin_partitions
from .lr import lr_positive
from .partitions import (
    Partition,
    RationalSpectrum,
    as_partition,
    intersect,
    normalize,
    skew_as_partition,
)


@dataclass(frozen=True)
class StripDerivation:
    lam_chain: tuple[Partition, ...]
    mu_chain: tuple[Partition, ...]
    nu: Partition

    def steps(self) -> int:
        return len(self.nu)

    def lr_witnesses_ok(self) -> bool:
        """Check both LR positivity conditions at every step of the chains."""
        for i in range(self.steps()):
            common = intersect(self.lam_chain[i], self.mu_chain[i])
            if not lr_positive(outer=self.lam_chain[i], inner_left=common, inner_right=self.lam_chain[i + 1]):
                return False
            if not lr_positive(outer=self.mu_chain[i], inner_left=common, inner_right=self.mu_chain[i + 1]):
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "lam_chain": [list(p) for p in self.lam_chain],
            "mu_chain": [list(p) for p in self.mu_chain],
            "nu": list(self.nu),
        }


def rect_strip_type(lam, mu) -> StripDerivation:
    lam, mu = as_partition(lam), as_partition(mu)
    if not lam.is_rectangular() or not mu.is_rectangular():
        raise NotRectangular(f"both partitions must be rectangles: {lam}, {mu}")
    if lam.size() != mu.size():
        raise SizeMismatch(f"|{lam}| != |{mu}|")
    lam_chain, mu_chain, nu = [lam], [mu], []
    while lam_chain[-1]:
        a, b = lam_chain[-1], mu_chain[-1]
        common = intersect(a, b)
        nu.append(common.size())
        lam_chain.append(skew_as_partition(a, common))
        mu_chain.append(skew_as_partition(b, common))
        if not (lam_chain[-1].is_rectangular() and mu_chain[-1].is_rectangular()):
            raise AssertionError(f"non-rectangular step from {a}, {b}")
    return StripDerivation(tuple(lam_chain), tuple(mu_chain), Partition(nu))


def max_lex_spectrum(n: int, m: int) -> tuple[RationalSpectrum, Partition, int]:
    """Lex-maximal spectrum of states with margins I_n/n and I_m/m.

    Returns ``(nu / k, nu, k)`` with ``k = lcm(n, m)``; such states have rank
    ``len(nu)``.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    lam, mu, k = uniform_margin_partitions(n, m)
    nu = rect_strip_type(lam, mu).nu
    return normalize(nu), nu, k


@dataclass(frozen=True)
class CounterexampleReport:
    n: int
    m: int
    maxlex_nu: Partition
    maxlex_rank: int
    witness_gamma: Partition
    witness_g: int | None  # None when the oracle could not run within budget
    min_rank_bound: int
    refutes_conjecture: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["maxlex_nu"] = list(self.maxlex_nu)
        d["witness_gamma"] = list(self.witness_gamma)
        d["witness_rank"] = len(self.witness_gamma)
        return d


def _report(n: int, m: int, gamma: Partition, budget: int, allow_unverified: bool) -> CounterexampleReport:
    lam, mu, _ = uniform_margin_partitions(n, m)
    nu = rect_strip_type(lam, mu).nu
    try:
        g = kronecker_coefficient(lam, mu, gamma, budget=budget)
    except BudgetExceeded:
        if not allow_unverified:
            raise
        g = None
    return CounterexampleReport(
        n=n,
        m=m,
        maxlex_nu=nu,
        maxlex_rank=len(nu),
        witness_gamma=gamma,
        witness_g=g,
        min_rank_bound=ceil(Fraction(m, n)),
        refutes_conjecture=g is not None and g >= 1 and len(gamma) < len(nu),
    )


def counterexample_two_by_m(m: int, *, budget: int = KRONECKER_BUDGET, allow_unverified: bool = False) -> CounterexampleReport:
    """Margins I_2/2, I_m/m for odd m = 2k+1: witness gamma = (4^(k-1), 3, 3)."""
    if m < 3 or m % 2 == 0:
        raise DomainError(f"m must be odd and at least 3, got {m}")
    k = (m - 1) // 2
    gamma = Partition([4] * (k - 1) + [3, 3])
    return _report(2, m, gamma, budget, allow_unverified)


def counterexample_n_nplus1(n: int, *, budget: int = KRONECKER_BUDGET, allow_unverified: bool = False) -> CounterexampleReport:
    """Margins I_n/n, I_(n+1)/(n+1): witness gamma is the two-row rectangle of size n(n+1)."""
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    half = n * (n + 1) // 2
    return _report(n, n + 1, Partition([half, half]), budget, allow_unverified)


def corollary_weight_condition(p: int, n: int, a: int, nu) -> bool:
    """Is there a p x n nonnegative integer matrix, rows summing to n*a, whose
    nonzero entries are exactly the parts of nu?

    Parts are placed largest first into rows with backtracking; rows that are
    still empty are interchangeable, so only the first of them is tried.
    """
    nu = as_partition(nu)
    if nu.size() != p * n * a:
        raise SizeMismatch(f"|nu| = {nu.size()} but p*n*a = {p * n * a}")
    if len(nu) > p * n:
        return False
    target = n * a
    sums = [0] * p
    slots = [0] * p
    parts = list(nu)

    def place(i: int) -> bool:
        if i == len(parts):
            return all(s == target for s in sums)
        tried_empty = False
        for r in range(p):
            if slots[r] == n or sums[r] + parts[i] > target:
                continue
            if slots[r] == 0:
                if tried_empty:
                    continue
                tried_empty = True
            sums[r] += parts[i]
            slots[r] += 1
            if place(i + 1):
                return True
            sums[r] -= parts[i]
            slots[r] -= 1
        return False

    return place(0)
