"""Bipartite states with uniform margins built from generalized Weyl operators.

Tensor convention: basis vector |a>|b> of C^n ⊗ C^m sits at index a*m + b.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .eigen import check_hermitian, jacobi_eigh
from .errors import (
    DivisibilityError,
    DomainError,
    IndexOutOfRange,
    RankDeficiencyWarning,
    RankOutOfRange,
    WeightConstraintViolation,
)

STATE_TOL = 1e-12
PSD_TOL = 1e-10
MARGIN_TOL = 1e-9
RANK_TOL = 1e-9
NULL_TOL = 1e-8
GAP_TOL = 1e-7


def weyl_x(m: int) -> np.ndarray:
    """Cyclic shift X|i> = |i+1 mod m>."""
    if m < 1:
        raise DomainError("m must be positive")
    return np.roll(np.eye(m, dtype=complex), 1, axis=0)


def weyl_z(n: int, m: int) -> np.ndarray:
    """Clock operator on C^m with phases omega^i, omega = exp(2 pi i / n)."""
    if not 1 <= n <= m:
        raise DomainError(f"need 1 <= n <= m, got n={n}, m={m}")
    return np.diag(np.exp(2j * np.pi * np.arange(m) / n))


def psi_state(n: int, m: int, i: int, j: int) -> np.ndarray:
    """(I_n ⊗ X^i Z_n^j) applied to (1/sqrt n) sum_s |s>|s>."""
    if not 1 <= n <= m:
        raise DomainError(f"need 1 <= n <= m, got n={n}, m={m}")
    if not (0 <= i < m and 0 <= j < n):
        raise IndexOutOfRange(f"psi index ({i}, {j}) outside [0,{m}) x [0,{n})")
    vec = np.zeros(n * m, dtype=complex)
    s = np.arange(n)
    vec[s * m + (s + i) % m] = np.exp(2j * np.pi * j * s / n) / math.sqrt(n)
    return vec


def psi_basis(n: int, m: int) -> np.ndarray:
    """All psi_ij as columns, column index i*n + j."""
    return np.column_stack([psi_state(n, m, i, j) for i in range(m) for j in range(n)])


@dataclass(frozen=True)
class WeightMatrix:
    """Mixture weights; rows indexed by shift i, columns by phase j.

    ``mode`` is ``"full"`` (m x n, rows sum to 1/m) or ``"divisible"``
    (p x n with p = m/n, rows sum to 1/p).
    """

    entries: tuple[tuple, ...]
    mode: str = "full"

    def __post_init__(self) -> None:
        rows = tuple(tuple(_exact_or_float(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if self.mode not in ("full", "divisible"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def nonzero_count(self) -> int:
        return sum(1 for row in self.entries for x in row if x != 0)

    def validate(self, n: int, m: int) -> None:
        rows = m if self.mode == "full" else m // n
        if self.shape != (rows, n) or any(len(r) != n for r in self.entries):
            raise WeightConstraintViolation(f"{self.mode} weights must be {rows} x {n}, got {self.shape}")
        target = Fraction(1, rows)
        for idx, row in enumerate(self.entries):
            if any(x < 0 for x in row):
                raise WeightConstraintViolation(f"negative weight in row {idx}")
            if abs(sum(row) - target) > STATE_TOL:
                raise WeightConstraintViolation(f"row {idx} sums to {sum(row)}, expected {target}")
        if abs(sum(sum(row) for row in self.entries) - 1) > STATE_TOL:
            raise WeightConstraintViolation("weights do not sum to 1")

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, rows, mode: str = "full") -> "WeightMatrix":
        return cls(tuple(tuple(rows_i) for rows_i in rows), mode)


def _exact_or_float(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return float(x)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    dim_a: int
    dim_b: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        d = self.dim_a * self.dim_b
        mat = np.array(self.matrix, dtype=complex)
        if mat.shape != (d, d):
            raise DomainError(f"matrix shape {mat.shape} does not match {self.dim_a}x{self.dim_b}")
        mat = check_hermitian(mat, STATE_TOL)
        if abs(np.trace(mat) - 1) > STATE_TOL:
            raise DomainError(f"trace {np.trace(mat).real:.15g} != 1")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        if self.eigensystem[0][-1] < -PSD_TOL:
            raise DomainError(f"not positive semidefinite: min eigenvalue {self.eigensystem[0][-1]:.3e}")

    @cached_property
    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        return jacobi_eigh(self.matrix)

    def to_json(self) -> dict:
        flat = self.matrix.reshape(-1)
        return {
            "dim_a": self.dim_a,
            "dim_b": self.dim_b,
            "entries": [[float(z.real), float(z.imag)] for z in flat],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "DensityOperator":
        if isinstance(data, str):
            data = json.loads(data)
        n, m = int(data["dim_a"]), int(data["dim_b"])
        pairs = np.asarray(data["entries"], dtype=float)
        if pairs.shape != ((n * m) ** 2, 2):
            raise DomainError(f"expected {(n * m) ** 2} [re, im] pairs")
        mat = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(n * m, n * m)
        return cls(n, m, mat)


def _mixture(n: int, m: int, vectors: list[np.ndarray], weights: list[float]) -> DensityOperator:
    psi = np.column_stack(vectors)
    rho = (psi * np.asarray(weights)) @ psi.conj().T
    return DensityOperator(n, m, (rho + rho.conj().T) / 2)


def construct_full(n: int, m: int, weights: WeightMatrix) -> DensityOperator:
    """rho = sum_ij w_ij |psi_ij><psi_ij| with an m x n weight matrix."""
    if not 1 <= n <= m:
        raise DomainError(f"need 1 <= n <= m, got n={n}, m={m}")
    if weights.mode != "full":
        weights = WeightMatrix(weights.entries, "full")
    weights.validate(n, m)
    w = weights.array()
    vecs, ws = [], []
    for i in range(m):
        for j in range(n):
            vecs.append(psi_state(n, m, i, j))
            ws.append(w[i, j])
    return _mixture(n, m, vecs, ws)


def construct_divisible(n: int, m: int, weights: WeightMatrix) -> DensityOperator:
    """rho = sum_ij t_ij |psi_{in,j}><psi_{in,j}| with a (m/n) x n weight matrix."""
    if not 1 <= n <= m:
        raise DomainError(f"need 1 <= n <= m, got n={n}, m={m}")
    if m % n:
        raise DivisibilityError(f"{n} does not divide {m}")
    if weights.mode != "divisible":
        weights = WeightMatrix(weights.entries, "divisible")
    weights.validate(n, m)
    w = weights.array()
    vecs, ws = [], []
    for i in range(m // n):
        for j in range(n):
            vecs.append(psi_state(n, m, i * n, j))
            ws.append(w[i, j])
    return _mixture(n, m, vecs, ws)


def weight_for_rank(n: int, m: int, k: int, mode: str = "full") -> WeightMatrix:
    """Canonical weight matrix with exactly k nonzero entries.

    Every row gets at least one nonzero; the surplus is handed out row by row,
    filling each row to n before moving on. A row's nonzeros are equal and
    occupy its leading columns.
    """
    if not 1 <= n <= m:
        raise DomainError(f"need 1 <= n <= m, got n={n}, m={m}")
    if mode == "full":
        rows = m
    elif mode == "divisible":
        if m % n:
            raise DivisibilityError(f"{n} does not divide {m}")
        rows = m // n
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if not rows <= k <= rows * n:
        raise RankOutOfRange(f"rank {k} outside [{rows}, {rows * n}] for {mode} construction")
    counts = [1] * rows
    extra = k - rows
    for i in range(rows):
        take = min(n - 1, extra)
        counts[i] += take
        extra -= take
    entries = tuple(
        tuple(Fraction(1, rows * q) if j < q else Fraction(0) for j in range(n)) for q in counts
    )
    return WeightMatrix(entries, mode)


def construct(n: int, m: int, k: int, mode: str = "full") -> DensityOperator:
    weights = weight_for_rank(n, m, k, mode)
    return construct_full(n, m, weights) if mode == "full" else construct_divisible(n, m, weights)


def _as_matrix(rho) -> tuple[np.ndarray, int, int]:
    if isinstance(rho, DensityOperator):
        return rho.matrix, rho.dim_a, rho.dim_b
    raise TypeError("expected a DensityOperator")


def partial_trace_b(rho: DensityOperator | np.ndarray, dims: tuple[int, int] | None = None) -> np.ndarray:
    """Trace out B, leaving an n x n matrix."""
    if dims is None:
        mat, n, m = _as_matrix(rho)
    else:
        (n, m), mat = dims, np.asarray(rho)
    return np.einsum("ajbj->ab", mat.reshape(n, m, n, m))


def partial_trace_a(rho: DensityOperator | np.ndarray, dims: tuple[int, int] | None = None) -> np.ndarray:
    """Trace out A, leaving an m x m matrix."""
    if dims is None:
        mat, n, m = _as_matrix(rho)
    else:
        (n, m), mat = dims, np.asarray(rho)
    return np.einsum("iaib->ab", mat.reshape(n, m, n, m))


def margin_errors(rho: DensityOperator) -> tuple[float, float]:
    """Max entrywise deviation of tr_B rho from I/n and of tr_A rho from I/m."""
    n, m = rho.dim_a, rho.dim_b
    err_a = float(np.max(np.abs(partial_trace_b(rho) - np.eye(n) / n)))
    err_b = float(np.max(np.abs(partial_trace_a(rho) - np.eye(m) / m)))
    return err_a, err_b


def spectrum(h) -> np.ndarray:
    """Eigenvalues in decreasing order."""
    if isinstance(h, DensityOperator):
        return h.eigensystem[0].copy()
    return jacobi_eigh(h)[0]


def numerical_rank(h, tol: float = RANK_TOL) -> int:
    w = spectrum(h)
    if w.size == 0:
        return 0
    return int(np.sum(w > tol * max(1.0, w[0])))


@dataclass(frozen=True)
class RankBounds:
    lower: int
    upper: int

    def __contains__(self, rank: int) -> bool:
        return self.lower <= rank <= self.upper


def rank_bounds(k_a: int, k_b: int) -> RankBounds:
    """ceil(k_b / k_a) <= rank <= k_a k_b for states with margin ranks k_a <= k_b."""
    if not 1 <= k_a <= k_b:
        raise DomainError(f"need 1 <= k_a <= k_b, got {k_a}, {k_b}")
    return RankBounds(-(-k_b // k_a), k_a * k_b)


class SchurResult(NamedTuple):
    majorized: bool
    equality: bool


def schur_check(h, slack: float = 1e-9, eq_tol: float = 1e-10) -> SchurResult:
    """Is the sorted diagonal of h majorized by its spectrum, and are they equal?"""
    h = check_hermitian(h.matrix if isinstance(h, DensityOperator) else h)
    diag = np.sort(h.diagonal().real)[::-1]
    spec = spectrum(h)
    majorized = bool(np.all(np.cumsum(diag) <= np.cumsum(spec) + slack)) and abs(diag.sum() - spec.sum()) <= slack
    equality = bool(np.max(np.abs(diag - spec), initial=0.0) <= eq_tol)
    return SchurResult(majorized, equality)


def _hermitian_basis(r: int) -> np.ndarray:
    """Orthonormal real basis of r x r Hermitian matrices, shape (r*r, r, r)."""
    basis = []
    for k in range(r):
        e = np.zeros((r, r), dtype=complex)
        e[k, k] = 1
        basis.append(e)
    for k in range(r):
        for l in range(k + 1, r):
            e = np.zeros((r, r), dtype=complex)
            e[k, l] = e[l, k] = 1 / math.sqrt(2)
            basis.append(e)
            e = np.zeros((r, r), dtype=complex)
            e[k, l], e[l, k] = 1j / math.sqrt(2), -1j / math.sqrt(2)
            basis.append(e)
    return np.array(basis)


class ExtremalityResult(NamedTuple):
    is_extreme: bool
    nullity: int
    rank: int
    reliable: bool


def extremality_check(rho: DensityOperator, rank_tol: float = RANK_TOL, null_tol: float = NULL_TOL) -> ExtremalityResult:
    """Decide whether rho is an extreme point of the states sharing its margins.

    rho is extreme exactly when no nonzero Hermitian H supported on range(rho)
    has V H V^dagger with both partial traces zero (V an isometry onto the
    range). The nullity of that real-linear map is returned alongside.
    """
    w, vecs = rho.eigensystem
    n, m = rho.dim_a, rho.dim_b
    r = int(np.sum(w > rank_tol * max(1.0, w[0])))
    reliable = True
    if r < w.size and w[r - 1] - w[r] < GAP_TOL:
        reliable = False
        warnings.warn(f"eigen-gap {w[r - 1] - w[r]:.2e} at rank cutoff {r}", RankDeficiencyWarning, stacklevel=2)
    v = vecs[:, :r].reshape(n, m, r)
    basis = _hermitian_basis(r)
    # tr_B(V H V^dagger)[a, c] = sum_b V[a,b,k] H[k,l] conj(V[c,b,l]); likewise for tr_A.
    margin_a = np.einsum("abk,tkl,cbl->tac", v, basis, v.conj())
    margin_b = np.einsum("abk,tkl,adl->tbd", v, basis, v.conj())
    stacked = np.concatenate([margin_a.reshape(r * r, -1), margin_b.reshape(r * r, -1)], axis=1)
    real_map = np.concatenate([stacked.real, stacked.imag], axis=1).T
    sv = np.linalg.svd(real_map, compute_uv=False)
    nullity = r * r - int(np.sum(sv >= null_tol))
    return ExtremalityResult(nullity == 0, nullity, r, reliable)
