import itertools
import json
from fractions import Fraction
from math import lcm

import pytest

from maxlex.errors import BudgetExceeded, DomainError, NotRectangular, SizeMismatch
from maxlex.kronecker import kronecker_coefficient, phi_set
from maxlex.partitions import Partition, enumerate_partitions, scale
from maxlex.strip_type import (
    corollary_weight_condition,
    counterexample_n_nplus1,
    counterexample_two_by_m,
    max_lex_spectrum,
    rect_strip_type,
)

P = Partition
F = Fraction


def rectangles(size):
    return [P([size // rows] * rows) for rows in range(1, size + 1) if size % rows == 0]


def test_two_by_five_chain():
    d = rect_strip_type(P([2] * 5), P([5, 5]))
    assert d.lam_chain == (P([2] * 5), P([2] * 3), P([2]), P([1]), P())
    assert d.mu_chain == (P([5, 5]), P([3, 3]), P([1, 1]), P([1]), P())
    assert d.nu == P([4, 4, 1, 1])
    assert d.lr_witnesses_ok()


def test_column_against_column():
    for n in range(1, 7):
        assert rect_strip_type(P([1] * n), P([1] * n)).nu == P([n])


def test_three_three_against_two_two_two():
    assert rect_strip_type(P([3, 3]), P([2, 2, 2])).nu == P([4, 1, 1])


def test_errors():
    with pytest.raises(NotRectangular):
        rect_strip_type(P([2, 1]), P([3]))
    with pytest.raises(SizeMismatch):
        rect_strip_type(P([2, 2]), P([3]))


@pytest.mark.parametrize("size", range(1, 13))
def test_strip_type_is_lex_max_with_unit_coefficient(size):
    for lam in rectangles(size):
        for mu in rectangles(size):
            d = rect_strip_type(lam, mu)
            assert d.nu == phi_set(lam, mu).max_lex()
            assert kronecker_coefficient(lam, mu, d.nu) == 1
            assert d.nu.size() == size
            assert d.lr_witnesses_ok()
            for a, b in zip(d.lam_chain, d.lam_chain[1:]):
                assert a.contains(b) and a != b


def test_scaling_equivariance():
    for size in range(1, 9):
        for lam in rectangles(size):
            for mu in rectangles(size):
                nu = rect_strip_type(lam, mu).nu
                for ell in (1, 2, 3):
                    assert rect_strip_type(scale(lam, ell), scale(mu, ell)).nu == scale(nu, ell)


def test_max_lex_spectrum_examples():
    spec, nu, k = max_lex_spectrum(2, 3)
    assert spec.entries == (F(2, 3), F(1, 6), F(1, 6)) and nu == P([4, 1, 1]) and k == 6
    for n in range(1, 6):
        spec, nu, k = max_lex_spectrum(n, n)
        assert spec.entries == (F(1),) and nu == P([n])
    spec, nu, k = max_lex_spectrum(2, 4)
    assert spec.entries == (F(1, 2), F(1, 2)) and nu == P([2, 2]) and k == 4


def test_max_lex_spectrum_domain():
    with pytest.raises(DomainError):
        max_lex_spectrum(3, 2)
    with pytest.raises(DomainError):
        max_lex_spectrum(0, 2)


def test_divisible_case_is_uniform():
    for n in range(1, 5):
        for p in range(1, 5):
            spec, nu, k = max_lex_spectrum(n, n * p)
            assert nu == P([n] * p)
            assert spec.entries == (F(1, p),) * p


def test_counterexample_two_by_three():
    r = counterexample_two_by_m(3)
    assert (r.maxlex_nu, r.maxlex_rank) == (P([4, 1, 1]), 3)
    assert r.witness_gamma == P([3, 3]) and r.witness_g == 1
    assert r.min_rank_bound == 2 and r.refutes_conjecture


def test_counterexample_two_by_five():
    r = counterexample_two_by_m(5)
    assert (r.maxlex_nu, r.maxlex_rank) == (P([4, 4, 1, 1]), 4)
    assert r.witness_gamma == P([4, 3, 3]) and r.witness_g == 1
    assert r.min_rank_bound == 3 and r.refutes_conjecture


def test_counterexample_two_by_seven():
    r = counterexample_two_by_m(7)
    assert (r.maxlex_nu, r.maxlex_rank) == (P([4, 4, 4, 1, 1]), 5)
    assert r.witness_gamma == P([4, 4, 3, 3])
    # value from the class-sum oracle at size 14
    assert r.witness_g == 1
    assert r.min_rank_bound == 4 and r.refutes_conjecture


def test_counterexample_two_by_m_domain():
    for bad in (1, 2, 4):
        with pytest.raises(DomainError):
            counterexample_two_by_m(bad)


def test_counterexample_budget():
    with pytest.raises(BudgetExceeded):
        counterexample_two_by_m(11)
    r = counterexample_two_by_m(11, allow_unverified=True)
    assert r.witness_g is None and not r.refutes_conjecture
    assert r.maxlex_nu == P([4] * 5 + [1, 1])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_counterexample_adjacent(n):
    r = counterexample_n_nplus1(n)
    assert r.maxlex_nu == P([n * n] + [1] * n)
    assert r.maxlex_rank == n + 1
    half = n * (n + 1) // 2
    assert r.witness_gamma == P([half, half])
    assert r.witness_g == 1
    assert r.min_rank_bound == 2
    assert r.maxlex_rank - len(r.witness_gamma) == n - 1
    assert r.refutes_conjecture


def test_counterexample_adjacent_domain():
    with pytest.raises(DomainError):
        counterexample_n_nplus1(1)


def test_report_json():
    d = json.loads(json.dumps(counterexample_two_by_m(5).to_dict()))
    assert d["maxlex_nu"] == [4, 4, 1, 1] and d["witness_gamma"] == [4, 3, 3]
    assert d["witness_rank"] == 3


def brute_weight_condition(p, n, a, nu):
    rows = [r for r in itertools.product(range(n * a + 1), repeat=n) if sum(r) == n * a]
    target = sorted(nu, reverse=True)
    for mat in itertools.product(rows, repeat=p):
        if sorted((x for row in mat for x in row if x), reverse=True) == target:
            return True
    return False


def test_corollary_examples():
    assert corollary_weight_condition(2, 2, 1, P([2, 2]))
    assert not corollary_weight_condition(2, 2, 1, P([4]))
    assert corollary_weight_condition(2, 2, 1, P([2, 1, 1]))
    with pytest.raises(SizeMismatch):
        corollary_weight_condition(2, 2, 1, P([3]))


@pytest.mark.parametrize("p, n, a", [(1, 2, 1), (2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1), (1, 3, 2), (3, 3, 1)])
def test_corollary_against_brute_force(p, n, a):
    for nu in enumerate_partitions(p * n * a):
        assert corollary_weight_condition(p, n, a, nu) == brute_weight_condition(p, n, a, nu), nu


@pytest.mark.parametrize("p, n, a", [(1, 2, 1), (2, 2, 1), (1, 3, 1), (2, 2, 2), (3, 2, 1)])
def test_corollary_witnesses_have_stretched_kronecker(p, n, a):
    # lam = (a^m), mu = ((pa)^n); a stretching factor in {1, 2} suffices at these sizes
    m = p * n
    lam, mu = P([a] * m), P([p * a] * n)
    for nu in enumerate_partitions(m * a):
        if corollary_weight_condition(p, n, a, nu):
            assert any(kronecker_coefficient(scale(lam, k), scale(mu, k), scale(nu, k)) for k in (1, 2)), nu
