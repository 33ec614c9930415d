from fractions import Fraction
from itertools import combinations
from math import comb, prod

import numpy as np
import pytest

from vertex_oddity.basis import Sector, sector_basis
from vertex_oddity.errors import DomainError, SizingError
from vertex_oddity.exact_points import (
    CoulombParams,
    GAMMA_TWO_THIRDS,
    asm_count,
    coulomb_q,
    coulomb_q_bruteforce,
    log_fraction,
    positions_matrix,
    rs_asymptotic_entropy,
    rs_log_pmax,
    rs_norm_squared,
    rs_pmax,
    z_ratio,
    z_ratio_bruteforce,
    z_ratio_exact,
    z_ratio_limit_form,
)
from vertex_oddity.xxz import ground_state


def test_asm_counts():
    assert [asm_count(n) for n in range(1, 9)] == [1, 2, 7, 42, 429, 7436, 218348, 10850216]


def test_gamma_constant():
    from math import gamma

    assert GAMMA_TWO_THIRDS == pytest.approx(gamma(2 / 3), rel=1e-15)


@pytest.mark.parametrize("N", range(1, 30))
def test_pmax_is_inverse_norm(N):
    assert rs_pmax(N) * rs_norm_squared(N) == asm_count(N) ** 2
    p3 = prod(3 * j - 1 for j in range(1, N + 1))
    p2 = prod(2 * j - 1 for j in range(1, N + 1))
    assert rs_pmax(N) == Fraction(4**N * p2**2, 3**N * p3**2)


def test_first_values():
    assert rs_pmax(1) == Fraction(1, 3)
    assert rs_pmax(2) == Fraction(4, 25)
    assert rs_log_pmax(2) == pytest.approx(np.log(0.16), abs=1e-15)


@pytest.mark.parametrize("L", [3, 5, 7, 9, 11, 13, 15])
def test_ed_matches_combinatorial_pmax(L):
    gs = ground_state(Sector.canonical(L), 0.5)
    assert gs.energy == pytest.approx(-1.5 * L, abs=1e-9)
    assert gs.probabilities.max() == pytest.approx(float(rs_pmax((L - 1) // 2)), rel=1e-8)


def test_asymptotic_minus_exact_decreases():
    diffs = [rs_asymptotic_entropy(L) + rs_log_pmax((L - 1) // 2) for L in range(5, 22, 2)]
    assert np.all(np.diff(diffs) < 0)
    assert all(d > 0 for d in diffs)


def test_log_fraction_huge():
    q = Fraction(3**5000, 2**7000)
    assert log_fraction(q) == pytest.approx(5000 * np.log(3) - 7000 * np.log(2), rel=1e-14)
    with pytest.raises(DomainError):
        log_fraction(Fraction(0))


@pytest.mark.parametrize("L", range(1, 13))
def test_q2_is_one(L):
    for N in range(L + 1):
        assert coulomb_q_bruteforce(2, L, N) == pytest.approx(1.0, rel=1e-10)


@pytest.mark.parametrize("L", range(1, 13))
def test_q4_closed_form_both_branches(L):
    for N in range(L + 1):
        assert coulomb_q_bruteforce(4, L, N) == pytest.approx(float(coulomb_q(4, L, N)), rel=1e-10)


def test_q4_known_values():
    assert coulomb_q(4, 4, 2) == Fraction(3, 16)
    assert coulomb_q(4, 4, 3) == Fraction(1, 4)
    assert coulomb_q(4, 3, 2) == Fraction(1, 3)
    assert coulomb_q(4, 5, 0) == 1


def test_q4_by_explicit_pairs():
    # independent of the vectorized code path
    L, N = 6, 3
    eps = np.exp(2j * np.pi / L)
    total = 0.0
    for c in combinations(range(1, L + 1), N):
        w = 1.0
        for i, j in combinations(c, 2):
            w *= abs(eps**i - eps**j) ** 4
        total += w
    assert total / L ** (2 * N) == pytest.approx(float(coulomb_q(4, L, N)), rel=1e-12)


def test_no_closed_form_beta():
    with pytest.raises(DomainError):
        coulomb_q(3, 5, 2)


def test_coulomb_params():
    p = CoulombParams.from_beta(2)
    assert p.alpha == 0.25 and abs(p.delta) < 1e-15
    with pytest.raises(DomainError):
        CoulombParams(2.0, 0.3, 0.0)


@pytest.mark.parametrize("N", range(1, 40))
def test_z_ratio_symbolic(N):
    for a in (Fraction(1, 4), Fraction(1, 2)):
        assert z_ratio_exact(a, N) == Fraction(2 * N + 1, 2 * N) ** N


def test_z_ratio_limit():
    assert abs(z_ratio_limit_form(10**4) - np.exp(0.5)) < 1e-3
    assert z_ratio(0.25, 5) == pytest.approx(z_ratio_bruteforce(0.25, 5), rel=1e-12)
    assert z_ratio(0.5, 5) == pytest.approx(z_ratio_bruteforce(0.5, 5), rel=1e-12)


def test_positions_order_matches_basis():
    pos = positions_matrix(7, 3)
    words = (np.left_shift(1, pos.astype(np.int64) - 1)).sum(axis=1)
    assert np.array_equal(words, sector_basis(Sector(7, 3)))
    assert len(pos) == comb(7, 3)


def test_enumeration_cap():
    with pytest.raises(SizingError):
        positions_matrix(30, 15, cap=10**6)
