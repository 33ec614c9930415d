"""Exactly solvable points: Delta = 1/2 combinatorics and the discrete Coulomb gas.

Everything that can be rational is kept as ``fractions.Fraction`` or ``int``
and only turned into a float (usually a log) at the boundary.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, log

import numpy as np
from scipy.special import logsumexp

from .basis import Sector, sector_basis
from .errors import DomainError, SizingError
from .free_fermion import log_chord_sum

# Gamma(2/3) to 40 significant digits
GAMMA_TWO_THIRDS = 1.354117939426400416945288028154513785519

ENUMERATION_CAP = 10**7


def log_fraction(q):
    """Natural log of a positive Fraction without going through a float."""
    q = Fraction(q)
    if q <= 0:
        raise DomainError(f"log of non-positive value {q}")
    return log(q.numerator) - log(q.denominator)


# ---------------------------------------------------------------------------
# Delta = 1/2, odd L = 2N + 1, S^z = +1/2


def asm_count(N):
    """Number of N x N alternating sign matrices, prod_j (3j+1)! / (N+j)!."""
    if N < 1:
        raise DomainError("N must be >= 1")
    num = 1
    den = 1
    for j in range(N):
        num *= factorial(3 * j + 1)
        den *= factorial(N + j)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"ASM product is not an integer at N={N}")
    return q


def _odd_products(N):
    # prod_{j=1}^N (3j - 1) and prod_{j=1}^N (2j - 1)
    p3 = 1
    p2 = 1
    for j in range(1, N + 1):
        p3 *= 3 * j - 1
        p2 *= 2 * j - 1
    return p3, p2


def rs_norm_squared(N):
    """Squared norm of the ground state rescaled so that psi_{1,2,...,N} = 1."""
    p3, p2 = _odd_products(N)
    return Fraction(3**N * p3 * p3, 4**N * p2 * p2) * asm_count(N) ** 2


def rs_pmax(N):
    """Exact p_max at Delta = 1/2, L = 2N + 1.

    The bracket sqrt(3)^N / 2^N prod (3j-1)/(2j-1) squares to a rational, so
    p_max = (4/3)^N prod ((2j-1)/(3j-1))^2 exactly.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    p3, p2 = _odd_products(N)
    return Fraction(4**N * p2 * p2, 3**N * p3 * p3)


def rs_log_pmax(N):
    return log_fraction(rs_pmax(N))


def rs_asymptotic_entropy(L):
    """Large-L form L log(3 sqrt3 / 4) + (1/3) log(L/2) + const of S_inf."""
    if L < 3 or L % 2 == 0:
        raise DomainError(f"L must be odd and >= 3, got {L}")
    lin = log(3 * np.sqrt(3) / 4)
    const = log(4 * np.pi / (3 * np.sqrt(3) * GAMMA_TWO_THIRDS**2))
    return L * lin + log(L / 2) / 3 + const


RS_LINEAR_COEFF = log(3 * np.sqrt(3) / 4)
RS_LOG_COEFF = Fraction(1, 3)


# ---------------------------------------------------------------------------
# Discrete Coulomb gas on a ring of L sites


@dataclass(frozen=True)
class CoulombParams:
    beta: float
    alpha: float
    delta: float

    def __post_init__(self):
        if abs(self.beta - 8 * self.alpha) > 1e-12:
            raise DomainError("beta must equal 8 alpha")
        if abs(self.delta + np.cos(2 * np.pi * self.alpha)) > 1e-12:
            raise DomainError("delta must equal -cos(2 pi alpha)")

    @classmethod
    def from_alpha(cls, alpha):
        return cls(8 * alpha, alpha, -np.cos(2 * np.pi * alpha))

    @classmethod
    def from_beta(cls, beta):
        return cls.from_alpha(beta / 8)


def _check_LN(L, N):
    if L < 1 or not 0 <= N <= L:
        raise DomainError(f"invalid (L, N) = ({L}, {N})")


def coulomb_q(beta, L, N):
    """Gaudin's closed forms of Q_beta(L, N) for beta in {2, 4}, as a Fraction."""
    _check_LN(L, N)
    if beta == 2:
        return Fraction(1)
    if beta == 4:
        if 2 * N <= L:
            return Fraction(factorial(2 * N), 2**N * factorial(N) * L**N)
        M = L - N
        # particle-hole image of the first branch
        return Fraction(factorial(2 * M), 2**M * factorial(M) * L**M)
    raise DomainError(f"no closed form for beta={beta}; only beta in {{2, 4}}")


def positions_matrix(L, N, cap=ENUMERATION_CAP):
    """All N-subsets of {1..L} as rows, in sector-basis order."""
    _check_LN(L, N)
    if comb(L, N) > cap:
        raise SizingError(f"C({L},{N}) = {comb(L, N)} exceeds enumeration cap {cap}")
    if N == 0:
        return np.zeros((1, 0), dtype=np.int16)
    words = sector_basis(Sector(L, N)) if L >= 3 else _small_words(L, N)
    pos = np.empty((len(words), N), dtype=np.int16)
    filled = np.zeros(len(words), dtype=np.int64)
    for j in range(L):
        occ = ((words >> j) & 1).astype(bool)
        pos[occ, filled[occ]] = j + 1
        filled[occ] += 1
    return pos


def _small_words(L, N):
    return np.array([w for w in range(1 << L) if bin(w).count("1") == N], dtype=np.int64)


def log_boltzmann_weights(beta, L, N, cap=ENUMERATION_CAP):
    """beta * sum_{j<k} log|eps^{n_j} - eps^{n_k}| for every configuration."""
    pos = positions_matrix(L, N, cap)
    if N < 2:
        return np.zeros(len(pos))
    return beta * log_chord_sum(L, pos)


def log_coulomb_q_bruteforce(beta, L, N, cap=ENUMERATION_CAP):
    """log Q_beta(L, N) by summing every configuration's weight."""
    w = log_boltzmann_weights(beta, L, N, cap)
    return float(logsumexp(w)) - N * beta / 2 * log(L)


def coulomb_q_bruteforce(beta, L, N, cap=ENUMERATION_CAP):
    return float(np.exp(log_coulomb_q_bruteforce(beta, L, N, cap)))


# ---------------------------------------------------------------------------
# Ratio of odd to even normalizations


_CLOSED_FORM_ALPHAS = (Fraction(1, 4), Fraction(1, 2))


def z_ratio_exact(alpha, N):
    """Z_alpha(2N+1, N) / Z_alpha(2N, N) as a Fraction, alpha in {1/4, 1/2}."""
    a = Fraction(alpha).limit_denominator(8)
    if a not in _CLOSED_FORM_ALPHAS or abs(float(a) - float(alpha)) > 1e-15:
        raise DomainError(f"closed form needs alpha in {{1/4, 1/2}}, got {alpha}")
    beta = int(8 * a)
    power = int(4 * N * a)
    return (
        Fraction(2 * N + 1) ** power * coulomb_q(beta, 2 * N + 1, N)
        / (Fraction(2 * N) ** power * coulomb_q(beta, 2 * N, N))
    )


def z_ratio_limit_form(N):
    """((2N+1)/(2N))^N, evaluated in floating point."""
    return float(np.exp(N * np.log1p(1.0 / (2 * N))))


def z_ratio(alpha, N, cap=ENUMERATION_CAP):
    """x = Z_alpha^{(o)}(N) / Z_alpha^{(e)}(N).

    Closed form for alpha in {1/4, 1/2}, brute-force enumeration otherwise.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    a = Fraction(alpha).limit_denominator(8)
    if a in _CLOSED_FORM_ALPHAS and abs(float(a) - float(alpha)) < 1e-15:
        return z_ratio_limit_form(N)
    if not 0 < alpha <= 0.5:
        raise DomainError(f"alpha must be in (0, 1/2], got {alpha}")
    return z_ratio_bruteforce(alpha, N, cap)


def z_ratio_bruteforce(alpha, N, cap=ENUMERATION_CAP):
    beta = 8 * alpha
    log_zo = 4 * N * alpha * log(2 * N + 1) + log_coulomb_q_bruteforce(beta, 2 * N + 1, N, cap)
    log_ze = 4 * N * alpha * log(2 * N) + log_coulomb_q_bruteforce(beta, 2 * N, N, cap)
    return float(np.exp(log_zo - log_ze))
