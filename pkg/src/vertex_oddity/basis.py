"""Magnetization-sector bases of the periodic spin-1/2 chain.

A configuration is an ``L``-bit word: bit ``j`` set means site ``j + 1`` is
spin-up.  Bases are stored as sorted ``int64`` arrays so that the index of a
configuration is a ``searchsorted`` away.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .errors import DomainError, SizingError

MIN_SITES = 3
MAX_SITES = 63
DEFAULT_DIM_CAP = 2**31


@dataclass(frozen=True)
class SpinConfig:
    bits: int
    length: int

    def __post_init__(self):
        if not MIN_SITES <= self.length <= MAX_SITES:
            raise DomainError(f"length must be in [{MIN_SITES}, {MAX_SITES}], got {self.length}")
        if not 0 <= self.bits < (1 << self.length):
            raise DomainError(f"bits {self.bits} do not fit in {self.length} sites")

    @property
    def n_up(self):
        return popcount(self.bits)

    def up_sites(self):
        """1-based positions of the up spins."""
        return [j + 1 for j in range(self.length) if (self.bits >> j) & 1]

    def __str__(self):
        return config_to_string(self.bits, self.length)

    @classmethod
    def from_string(cls, s):
        return cls(config_from_string(s), len(s))


@dataclass(frozen=True)
class Sector:
    L: int
    n_up: int

    def __post_init__(self):
        if not MIN_SITES <= self.L <= MAX_SITES:
            raise DomainError(f"L must be in [{MIN_SITES}, {MAX_SITES}], got {self.L}")
        if not 0 <= self.n_up <= self.L:
            raise DomainError(f"n_up={self.n_up} outside [0, {self.L}]")

    @property
    def even(self):
        return self.L % 2 == 0

    @property
    def dim(self):
        return comb(self.L, self.n_up)

    @property
    def is_canonical(self):
        return self.n_up == canonical_n_up(self.L)

    def flipped(self):
        """The spin-flip image sector (n_up -> L - n_up)."""
        return Sector(self.L, self.L - self.n_up)

    @classmethod
    def canonical(cls, L):
        """S^z = 0 for even L, S^z = +1/2 for odd L."""
        return cls(L, canonical_n_up(L))


def canonical_n_up(L):
    return L // 2 if L % 2 == 0 else (L + 1) // 2


def popcount(x):
    return bin(int(x)).count("1")


def config_to_string(bits, L):
    return "".join("1" if (int(bits) >> j) & 1 else "0" for j in range(L))


def config_from_string(s):
    if not s or set(s) - {"0", "1"}:
        raise DomainError(f"not a 0/1 configuration string: {s!r}")
    return sum(1 << j for j, ch in enumerate(s) if ch == "1")


@lru_cache(maxsize=16)
def _combinations(L, n):
    # sorted words with n bits set among the low L bits, built bit by bit:
    # words(l, m) = words(l-1, m) ++ (words(l-1, m-1) | 1 << (l-1))
    rows = {0: np.zeros(1, dtype=np.int64)}
    for l in range(1, L + 1):
        lo, hi = max(0, n - (L - l)), min(n, l)
        top = np.int64(1 << (l - 1))
        new = {}
        for m in range(lo, hi + 1):
            parts = []
            if m in rows and m <= l - 1:
                parts.append(rows[m])
            if m - 1 in rows:
                parts.append(rows[m - 1] + top)
            new[m] = np.concatenate(parts)
        rows = new
    out = rows[n]
    out.flags.writeable = False
    return out


def sector_basis(sector, cap=DEFAULT_DIM_CAP):
    """Sorted array of all configurations in ``sector``."""
    if sector.dim > cap:
        raise SizingError(f"sector {sector} has dimension {sector.dim} > cap {cap}")
    return _combinations(sector.L, sector.n_up)


def config_index(basis, configs):
    """Positions of ``configs`` inside a sorted ``basis``."""
    configs = np.asarray(configs, dtype=np.int64)
    idx = np.searchsorted(basis, configs)
    idx_clipped = np.minimum(idx, len(basis) - 1)
    if np.any(basis[idx_clipped] != configs):
        raise KeyError("configuration not in basis")
    return idx


def translate(bits, L, k=1):
    """Cyclic shift moving the spin on site j to site j + k (mod L).

    Works on Python ints and on int64 arrays alike.
    """
    k %= L
    mask = (1 << L) - 1
    if k == 0:
        return bits
    return ((bits << k) | (bits >> (L - k))) & mask


def translation_permutation(basis, L, k=1):
    """``perm`` such that ``basis[perm[i]] == translate(basis[i], k)``."""
    return np.searchsorted(basis, translate(basis, L, k))


def orbit(bits, L):
    """Distinct translations of ``bits``, in order of first appearance."""
    seen = []
    for k in range(L):
        t = translate(int(bits), L, k)
        if t in seen:
            break
        seen.append(t)
    return seen


def parallel_bonds(bits, L):
    """Number of cyclic bonds (j, j+1) carrying equal spins."""
    bits = int(bits)
    return sum(((bits >> j) & 1) == ((bits >> ((j + 1) % L)) & 1) for j in range(L))


def flip_all(bits, L):
    return ((1 << L) - 1) ^ bits


def neel_states(sector):
    """Maximal-amplitude (Néel-type) configurations of a canonical sector.

    Even L gives the two alternating words.  Odd L gives the L translations
    of the word with minority spins on sites 1, 3, ..., 2N-1, which carries
    exactly one parallel pair.
    """
    L = sector.L
    if sector.even:
        if sector.n_up != L // 2:
            raise DomainError(f"{sector} is not the S^z=0 sector")
        a = sum(1 << j for j in range(0, L, 2))
        return sorted([a, a << 1])
    if sector.n_up not in ((L + 1) // 2, (L - 1) // 2):
        raise DomainError(f"{sector} is not an S^z=±1/2 sector")
    n_minority = (L - 1) // 2
    minority = sum(1 << j for j in range(0, 2 * n_minority, 2))
    start = flip_all(minority, L) if sector.n_up > n_minority else minority
    return sorted(translate(start, L, k) for k in range(L))
