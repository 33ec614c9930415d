"""XX chain (Delta = 0) amplitudes from Slater determinants.

All products of chord lengths are accumulated as sums of logs so that
probabilities stay representable for chains of thousands of sites.
"""

import numpy as np

from .errors import DomainError


def site_positions(positions, L=None):
    """1-based site positions from a bit word or from a sequence of sites."""
    if isinstance(positions, (int, np.integer)):
        bits = int(positions)
        if L is None:
            L = bits.bit_length()
        return np.array([j + 1 for j in range(L) if (bits >> j) & 1], dtype=np.int64)
    return np.sort(np.asarray(positions, dtype=np.int64))


def log_chord_table(L):
    """``t[d] = log|e^{2 pi i d/L} - 1| = log(2 sin(pi d / L))``; ``t[0] = -inf``."""
    d = np.arange(L)
    with np.errstate(divide="ignore"):
        return np.log(2.0 * np.sin(np.pi * d / L))


def log_chord_sum(L, sites):
    """Sum over pairs i > j of log|e^{2 pi i n_i/L} - e^{2 pi i n_j/L}|.

    ``sites`` is either one set of positions (1-D) or a batch (2-D, one set
    per row).
    """
    sites = np.asarray(sites, dtype=np.int64)
    table = log_chord_table(L)
    if sites.ndim == 1:
        diff = np.abs(sites[:, None] - sites[None, :])
        iu = np.triu_indices(len(sites), 1)
        return float(table[diff[iu]].sum())
    out = np.zeros(sites.shape[0])
    n = sites.shape[1]
    for i in range(n):
        for j in range(i):
            out += table[np.abs(sites[:, i] - sites[:, j])]
    return out


def slater_log_probability(L, N, positions):
    """log |<n_1..n_N|gs>|^2 for the XX chain with N fermions on L sites."""
    sites = site_positions(positions, L)
    if len(sites) != N:
        raise DomainError(f"expected {N} occupied sites, got {len(sites)}")
    if not 1 <= N < L:
        raise DomainError(f"need 1 <= N < L, got N={N}, L={L}")
    return -N * np.log(L) + 2.0 * log_chord_sum(L, sites)


def slater_amplitude(L, momenta, positions):
    """Explicit determinant of e^{i q_j n_k} / sqrt(L) (complex)."""
    sites = site_positions(positions, L)
    q = np.asarray(momenta, dtype=float)
    M = np.exp(1j * np.outer(q, sites)) / np.sqrt(L)
    return np.linalg.det(M)


def fermi_sea(L, N, shift=0.0):
    """N equally spaced momenta 2 pi j / L + shift, j = 1..N."""
    return shift + 2 * np.pi * np.arange(1, N + 1) / L


def maximal_sites(N):
    """The alternating configuration n_j = 2j - 1."""
    return np.arange(1, 2 * N, 2)


def even_min_entropy(N):
    """S_inf of the half-filled even chain, L = 2N: exactly N log 2."""
    if N < 1:
        raise DomainError("N must be >= 1")
    return N * np.log(2.0)


def vandermonde(L, N):
    """V_{nm} = exp(4 pi i n m / L), n, m = 1..N."""
    n = np.arange(1, N + 1)
    return np.exp(4j * np.pi * np.outer(n, n) / L)


def w_matrix(N):
    """det W = det(V_o^H V_o) / det(V_e^H V_e) with V_o at L = 2N + 1, V_e at L = 2N.

    Off-diagonal entries are -1 / (N (1 + eps^(n - m))), eps = exp(2 pi i / (2N + 1)).
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    eps = np.exp(2j * np.pi / (2 * N + 1))
    n = np.arange(N)
    d = n[:, None] - n[None, :]
    W = -1.0 / (N * (1.0 + eps**d))
    np.fill_diagonal(W, 1.0)
    return W


def w_log_det(N, imag_tol=1e-9):
    """log det W using a pivoted LU in log-scaled form."""
    W = w_matrix(N)
    phase, logabs = np.linalg.slogdet(W)
    if not np.isfinite(logabs):
        raise np.linalg.LinAlgError(f"W is singular at N={N}")
    # det W must be real and positive
    if abs(phase.imag) > imag_tol or phase.real <= 0:
        raise ArithmeticError(f"det W has phase {phase} at N={N}")
    return float(logabs)


def parity_log_prefactor(N):
    """log of (2N / (2N + 1))^N, the size prefactor of the odd/even ratio."""
    return N * (np.log(2 * N) - np.log(2 * N + 1))


def xx_entropy_difference(N):
    """S_inf(L = 2N + 1) - S_inf(L = 2N) of the XX chain with N particles."""
    return -w_log_det(N) - parity_log_prefactor(N)


def direct_entropy_difference(N):
    """Same quantity from two direct Slater evaluations at the maximal config."""
    sites = maximal_sites(N)
    return -(slater_log_probability(2 * N + 1, N, sites) - slater_log_probability(2 * N, N, sites))


def odd_min_entropy(N):
    """S_inf of the XX chain with L = 2N + 1 and N particles."""
    return -slater_log_probability(2 * N + 1, N, maximal_sites(N))


def hadamard_log_bound(A):
    """log of the product of column norms of A (Hadamard's bound on |det A|)."""
    return float(np.sum(np.log(np.linalg.norm(A, axis=0))))
