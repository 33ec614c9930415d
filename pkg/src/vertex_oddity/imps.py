"""Chiral-boson (infinite MPS) ansatz for the critical XXZ chain.

The unnormalized amplitude of N up spins at sites n_1 < ... < n_N is

    (-1)^{sum n_j} prod_{i>j} |e^{2 pi i n_i/L} - e^{2 pi i n_j/L}|^{4 alpha}

i.e. the modulus of the vertex-operator correlator times its Marshall sign.
The phase of a non-integer power of a complex chord is not used anywhere:
probabilities only need the modulus, and the fidelity uses this real form.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from .basis import Sector, sector_basis
from .errors import DomainError
from .exact_points import ENUMERATION_CAP, positions_matrix, z_ratio
from .free_fermion import (
    log_chord_sum,
    maximal_sites,
    site_positions,
    slater_log_probability,
    xx_entropy_difference,
)
from .scaling import alpha_from_delta, delta_from_alpha, luttinger_from_radius, radius_from_delta


@dataclass(frozen=True)
class AnsatzParams:
    delta: float
    alpha: float
    R: float
    K: float

    def __post_init__(self):
        if abs(self.delta + np.cos(2 * np.pi * self.alpha)) > 1e-12:
            raise DomainError("delta and alpha are not related by delta = -cos(2 pi alpha)")
        if abs(np.pi * self.R**2 - self.alpha) > 1e-12:
            raise DomainError("alpha != pi R^2")

    @classmethod
    def from_delta(cls, delta):
        R = radius_from_delta(delta)
        return cls(float(delta), alpha_from_delta(delta), float(R), luttinger_from_radius(R))

    @classmethod
    def from_alpha(cls, alpha):
        return cls.from_delta(delta_from_alpha(alpha))


def _check_alpha(alpha):
    if not 0 < alpha <= 0.5:
        raise DomainError(f"alpha must be in (0, 1/2], got {alpha}")


def imps_log_weight(alpha, L, positions):
    """(log of the amplitude modulus, Marshall sign) for one configuration."""
    _check_alpha(alpha)
    sites = site_positions(positions, L)
    if len(sites) == 0:
        raise DomainError("empty configuration")
    log_mod = 4 * alpha * log_chord_sum(L, sites)
    sign = -1 if int(sites.sum()) % 2 else 1
    return log_mod, sign


@lru_cache(maxsize=8)
def _chord_sums(L, N, cap=ENUMERATION_CAP):
    # sum_{i>j} log chord for every configuration, in sector-basis order
    pos = positions_matrix(L, N, cap)
    if N < 2:
        out = np.zeros(len(pos))
    else:
        out = log_chord_sum(L, pos)
    out.flags.writeable = False
    return out


def log_weights(alpha, L, N, cap=ENUMERATION_CAP):
    """log |Psi|^2 (unnormalized) for every configuration of N ups on L sites."""
    _check_alpha(alpha)
    return 8 * alpha * _chord_sums(L, N, cap)


def z_alpha(alpha, L, N, cap=ENUMERATION_CAP):
    """log Z_alpha(L, N): log-sum-exp over all configurations."""
    return float(logsumexp(log_weights(alpha, L, N, cap)))


def probabilities(alpha, L, N, cap=ENUMERATION_CAP):
    w = log_weights(alpha, L, N, cap)
    return np.exp(w - logsumexp(w))


def log_F(L, N):
    """log prod_{j>k} |e^{4 pi i j/L} - e^{4 pi i k/L}|^2 via the Delta = 0 p_max."""
    return N * np.log(L) + slater_log_probability(L, N, maximal_sites(N))


def imps_log_pmax(alpha, L, N, cap=ENUMERATION_CAP):
    """log p_max = 4 alpha log F(L, N) - log Z_alpha(L, N)."""
    _check_alpha(alpha)
    if 2 * N - 1 > L:
        raise DomainError(f"alternating configuration needs 2N - 1 <= L, got N={N}, L={L}")
    return 4 * alpha * log_F(L, N) - z_alpha(alpha, L, N, cap)


def imps_log_pmax_enumerated(alpha, L, N, cap=ENUMERATION_CAP):
    """log p_max from the largest enumerated weight, no assumption on the argmax."""
    w = log_weights(alpha, L, N, cap)
    return float(w.max() - logsumexp(w))


def imps_argmax(alpha, L, N, cap=ENUMERATION_CAP):
    """Word (bit j = site j+1) of the most probable configuration."""
    w = log_weights(alpha, L, N, cap)
    return int(sector_basis(Sector(L, N))[int(np.argmax(w))])


def imps_min_entropy(alpha, L, cap=ENUMERATION_CAP):
    """S_inf of the ansatz with N = floor(L/2) up spins."""
    return -imps_log_pmax(alpha, L, L // 2, cap)


def ansatz_state(alpha, sector, signed=True, cap=ENUMERATION_CAP):
    """Normalized real ansatz vector over ``sector_basis(sector)``."""
    w = log_weights(alpha, sector.L, sector.n_up, cap)
    amp = np.exp(0.5 * (w - logsumexp(w)))
    if signed:
        pos = positions_matrix(sector.L, sector.n_up, cap)
        parity = pos.sum(axis=1, dtype=np.int64) % 2
        amp = np.where(parity == 1, -amp, amp)
    return amp / np.linalg.norm(amp)


def ansatz_fidelity(alpha, sector, gs, cap=10**6):
    """|<Psi_alpha|gs>|^2.

    The Marshall sign is attached when the Hamiltonian hops with a plus sign;
    the minus-sign convention has a positive ground state and the sign is
    absorbed by the sublattice rotation.  A degenerate ground level is
    handled by projecting onto the whole eigenspace.
    """
    if sector.dim > cap:
        raise DomainError(f"sector dimension {sector.dim} above fidelity cap {cap}")
    psi = ansatz_state(alpha, sector, signed=gs.hopping > 0, cap=cap)
    if gs.degenerate and gs.eigenspace is not None:
        overlaps = gs.eigenspace.T @ psi
        return float(np.sum(np.abs(overlaps) ** 2))
    return float(abs(np.vdot(gs.amplitudes, psi)) ** 2)


def parity_size_term(alpha, N):
    """-4 alpha N log(1 + 1/(2N)); tends to -2 alpha."""
    return -4 * alpha * N * np.log1p(1 / (2 * N))


def log_z_ratio(alpha, N, cap=ENUMERATION_CAP):
    """log Z_alpha^{(o)}(N) - log Z_alpha^{(e)}(N)."""
    return float(np.log(z_ratio(alpha, N, cap)))


@dataclass(frozen=True)
class EntropyDiffTerms:
    free_fermion: float
    size: float
    normalization: float

    @property
    def total(self):
        return self.free_fermion + self.size + self.normalization


def entropy_diff_decomposition(alpha, N, cap=ENUMERATION_CAP):
    """S^{(o)} - S^{(e)} of the ansatz split into three pieces.

    4 alpha times the Delta = 0 entropy difference, the -4 alpha N log(1 + 1/2N)
    size term, and log Z^{(o)}/Z^{(e)}.
    """
    _check_alpha(alpha)
    return EntropyDiffTerms(
        4 * alpha * xx_entropy_difference(N),
        parity_size_term(alpha, N),
        log_z_ratio(alpha, N, cap),
    )


def imps_entropy_difference(alpha, N, cap=ENUMERATION_CAP):
    """Enumerated S^{(o)} - S^{(e)} (no decomposition, no assumed argmax)."""
    return imps_log_pmax_enumerated(alpha, 2 * N, N, cap) - imps_log_pmax_enumerated(alpha, 2 * N + 1, N, cap)
