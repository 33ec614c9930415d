"""Named invariant and oracle checks, grouped so they can be filtered.

Every check reports a deviation and the tolerance it must stay under.  The
``perturb`` argument of ``run_checks`` is added to each deviation; it exists
so the failure path can be exercised without breaking the library.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .basis import Sector, neel_states, sector_basis
from .exact_points import (
    coulomb_q,
    coulomb_q_bruteforce,
    rs_pmax,
    z_ratio_exact,
    z_ratio_limit_form,
)
from .free_fermion import (
    direct_entropy_difference,
    fermi_sea,
    odd_min_entropy,
    slater_amplitude,
    slater_log_probability,
    xx_entropy_difference,
)
from .imps import ansatz_fidelity, entropy_diff_decomposition, imps_entropy_difference, parity_size_term
from .scaling import alpha_from_delta, fit_scaling, radius_squared_from_delta
from .xxz import (
    dense_hamiltonian,
    ground_state,
    min_entropy,
    momentum_state,
    tie_set,
    translation_defect,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    group: str
    deviation: float
    tol: float

    @property
    def passed(self):
        return bool(self.deviation <= self.tol)


_REGISTRY = []


def check(group, tol):
    def wrap(fn):
        _REGISTRY.append((fn.__name__.replace("_", "-"), group, tol, fn))
        return fn

    return wrap


def _rel(a, b):
    return abs(a - b) / abs(b)


# ---------------------------------------------------------------------------
# basis and exact diagonalization

_ED_SIZES = range(4, 13)
_ED_DELTAS = (-0.5, 0.0, 0.5, 1.0)


@check("basis", 0)
def sector_dimensions():
    return sum(
        len(sector_basis(Sector(L, n))) != comb(L, n) for L in range(3, 15) for n in range(L + 1)
    )


@check("ed", 1e-10)
def pauli_oracle():
    """Sector blocks of the Kronecker-product Hamiltonian, L = 6."""
    X = np.array([[0, 1], [1, 0]])
    Y = np.array([[0, -1j], [1j, 0]])
    Z = np.diag([1, -1])
    L, delta = 6, 0.3

    def site_op(op, j):
        # bit j is the j-th factor from the right
        out = np.eye(1)
        for k in reversed(range(L)):
            out = np.kron(out, op if k == j else np.eye(2))
        return out

    worst = 0.0
    for s in (-1, 1):
        H = np.zeros((2**L, 2**L), dtype=complex)
        for j in range(L):
            k = (j + 1) % L
            H += s * (site_op(X, j) @ site_op(X, k) + site_op(Y, j) @ site_op(Y, k))
            H += delta * site_op(Z, j) @ site_op(Z, k)
        # bit set = up = Z eigenvalue +1 = basis vector index with that bit 0
        full = (2**L - 1)
        for n in range(L + 1):
            sec = Sector(L, n)
            idx = full ^ sector_basis(sec)
            block = H[np.ix_(idx, idx)].real
            worst = max(worst, float(np.abs(block - dense_hamiltonian(sec, delta, s)).max()))
    return worst


@check("ed", 1e-10)
def normalization():
    worst = 0.0
    for L in _ED_SIZES:
        for d in _ED_DELTAS:
            gs = ground_state(Sector.canonical(L), d)
            worst = max(worst, abs(np.linalg.norm(gs.amplitudes) - 1))
    return worst


@check("ed", 1e-9)
def translation_invariance():
    worst = 0.0
    for L in _ED_SIZES:
        for d in _ED_DELTAS:
            worst = max(worst, translation_defect(ground_state(Sector.canonical(L), d)))
    for L in (5, 7, 9):
        # degenerate momentum doublets of the plus-sign chain
        worst = max(worst, translation_defect(ground_state(Sector.canonical(L), 0.3, hopping=1)))
    return worst


@check("ed", 0)
def neel_membership():
    bad = 0
    for L in range(3, 15):
        sec = Sector.canonical(L)
        neel = set(neel_states(sec))
        for d in (-0.9, -0.5, 0.0, 0.5, 0.9, 1.0):
            gs = ground_state(sec, d)
            _, arg = min_entropy(gs)
            bad += arg not in neel
            bad += not set(tie_set(gs, 1e-8)) <= neel
    return bad


@check("ed", 1e-10)
def spin_flip_equivalence():
    worst = 0.0
    for L in (5, 7, 9, 11):
        for d in _ED_DELTAS:
            a = ground_state(Sector(L, (L + 1) // 2), d)
            b = ground_state(Sector(L, (L - 1) // 2), d)
            worst = max(worst, abs(min_entropy(a)[0] - min_entropy(b)[0]), abs(a.energy - b.energy))
    return worst


@check("ed", 1e-8)
def degenerate_pmax_invariance():
    """p_max of the canonical vector does not depend on the eigensolver's basis."""
    rng = np.random.default_rng(7)
    worst = 0.0
    for L in (5, 7, 9):
        gs = ground_state(Sector.canonical(L), 0.3, hopping=1)
        ref = gs.probabilities.max()
        space = gs.eigenspace
        for _ in range(5):
            Q, _ = np.linalg.qr(rng.standard_normal((space.shape[1], space.shape[1])))
            psi = momentum_state(space @ Q, gs.sector)
            p = np.abs(psi) ** 2 / np.vdot(psi, psi).real
            worst = max(worst, abs(p.max() - ref) / ref)
    return worst


@check("ed", 1e-8)
def rs_exact_pmax():
    worst = 0.0
    for L in range(5, 14, 2):
        gs = ground_state(Sector.canonical(L), 0.5)
        worst = max(worst, _rel(gs.probabilities.max(), float(rs_pmax((L - 1) // 2))))
    return worst


@check("ed", 1e-8)
def even_xx_baseline():
    worst = 0.0
    for L in range(4, 15, 2):
        s, _ = min_entropy(ground_state(Sector.canonical(L), 0.0))
        worst = max(worst, abs(s - L / 2 * np.log(2)))
    return worst


# ---------------------------------------------------------------------------
# free fermions


@check("free_fermion", 1e-10)
def log_domain_vs_determinant():
    worst = 0.0
    for L in range(3, 11):
        for N in range(1, L):
            q = fermi_sea(L, N, shift=0.37)
            for sites in combinations(range(1, L + 1), N):
                direct = abs(slater_amplitude(L, q, sites)) ** 2
                log_p = slater_log_probability(L, N, sites)
                if direct < 1e-280:
                    continue
                worst = max(worst, abs(np.log(direct) - log_p))
    return worst


@check("free_fermion", 1e-10)
def xx_difference_direct():
    return max(abs(xx_entropy_difference(N) - direct_entropy_difference(N)) for N in range(1, 30))


@check("free_fermion", 1e-9)
def odd_xx_against_ed():
    worst = 0.0
    for L in range(5, 14, 2):
        s, _ = min_entropy(ground_state(Sector.canonical(L), 0.0))
        worst = max(worst, abs(s - odd_min_entropy((L - 1) // 2)))
    return worst


# ---------------------------------------------------------------------------
# Coulomb gas


@check("coulomb", 1e-10)
def coulomb_q2_unity():
    return max(
        _rel(coulomb_q_bruteforce(2, L, N), 1.0) for L in range(1, 13) for N in range(L + 1)
    )


@check("coulomb", 1e-10)
def coulomb_q4_closed_form():
    return max(
        _rel(coulomb_q_bruteforce(4, L, N), float(coulomb_q(4, L, N)))
        for L in range(1, 13)
        for N in range(L + 1)
    )


@check("coulomb", 0)
def coulomb_q4_value():
    return int(coulomb_q(4, 4, 2) != Fraction(3, 16))


@check("coulomb", 0)
def z_ratio_symbolic():
    bad = 0
    for a in (Fraction(1, 4), Fraction(1, 2)):
        for N in range(1, 40):
            bad += z_ratio_exact(a, N) != Fraction(2 * N + 1, 2 * N) ** N
    return bad


@check("coulomb", 1e-3)
def z_ratio_limit():
    return abs(z_ratio_limit_form(10**4) - np.exp(0.5))


# ---------------------------------------------------------------------------
# ansatz


@check("imps", 1e-10)
def decomposition_identity():
    worst = 0.0
    for a in (0.25, 0.5):
        for N in range(1, 7):
            worst = max(worst, abs(entropy_diff_decomposition(a, N).total - imps_entropy_difference(a, N)))
    return worst


@check("imps", 1e-4)
def size_term_limit():
    return max(abs(-parity_size_term(a, 10**4) - 2 * a) for a in (0.25, 0.5))


@check("imps", 1e-9)
def xx_fidelity_unity():
    return max(
        abs(ansatz_fidelity(0.25, Sector.canonical(L), ground_state(Sector.canonical(L), 0.0)) - 1)
        for L in range(4, 13)
    )


# ---------------------------------------------------------------------------
# scaling


@check("scaling", 1e-12)
def radius_alpha_identity():
    d = np.linspace(-1, 1, 1000)
    return float(np.max(np.abs(np.pi * radius_squared_from_delta(d) - alpha_from_delta(d))))


@check("scaling", 1e-10)
def fit_recovers_coefficients():
    L = np.arange(5, 40, 2)
    S = 0.3 * L + 0.25 * np.log(L) - 0.1
    fit = fit_scaling(zip(L, S))
    return float(np.max(np.abs(fit.coefficients - [0.3, 0.25, -0.1])))


def check_names():
    return [(name, group) for name, group, _, _ in _REGISTRY]


def run_checks(filter=None, perturb=0.0):
    """Run every check whose name or group contains ``filter``."""
    out = []
    for name, group, tol, fn in _REGISTRY:
        if filter and filter not in name and filter not in group:
            continue
        out.append(CheckResult(name, group, float(fn()) + perturb, tol))
    return out
