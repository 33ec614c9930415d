"""Periodic XXZ chain in a fixed-magnetization sector.

    H = sum_i  s (X_i X_{i+1} + Y_i Y_{i+1}) + Delta Z_i Z_{i+1}

with Pauli matrices and ``L + 1 == 1``.  The XY part moves an antiparallel
pair with matrix element ``2 s``; the Ising part is ``+Delta`` on parallel
bonds and ``-Delta`` on antiparallel ones.

The hopping sign ``s`` defaults to -1.  For even L the sublattice rotation
exp(i pi sum_{j odd} S^z_j) maps s = -1 onto s = +1 without touching |psi|^2,
so every even-L probability is the same in both conventions.  For odd L the
two differ by a twisted boundary bond: s = -1 has a non-degenerate, positive
ground state whose maximal probability at Delta = 1/2 is the combinatorial
value (4/3)^N prod((2j-1)/(3j-1))^2, while s = +1 has a momentum doublet
whose maximal probability does not follow that formula.
"""

import logging
import os
import struct
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as sla

from .basis import (
    Sector,
    config_to_string,
    neel_states,
    sector_basis,
    translation_permutation,
)
from .errors import NeelViolation, SizingError, SolverError

log = logging.getLogger(__name__)

DEFAULT_HOPPING = -1
RESIDUAL_TOL = 1e-10
DEGENERACY_TOL = 1e-8
DENSE_CUTOFF = 32
CACHE_ENV = "VERTEX_ODDITY_CACHE"


@lru_cache(maxsize=2)
def _sector_operators(L, n_up):
    """Hopping matrix (entries 2) and Ising diagonal (n_parallel - n_antiparallel)."""
    basis = sector_basis(Sector(L, n_up))
    dim = len(basis)
    ising = np.zeros(dim, dtype=np.int8)
    rows, cols = [], []
    for i in range(L):
        j = (i + 1) % L
        si = (basis >> i) & 1
        sj = (basis >> j) & 1
        anti = si != sj
        ising += np.where(anti, -1, 1).astype(np.int8)
        src = np.flatnonzero(anti)
        dst = np.searchsorted(basis, basis[src] ^ ((1 << i) | (1 << j)))
        rows.append(dst.astype(np.int32))
        cols.append(src.astype(np.int32))
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    hop = sp.csr_matrix((np.full(len(rows), 2.0), (rows, cols)), shape=(dim, dim))
    hop.sum_duplicates()
    return basis, hop, ising


def apply_hamiltonian(v, sector, delta, hopping=DEFAULT_HOPPING):
    """H v for a vector indexed by ``sector_basis(sector)``."""
    basis, hop, ising = _sector_operators(sector.L, sector.n_up)
    v = np.asarray(v)
    if v.shape[0] != len(basis):
        raise ValueError(f"vector length {v.shape[0]} != sector dimension {len(basis)}")
    diag = delta * ising if v.ndim == 1 else (delta * ising)[:, None]
    return hopping * (hop @ v) + diag * v


def dense_hamiltonian(sector, delta, hopping=DEFAULT_HOPPING):
    """Full matrix, column by column through ``apply_hamiltonian``."""
    return apply_hamiltonian(np.eye(sector.dim), sector, delta, hopping)


def _start_vector(sector, delta, hopping):
    (dbits,) = struct.unpack("<Q", struct.pack("<d", float(delta)))
    rng = np.random.default_rng([sector.L, sector.n_up, dbits, hopping % 2])
    return rng.standard_normal(sector.dim)


@dataclass
class GroundState:
    sector: Sector
    delta: float
    energy: float
    amplitudes: np.ndarray
    degenerate: bool = False
    hopping: int = DEFAULT_HOPPING
    residual: float = 0.0
    eigenspace: np.ndarray = field(default=None, repr=False)

    @property
    def basis(self):
        return sector_basis(self.sector)

    @property
    def probabilities(self):
        return np.abs(self.amplitudes) ** 2


def _lowest(sector, delta, hopping, k, max_restarts, tol):
    dim = sector.dim
    if dim <= DENSE_CUTOFF:
        w, V = np.linalg.eigh(dense_hamiltonian(sector, delta, hopping))
        return w[:k], V[:, :k]
    op = sla.LinearOperator(
        (dim, dim),
        matvec=lambda x: apply_hamiltonian(x, sector, delta, hopping),
        matmat=lambda X: apply_hamiltonian(X, sector, delta, hopping),
        dtype=np.float64,
    )
    v0 = _start_vector(sector, delta, hopping)
    k = min(k, dim - 2)
    last_res = np.inf
    for _ in range(max_restarts):
        try:
            w, V = sla.eigsh(op, k=k, which="SA", v0=v0, tol=0, ncv=max(2 * k + 1, 20))
        except sla.ArpackNoConvergence as exc:
            if exc.eigenvectors is None or exc.eigenvectors.shape[1] == 0:
                continue
            w, V = exc.eigenvalues, exc.eigenvectors
        order = np.argsort(w)
        w, V = w[order], V[:, order]
        R = apply_hamiltonian(V[:, :1], sector, delta, hopping) - w[0] * V[:, :1]
        last_res = float(np.linalg.norm(R))
        if last_res <= tol:
            return w, V
        v0 = V[:, 0]
    raise SolverError(
        f"eigensolver stalled for {sector}, delta={delta}: residual {last_res:.3e}",
        residual=last_res,
    )


def momentum_state(V, sector):
    """Translation eigenvector inside the span of the real columns of V."""
    perm = translation_permutation(sector_basis(sector), sector.L)
    TV = np.empty_like(V)
    TV[perm] = V
    t = V.T @ TV
    ev, c = np.linalg.eig(t)
    k = np.angle(ev)
    # deterministic pick: smallest non-negative momentum, then smallest |k|
    pick = np.lexsort((np.abs(k), k < -1e-12))[0]
    return V @ c[:, pick]


def _fix_phase(psi):
    i = int(np.argmax(np.abs(psi)))
    phase = psi[i] / abs(psi[i])
    psi = psi / phase
    if np.iscomplexobj(psi) and np.allclose(psi.imag, 0.0, atol=1e-14):
        psi = psi.real.copy()
    return psi / np.linalg.norm(psi)


def _cache_path(sector, delta, hopping):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"gs_L{sector.L}_n{sector.n_up}_d{float(delta).hex()}_s{hopping:+d}.npz"


def ground_state(sector, delta, hopping=DEFAULT_HOPPING, max_restarts=5, tol=RESIDUAL_TOL):
    """Lowest eigenpair of H in ``sector`` from a Lanczos (ARPACK) solve.

    When the lowest level is degenerate the returned amplitudes are a
    translation eigenvector of the eigenspace, so that |psi|^2 keeps the
    translation symmetry of the chain; the whole eigenspace is kept in
    ``eigenspace``.
    """
    if sector.dim > 10**9:
        raise SizingError(f"{sector} too large for exact diagonalization")
    path = _cache_path(sector, delta, hopping)
    if path is not None and path.exists():
        with np.load(path) as z:
            return GroundState(
                sector, float(delta), float(z["energy"]), z["amplitudes"], bool(z["degenerate"]),
                hopping, float(z["residual"]), z["eigenspace"],
            )

    k = 2
    while True:
        w, V = _lowest(sector, delta, hopping, k, max_restarts, tol)
        mult = int(np.sum(w - w[0] <= DEGENERACY_TOL))
        if mult < len(w) or len(w) >= sector.dim:
            break
        k *= 2
    space = V[:, :mult]
    psi = space[:, 0] if mult == 1 else momentum_state(space, sector)
    psi = _fix_phase(psi)
    energy = float(w[0])
    residual = float(np.linalg.norm(apply_hamiltonian(psi, sector, delta, hopping) - energy * psi))
    if residual > tol:
        raise SolverError(f"residual {residual:.3e} above tolerance", residual=residual)
    gs = GroundState(sector, float(delta), energy, psi, mult > 1, hopping, residual, space)

    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savez(path, energy=energy, amplitudes=psi, degenerate=mult > 1, residual=residual, eigenspace=space)
    return gs


def min_entropy(gs):
    """(S_inf, argmax word); ties resolve to the lowest basis index."""
    p = gs.probabilities
    i = int(np.argmax(p))
    return float(-np.log(p[i])), int(gs.basis[i])


def tie_set(gs, rtol=1e-9):
    """Every configuration whose probability is within ``rtol`` of p_max."""
    p = gs.probabilities
    return [int(c) for c in gs.basis[p >= p.max() * (1 - rtol)]]


@dataclass
class ScanRow:
    L: int
    n_up: int
    delta: float
    energy: float = np.nan
    s_inf: float = np.nan
    p_max: float = np.nan
    argmax: int = -1
    degenerate: bool = False
    error: str = ""

    @property
    def argmax_config(self):
        return config_to_string(self.argmax, self.L) if self.argmax >= 0 else ""


def scan_point(L, delta, hopping=DEFAULT_HOPPING, tol=RESIDUAL_TOL):
    sector = Sector.canonical(L)
    try:
        gs = ground_state(sector, delta, hopping, tol=tol)
    except (SolverError, SizingError) as exc:
        log.warning("L=%d delta=%g failed: %s", L, delta, exc)
        return ScanRow(L, sector.n_up, delta, error=str(exc))
    s, arg = min_entropy(gs)
    if arg not in neel_states(sector):
        raise NeelViolation(
            f"L={L}, delta={delta}: argmax {config_to_string(arg, L)} is not a Néel configuration"
        )
    return ScanRow(L, sector.n_up, float(delta), gs.energy, s, float(np.exp(-s)), arg, gs.degenerate)


def entropy_scan(delta, L_list, hopping=DEFAULT_HOPPING, tol=RESIDUAL_TOL):
    """S_inf of the canonical sector for every L, in the order given."""
    return [scan_point(int(L), delta, hopping, tol) for L in L_list]


def spin_flip_partner(gs):
    """Ground state of the spin-flipped sector (S^z -> -S^z)."""
    return ground_state(gs.sector.flipped(), gs.delta, gs.hopping)


def translation_defect(gs):
    """max over configs of | |psi(T c)|^2 - |psi(c)|^2 |."""
    perm = translation_permutation(gs.basis, gs.sector.L)
    p = gs.probabilities
    return float(np.max(np.abs(p[perm] - p)))
