"""Acceptance suite: one test (and one PASS/FAIL line) per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``.  Criterion 4 solves
the L = 23 sector for twenty anisotropies and takes around ten minutes on
one core.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from vertex_oddity.basis import Sector
from vertex_oddity.cli import main as cli_main
from vertex_oddity.exact_points import (
    coulomb_q,
    coulomb_q_bruteforce,
    rs_asymptotic_entropy,
    rs_log_pmax,
    rs_pmax,
    z_ratio_exact,
    z_ratio_limit_form,
)
from vertex_oddity.free_fermion import (
    even_min_entropy,
    maximal_sites,
    slater_log_probability,
    xx_entropy_difference,
)
from vertex_oddity.imps import (
    ansatz_fidelity,
    entropy_diff_decomposition,
    imps_entropy_difference,
    imps_min_entropy,
    parity_size_term,
)
from vertex_oddity.scaling import (
    alpha_from_delta,
    default_delta_grid,
    fit_scaling,
    radius_squared_from_delta,
)
from vertex_oddity.xxz import entropy_scan, ground_state, min_entropy


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n[acceptance] {label}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return emit


def test_criterion_1_xx_entropy_difference_fit(report):
    t0 = time.perf_counter()
    N = np.arange(2, 26)
    fit = fit_scaling(zip(2 * N + 1, [xx_entropy_difference(int(n)) for n in N]))
    elapsed = time.perf_counter() - t0
    ok = 0.254 <= fit.b <= 0.259 and 0.126 <= fit.c <= 0.146 and abs(fit.a) < 1e-3 and elapsed < 5
    detail = f"a={fit.a:.2e} b={fit.b:.5f}({fit.stderr_b:.1e}) c={fit.c:.5f}({fit.stderr_c:.1e}) t={elapsed:.2f}s"
    assert report("criterion 1 (odd/even XX difference fit)", ok, detail), detail


def test_criterion_2_half_anisotropy_exactness(report):
    t0 = time.perf_counter()
    rel = []
    for L in range(5, 16, 2):
        gs = ground_state(Sector.canonical(L), 0.5)
        exact = float(rs_pmax((L - 1) // 2))
        rel.append(abs(gs.probabilities.max() - exact) / exact)
    gaps = [rs_asymptotic_entropy(L) + rs_log_pmax((L - 1) // 2) for L in range(5, 22, 2)]
    elapsed = time.perf_counter() - t0
    monotone = bool(np.all(np.diff(gaps) < 0))
    ok = max(rel) <= 1e-8 and monotone and elapsed < 120
    detail = f"max rel err={max(rel):.1e} gaps {gaps[0]:.4f}->{gaps[-1]:.4f} decreasing={monotone} t={elapsed:.1f}s"
    assert report("criterion 2 (Delta=1/2 exact p_max)", ok, detail), detail


def test_criterion_3_even_baseline(report):
    dev = []
    for L in range(4, 17, 2):
        s, _ = min_entropy(ground_state(Sector.canonical(L), 0.0))
        dev.append(abs(s - L / 2 * np.log(2)))
    closed = []
    for N in range(2, 9):
        p = np.exp(slater_log_probability(2 * N, N, maximal_sites(N)))
        closed.append(abs(p * 2**N - 1))
    exact = all(even_min_entropy(N) == N * np.log(2.0) for N in range(1, 50))
    ok = max(dev) <= 1e-8 and max(closed) <= 1e-12 and exact
    detail = f"max |S - (L/2)log2|={max(dev):.1e}, max |p 2^N - 1|={max(closed):.1e}"
    assert report("criterion 3 (even XX baseline)", ok, detail), detail


# ---------------------------------------------------------------------------
# criterion 4

FULL_L = list(range(7, 24, 2))
REDUCED_L = list(range(7, 20, 2))


@pytest.fixture(scope="module")
def b_scan():
    grid = [float(d) for d in default_delta_grid()]
    S = {}
    t0 = time.perf_counter()
    for d in grid:
        for r in entropy_scan(d, REDUCED_L):
            S[d, r.L] = r.s_inf
    reduced_time = time.perf_counter() - t0
    for d in grid:
        for r in entropy_scan(d, [L for L in FULL_L if L not in REDUCED_L]):
            S[d, r.L] = r.s_inf
    full_time = time.perf_counter() - t0
    return grid, S, reduced_time, full_time


def _curves(grid, S, sizes):
    rows = []
    for d in grid:
        a = alpha_from_delta(d)
        ed = fit_scaling((L, S[d, L]) for L in sizes)
        mps = fit_scaling((L, imps_min_entropy(a, L)) for L in sizes)
        rows.append((d, a, ed, mps))
    return rows


def _worst(rows, tol):
    bad = [f"{d:+.1f}:{ed.b - a:+.3f}" for d, a, ed, _ in rows if abs(ed.b - a) > tol]
    return max(abs(ed.b - a) for _, a, ed, _ in rows), bad


def test_criterion_4_ed_b_tracks_alpha(report, b_scan):
    grid, S, _, full_time = b_scan
    rows = _curves(grid, S, FULL_L)
    worst, bad = _worst(rows, 0.05)
    max_se = max(ed.stderr_b for _, _, ed, _ in rows)
    ok = worst <= 0.05 and max_se <= 1e-2 and full_time < 1800
    detail = (
        f"L=7..23: max |b-alpha|={worst:.4f} (over 0.05 at {', '.join(bad) or 'none'}),"
        f" max stderr={max_se:.1e}, t={full_time:.0f}s"
    )
    assert report("criterion 4a (ED b vs alpha, L<=23, tol 0.05)", ok, detail), detail


def test_criterion_4_imps_b_tracks_ed(report, b_scan):
    grid, S, _, _ = b_scan
    rows = _curves(grid, S, FULL_L)
    gaps = [(d, mps.b - ed.b) for d, _, ed, mps in rows]
    bad = [f"{d:+.1f}:{g:+.3f}" for d, g in gaps if abs(g) > 0.05]
    worst = max(abs(g) for _, g in gaps)
    detail = f"max |b_imps-b_ed|={worst:.4f} (over 0.05 at {', '.join(bad) or 'none'})"
    assert report("criterion 4b (ansatz b vs ED b, tol 0.05)", worst <= 0.05, detail), detail


def test_criterion_4_reduced_sizes(report, b_scan):
    grid, S, reduced_time, _ = b_scan
    rows = _curves(grid, S, REDUCED_L)
    worst, bad = _worst(rows, 0.07)
    ok = worst <= 0.07 and reduced_time < 300
    detail = f"L=7..19: max |b-alpha|={worst:.4f} (over 0.07 at {', '.join(bad) or 'none'}), t={reduced_time:.0f}s"
    assert report("criterion 4c (ED b vs alpha, L<=19, tol 0.07)", ok, detail), detail


# ---------------------------------------------------------------------------


def test_criterion_5_coulomb_oracles(report):
    q2 = max(abs(coulomb_q_bruteforce(2, L, N) - 1) for L in range(1, 13) for N in range(L + 1))
    q4 = max(
        abs(coulomb_q_bruteforce(4, L, N) / float(coulomb_q(4, L, N)) - 1)
        for L in range(1, 13)
        for N in range(L + 1)
    )
    value = coulomb_q(4, 4, 2) == Fraction(3, 16)
    symbolic = all(
        z_ratio_exact(a, N) == Fraction(2 * N + 1, 2 * N) ** N
        for a in (Fraction(1, 4), Fraction(1, 2))
        for N in range(1, 60)
    )
    limit = abs(z_ratio_limit_form(10**4) - np.exp(0.5))
    ok = q2 <= 1e-10 and q4 <= 1e-10 and value and symbolic and limit < 1e-3
    detail = f"Q2 err={q2:.1e} Q4 err={q4:.1e} Q4(4,2)=3/16:{value} symbolic:{symbolic} |x-e^1/2|={limit:.1e}"
    assert report("criterion 5 (Coulomb gas oracles)", ok, detail), detail


def test_criterion_6_identities(report):
    dec = max(
        abs(entropy_diff_decomposition(a, N).total - imps_entropy_difference(a, N))
        for a in (0.25, 0.5)
        for N in range(1, 7)
    )
    term2 = max(abs(-parity_size_term(a, 10**4) - 2 * a) for a in (0.25, 0.5))
    d = np.linspace(-1, 1, 1000)
    radius = float(np.max(np.abs(np.pi * radius_squared_from_delta(d) - alpha_from_delta(d))))
    ok = dec <= 1e-10 and term2 <= 1e-4 and radius <= 1e-12
    detail = f"decomposition={dec:.1e} size term={term2:.1e} pi R^2 - alpha={radius:.1e}"
    assert report("criterion 6 (identity suite)", ok, detail), detail


def test_criterion_7_fidelity(report):
    worst = 1.0
    xx = 0.0
    for delta in (-0.5, 0.0, 0.5, 1.0):
        a = alpha_from_delta(delta)
        for L in range(4, 17):
            sec = Sector.canonical(L)
            f = ansatz_fidelity(a, sec, ground_state(sec, delta))
            worst = min(worst, f)
            if delta == 0.0:
                xx = max(xx, abs(f - 1))
    ok = worst >= 0.99 and xx <= 1e-9
    detail = f"min fidelity={worst:.5f}, max |F-1| at Delta=0 = {xx:.1e}"
    assert report("criterion 7 (ansatz fidelity)", ok, detail), detail


def test_criterion_8_property_suite(report, capsys):
    code = cli_main(["verify"])
    out = capsys.readouterr().out
    failed = [l.split(",")[1] for l in out.splitlines() if l.endswith(",FAIL")]
    detail = f"exit={code}, failed={failed or 'none'}"
    assert report("criterion 8 (verify property suite)", code == 0 and not failed, detail), detail
