from math import comb

import numpy as np
import pytest

from vertex_oddity.basis import Sector, neel_states
from vertex_oddity.errors import DomainError
from vertex_oddity.exact_points import log_coulomb_q_bruteforce, positions_matrix
from vertex_oddity.free_fermion import slater_log_probability
from vertex_oddity.imps import (
    AnsatzParams,
    ansatz_fidelity,
    ansatz_state,
    entropy_diff_decomposition,
    imps_argmax,
    imps_entropy_difference,
    imps_log_pmax,
    imps_log_pmax_enumerated,
    imps_log_weight,
    parity_size_term,
    probabilities,
    z_alpha,
)
from vertex_oddity.xxz import ground_state


def test_params_round_trip():
    p = AnsatzParams.from_delta(0.5)
    assert p.alpha == pytest.approx(1 / 3)
    assert AnsatzParams.from_alpha(p.alpha).delta == pytest.approx(0.5)
    assert AnsatzParams.from_delta(0.0).K == pytest.approx(1.0)


def test_weight_sign_is_marshall():
    _, s1 = imps_log_weight(0.3, 6, [1, 3, 5])
    _, s2 = imps_log_weight(0.3, 6, [2, 4, 6])
    assert (s1, s2) == (-1, 1)
    with pytest.raises(DomainError):
        imps_log_weight(0.0, 6, [1, 3])


@pytest.mark.parametrize("L", [6, 7, 10, 11])
def test_normalization_is_coulomb_gas(L):
    a, N = 0.3, L // 2
    z = z_alpha(a, L, N)
    assert z == pytest.approx(4 * N * a * np.log(L) + log_coulomb_q_bruteforce(8 * a, L, N), abs=1e-10)
    assert probabilities(a, L, N).sum() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("L", range(4, 15))
def test_quarter_alpha_is_free_fermion(L):
    N = L // 2
    step = max(1, comb(L, N) // 50)
    p = probabilities(0.25, L, N)[::step]
    ref = [slater_log_probability(L, N, row) for row in positions_matrix(L, N)[::step]]
    assert np.allclose(np.log(p), ref, atol=1e-10)


@pytest.mark.parametrize("alpha", [0.1, 0.25, 1 / 3, 0.45])
@pytest.mark.parametrize("L", [8, 9, 12, 13])
def test_closed_form_pmax_and_argmax(alpha, L):
    N = L // 2
    assert imps_log_pmax(alpha, L, N) == pytest.approx(imps_log_pmax_enumerated(alpha, L, N), abs=1e-10)
    assert imps_argmax(alpha, L, N) in neel_states(Sector(L, N))


@pytest.mark.parametrize("L", range(4, 17))
@pytest.mark.parametrize("delta", [-0.5, 0.0, 0.5, 1.0])
def test_fidelity_high(L, delta):
    sec = Sector.canonical(L)
    gs = ground_state(sec, delta)
    f = ansatz_fidelity(AnsatzParams.from_delta(delta).alpha, sec, gs)
    assert f >= 0.99
    if delta == 0.0:
        assert f == pytest.approx(1.0, abs=1e-9)


def test_fidelity_with_marshall_sign_plus_convention():
    sec = Sector(10, 5)
    gs = ground_state(sec, 0.5, hopping=1)
    assert ansatz_fidelity(1 / 3, sec, gs) >= 0.99
    unsigned = ansatz_state(1 / 3, sec, signed=False)
    assert abs(unsigned @ gs.amplitudes) ** 2 < 0.5


@pytest.mark.parametrize("alpha", [0.25, 0.5, 1 / 3, 0.125])
@pytest.mark.parametrize("N", range(1, 7))
def test_decomposition_identity(alpha, N):
    terms = entropy_diff_decomposition(alpha, N)
    assert terms.total == pytest.approx(imps_entropy_difference(alpha, N), abs=1e-10)


def test_size_term_limit():
    for a in (0.25, 0.5):
        assert -parity_size_term(a, 10**4) == pytest.approx(2 * a, abs=1e-4)


def test_bad_configuration_count():
    with pytest.raises(DomainError):
        imps_log_pmax(0.3, 7, 5)
