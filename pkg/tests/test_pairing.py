import math

import numpy as np
import pytest

import oracles
from entrocut import (
    OracleLimitError,
    assemble_theta,
    build_truncated_space,
    oracle_vs_bounds,
    polarization_check,
    pure_state_vector,
    tau_ensemble,
    theta_eval,
    theta_product_identity_check,
)
from entrocut.energy import f_delta_int
from entrocut.pairing import theta_direct


@pytest.fixture(scope="module")
def space4(u1_small):
    return build_truncated_space(u1_small, 4)


def test_space_layout(u1_small):
    sp = build_truncated_space(u1_small, 4)
    assert sp.dim == sum(u1_small.dims[:5]) == 12
    assert list(sp.labels[:4]) == [0, 1, 2, 2]
    assert sp.dims_by_level == (1, 1, 2, 3, 5)


def test_space_dim_limit(u1_small):
    with pytest.raises(OracleLimitError):
        build_truncated_space(u1_small, 30, dim_limit=400)


def test_pure_state_vectors_unit_with_phase_structure(space4):
    e_0 = np.zeros(space4.dim, dtype=complex)
    e_0[0] = 1.0
    for n in (1, 5, 11):
        e_n = np.zeros(space4.dim, dtype=complex)
        e_n[n] = 1.0
        for k in range(4):
            v = pure_state_vector(space4, k, n)
            assert abs(np.linalg.norm(v) - 1.0) <= 1e-15
            assert np.allclose(v, (e_0 + 1j**k * e_n) / math.sqrt(2), atol=1e-15)
        # opposite phases cancel the vacuum component
        diff = pure_state_vector(space4, 0, n) - pure_state_vector(space4, 2, n)
        assert np.allclose(diff, math.sqrt(2) * e_n)
    with pytest.raises(ValueError):
        pure_state_vector(space4, 0, 0)
    with pytest.raises(ValueError):
        pure_state_vector(space4, 4, 1)


def test_polarization_identities(space4):
    rng = np.random.default_rng(41)
    x = rng.normal(size=(space4.dim, space4.dim)) + 1j * rng.normal(size=(space4.dim, space4.dim))
    worst = 0.0
    for n in range(1, space4.dim):
        r1, r2 = polarization_check(space4, x, n)
        worst = max(worst, r1, r2)
    assert worst <= 1e-12


def test_theta_split_matches_direct(space4, ef075):
    assert theta_product_identity_check(space4, ef075, 0.5) <= 1e-10
    assert theta_product_identity_check(space4, ef075, 1.0) <= 1e-10


def test_theta_on_identity_recovers_norm(space4, ef075):
    dec = assemble_theta(space4, ef075, 0.7)
    one = np.eye(space4.dim, dtype=complex)
    plus, _ = theta_eval(dec, one, one)
    # theta_plus(1 (x) 1) = vacuum + 4 |f|/2 per excited slot = c_{delta,E}
    ens = tau_ensemble(space4, ef075, 0.7)
    assert abs(plus.real - ens.total) <= 1e-12
    assert abs(plus.imag) <= 1e-15


def test_theta_direct_on_identity(space4, ef075):
    dec = assemble_theta(space4, ef075, 0.7)
    one = np.eye(space4.dim, dtype=complex)
    # both tensor slots at the vacuum row: f(0) twice
    assert abs(theta_direct(dec, one, one) - 1.0) <= 1e-12


def test_theta_weights_and_sign_routing(space4, ef075):
    delta = 0.5
    dec = assemble_theta(space4, ef075, delta)
    # every excited slot contributes 4 terms to each part
    n_excited = space4.dim - 1
    assert len(dec.plus_weights) == 1 + 4 * n_excited
    assert len(dec.minus_weights) == 4 * n_excited
    assert dec.plus_weights[0] == 1.0
    assert dec.dropped_count == 0
    # plus part: left == right exactly when f(delta l_n) > 0
    for i in range(1, len(dec.plus_weights)):
        same = np.array_equal(dec.plus_left[i], dec.plus_right[i])
        w = dec.plus_weights[i]
        n = int(np.argmax(np.abs(dec.plus_left[i][1:])) + 1)
        fd = dec.window_by_label[int(space4.labels[n])]
        assert abs(w - abs(fd) / 2.0) <= 1e-17
        assert same == (fd > 0.0)


def test_tau_total_is_weighted_multiplicity_sum(space4, ef075, u1_small):
    delta = 0.9
    ens = tau_ensemble(space4, ef075, delta)
    expect = 1.0
    for n in range(1, 5):
        expect += 2.0 * u1_small.dims[n] * abs(f_delta_int(ef075, delta, n)[0])
    # summation order differs (pairwise vs sequential), so allow an ulp
    assert abs(ens.total - expect) <= 1e-13
    assert ens.label == "tau[u1, delta=0.9, E=4]"


def test_quadrature_range_guard(space4, ef075):
    with pytest.raises(ValueError):
        assemble_theta(space4, ef075, 60.0)   # delta * E = 240 > 200
    with pytest.raises(ValueError):
        tau_ensemble(space4, ef075, 60.0)


def test_oracle_comparison_vacuum_degenerate(u1_small, ef075):
    sp = build_truncated_space(u1_small, 0)
    oc = oracle_vs_bounds(sp, ef075, 0.5)
    assert oc.exact_entropy == 0.0
    assert oc.entropy_bound == 0.0
    assert oc.c_deltaE == 1.0
    assert oc.ok


def test_oracle_comparison_pinned_values(u1_small, ef075):
    sp = build_truncated_space(u1_small, 2)
    oc = oracle_vs_bounds(sp, ef075, 0.1)
    assert abs(oc.exact_entropy - 1.059874) <= 1e-5
    assert abs(oc.entropy_bound - 2.401960) <= 1e-5
    assert oc.slack > 0 and oc.ok


def test_oracle_entropy_against_lapack(u1_small, ef075):
    from entrocut import assemble_density
    sp = build_truncated_space(u1_small, 6)
    ens = tau_ensemble(sp, ef075, 1.0)
    rho = assemble_density(ens).matrix
    oc = oracle_vs_bounds(sp, ef075, 1.0)
    assert abs(oc.exact_entropy - oracles.entropy_eigvalsh(rho)) <= 1e-10


def test_oracle_grid_slack_positive(u1_small, ef075):
    for E in (0, 2, 4, 6):
        sp = build_truncated_space(u1_small, E)
        for delta in (0.1, 0.5, 1.0):
            oc = oracle_vs_bounds(sp, ef075, delta)
            assert oc.slack >= -1e-9
