# Copyright 2026 The kuniform Authors
# SPDX-License-Identifier: Apache-2.0

import math

import numpy as np
import pytest

import kuniform as ku


def test_ghz_epsilons():
    ghz = ku.ghz_state(3)
    assert ku.uniformity_epsilon(ghz, 3, 2, 1)["epsilon"] < 1e-7
    report = ku.uniformity_epsilon(ghz, 3, 2, 2)
    assert report["epsilon"] == pytest.approx(0.5, abs=1e-12)
    assert report["argmax_subsets"] == [[1, 2], [1, 3], [2, 3]]


def test_purity_symmetry_on_haar_states():
    for seed in range(5):
        psi = ku.haar_state(4, 2, seed=seed)
        assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
        assert ku.subsystem_purity(psi, 4, 2, [1, 3]) == pytest.approx(
            ku.subsystem_purity(psi, 4, 2, [2, 4]), abs=1e-10)


def test_reduced_density_matrix_matches_numpy():
    psi = ku.haar_state(3, 2, seed=3)
    rho = ku.reduced_density_matrix(psi, 3, 2, [1])
    t = psi.reshape(2, 4)
    assert np.allclose(rho, t @ t.conj().T, atol=1e-12)


def test_nonexistence_bound():
    shadow = ku.hypothetical_ame_shadow(2, 4, [1, 2, 3, 4])
    assert shadow == -0.5
    value = ku.nonexistence_epsilon_bound(2, 4, 4, shadow)
    assert value == pytest.approx(1 / (2 * math.sqrt(19)), abs=1e-12)


def test_haar_bound_is_vacuous_and_constraint_raises():
    b = ku.haar_success_lower_bound(4, 2, 2, 0.7)
    assert b["vacuous"] and b["value"] < 0
    with pytest.raises(ku.ConstraintViolation):
        ku.haar_success_lower_bound(4, 2, 2, 0.1)
    assert issubclass(ku.ConstraintViolation, ValueError)


def test_bad_input_raises():
    with pytest.raises(ValueError):
        ku.uniformity_epsilon(np.ones(3, dtype=complex), 2, 2, 1)


def test_optimizer_and_shadow():
    r = ku.minimize_epsilon(3, 2, 1, restarts=3, seed=7)
    assert r["epsilon_star"] < 1e-6
    assert min(ku.shadow_all(r["state"], 3, 2)) >= -1e-9
    assert ku.reference_epsilon(4, 2, 2) == pytest.approx(0.2887)
    assert ku.reference_epsilon(9, 2, 2) is None


def test_bell_rains_enumerator():
    bell = ku.bell_state()
    rho = np.outer(bell, bell.conj())
    aprime, bprime = ku.rains_unitary(rho, rho, 2, 2)
    assert np.allclose(aprime, [1, 1, 1], atol=1e-12)


def test_five_qubit_code():
    v = ku.five_qubit_code()
    assert v.shape == (32, 2)
    cert = ku.code_epsilon(v, 5, 2, 3, restarts=3)
    assert cert["epsilon_lower"] < 1e-6
    assert ku.masking_proximity(v, 5, 2, 2, pairs=10) < 1e-6


def test_phase_region_labels():
    assert ku.phase_region(0.3, -0.5)["label"] == "non-constructible"
    assert ku.phase_region(0.2, 0.0)["label"] == "constructible-but-not-vanishing"


def test_state_file_round_trip(tmp_path):
    psi = ku.haar_state(2, 3, seed=9)
    path = str(tmp_path / "s.json")
    ku.write_state(path, psi, 2, 3)
    back, n, d = ku.read_state(path)
    assert (n, d) == (2, 3)
    assert np.allclose(back, psi, atol=1e-15)


def test_brickwork_depth_zero_is_product():
    psi = ku.brickwork_state(4, 2, 0, seed=2)
    assert psi[0] == 1
    assert ku.mc_uniformity_probability("brickwork", depth=0, n=4, d=2, k=1, eps=0.5,
                                        trials=5)["successes"] == 0
