import ast
import inspect

import numpy as np
import pytest
from conftest import modes_0802

from slocc import oracle
from slocc.algebra import DOWN, PSI0, UP, SingleParticleState, SpatialWavefunction, product_state, wedge
from slocc.checks import QUANTITIES, passed, run_suite
from slocc.errors import UndefinedEntanglementError


def test_fermion_identical_pair_embeds_to_zero():
    phi = SingleParticleState(("L", "R"), [[0.3, 0.1j], [0.5, -0.2]])
    assert np.allclose(oracle.embed_pair(phi, phi, -1), 0)


def test_boson_identical_pair_norm_two():
    phi = PSI0.with_spin(UP)
    v = oracle.embed_pair(phi, phi, 1)
    assert np.allclose(v, np.sqrt(2) * np.outer(phi.vector, phi.vector))
    assert np.vdot(v, v).real == pytest.approx(2)


def test_orthogonal_spin_pair_norm_one(stats):
    psi = SpatialWavefunction.from_angle(0.4, 1.0)
    e = oracle.embed(product_state(psi, PSI0, stats))
    assert e.norm_squared() == pytest.approx(1, abs=1e-12)
    assert e.is_exchange_symmetric()
    assert np.allclose(e.swap(), stats.eta * e.vector)


def test_reduced_matrix_examples(stats):
    e = oracle.embed(product_state(PSI0, PSI0, stats))
    dm = oracle.oracle_reduced_matrix(e, "L", "R")
    assert np.allclose(dm.matrix, np.eye(2) / 2, atol=1e-12)

    psi, psi_p = modes_0802()
    dm = oracle.oracle_reduced_matrix(oracle.embed(product_state(psi, psi_p, stats)), "L", "R")
    assert np.allclose(dm.matrix, np.diag([1, 16]) / 17, atol=1e-12)

    sep = product_state(SpatialWavefunction({"L": 1.0}), SpatialWavefunction({"R": 1.0}), stats, ("L", "R"))
    dm = oracle.oracle_reduced_matrix(oracle.embed(sep), "L", "R")
    assert np.allclose(dm.matrix, np.diag([0, 1]), atol=1e-12)


def test_reduced_matrix_undefined():
    both_l = product_state(SpatialWavefunction({"L": 1.0}), SpatialWavefunction({"L": 1.0}), "boson", ("L", "R"))
    with pytest.raises(UndefinedEntanglementError):
        oracle.oracle_reduced_matrix(oracle.embed(both_l), "L", "R")


def test_projection_and_sign_flip():
    _, prob = oracle.oracle_project_lr(oracle.embed(product_state(PSI0, PSI0, "boson")))
    assert prob == pytest.approx(0.5, abs=1e-12)
    psi, psi_p = modes_0802()
    b, _ = oracle.oracle_project_lr(oracle.embed(product_state(psi, psi_p, "boson")))
    f, _ = oracle.oracle_project_lr(oracle.embed(product_state(psi, psi_p, "fermion")))
    assert np.allclose(b[0, 1], f[0, 1]) and np.allclose(b[1, 0], -f[1, 0])


def test_concurrence_spin_flip():
    h = 1 / np.sqrt(2)
    assert oracle.oracle_concurrence([0, h, h, 0]) == pytest.approx(1)
    assert oracle.oracle_concurrence([1, 0, 0, 0]) == pytest.approx(0)


def test_entropy():
    assert oracle.oracle_entropy(np.eye(2) / 2) == pytest.approx(1)
    assert oracle.oracle_entropy(np.diag([1.0, 0.0])) == 0


def test_teleport_branch_probabilities(stats):
    probs = oracle.oracle_outcome_probabilities(oracle.oracle_teleport_branches(0.6, 0.8j, int(stats)))
    assert probs["ZeroInL"] == pytest.approx(0.25, abs=1e-12)
    assert probs["TwoInL"] == pytest.approx(0.25, abs=1e-12)
    for name in ("PsiPlus", "PsiMinus", "PhiPlus", "PhiMinus"):
        assert probs[name] == pytest.approx(0.125, abs=1e-12)


def test_three_particle_vector_normalized(stats):
    v = oracle.teleport_vector(0.6, 0.8j, int(stats))
    assert np.vdot(v, v).real == pytest.approx(1)
    assert np.allclose(v.transpose(0, 2, 1), int(stats) * v)


def test_oracle_does_not_call_algebra():
    tree = ast.parse(inspect.getsource(oracle))
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom) and node.module == "algebra":
            imported |= {a.name for a in node.names}
    assert imported <= {"SPINS"}
    for name in ("overlap_two", "partial_overlap", "wedge", "norm", "TwoParticleState"):
        assert not hasattr(oracle, name)


def test_suite_small_run_passes():
    dev = run_suite(cases=40, seed=3)
    assert set(dev) == set(QUANTITIES)
    assert passed(dev, 1e-12)


def test_suite_fault_detected():
    assert not passed(run_suite(cases=2, seed=0, fault=1e-6))


def test_pauli_state_embeds_to_zero():
    phi = PSI0.with_spin(DOWN)
    assert np.allclose(oracle.embed(wedge(phi, phi, "fermion")).vector, 0)
