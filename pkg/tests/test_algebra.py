import numpy as np
import pytest

from levyleblond.algebra import (
    SQRT2, anticommutator, build_eta_prime, build_matrix_set, dag, invert, is_non_normal,
    verify_algebra,
)
from levyleblond.errors import InvalidArgumentError, SingularMatrixError


@pytest.mark.parametrize("dim", [2, 4])
def test_all_identities_hold(dim):
    rep = verify_algebra(build_matrix_set(dim))
    assert rep.passed, rep.failures()
    assert rep.max_residual <= 1e-12


def test_two_dim_eta_is_canonical():
    s = build_matrix_set(2)
    assert np.allclose(s.eta, SQRT2 * np.array([[0, 0], [1, 0]]))


def test_four_dim_eta_prime_blocks():
    eps = 0.03
    ep = build_eta_prime(build_matrix_set(4), eps)
    block = np.array([[1 - eps, 1j * (1 + eps)], [1j * (1 + eps), -(1 - eps)]]) / SQRT2
    assert np.allclose(ep, np.kron(block, np.eye(2)))


def test_unsupported_dimension():
    with pytest.raises(InvalidArgumentError):
        build_matrix_set(3)


def test_wrong_dimension_accessor():
    with pytest.raises(InvalidArgumentError):
        build_matrix_set(2).gamma5


def test_eta_is_singular_and_regulator_cures_it():
    s = build_matrix_set(4)
    with pytest.raises(SingularMatrixError):
        invert(s.eta)
    for eps in (1e-2, 1e-4):
        ep = build_eta_prime(s, eps)
        assert np.allclose(invert(ep) @ ep, np.eye(4), atol=1e-10)


def test_eta_is_non_normal():
    s = build_matrix_set(2)
    assert is_non_normal(s.eta)
    assert not is_non_normal(s.sigma[0])


def test_broken_set_is_reported_not_raised():
    s = build_matrix_set(2)
    bad = type(s)(2, s.gammas, s.eta + 1e-6, s.eta_dag)
    rep = verify_algebra(bad)
    assert not rep.passed
    assert "eta^2 = 0" in rep.failures()
    assert any(line.startswith("FAIL") for line in rep.lines())


def test_anticommutator_of_eta_pair():
    s = build_matrix_set(4)
    assert np.allclose(anticommutator(s.eta, dag(s.eta)), 2 * np.eye(4))
