import math

import numpy as np
import pytest

from levyleblond import coulomb
from levyleblond.errors import (InconsistentEnergyError, InvalidArgumentError, NotBoundStateError,
                                SupercriticalCouplingError)
from levyleblond.params import PhysParams, QuantumNumbers, admissible_states
from levyleblond.quadrature import RadialGrid

from fd_fields import POINTS, field_equation_residual

BASE = PhysParams()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_closed_form(n):
    assert coulomb.energy_closed_form(n, BASE) == -BASE.alpha ** 2 / (2 * n * n)


@pytest.mark.parametrize("q", admissible_states(4), ids=lambda q: f"n{q.nprime}k{q.kappa}")
def test_recursions_terminate_at_closed_form(q):
    E = coulomb.energy_closed_form(q.n, BASE)
    sol = coulomb.run_recursions(E, q, BASE)
    assert sol.lam == pytest.approx(BASE.m * BASE.coupling / q.n, rel=1e-13)
    assert max(sol.residuals) <= 1e-12
    assert sol.termination_error <= 1e-8
    # F carries exactly n' radial nodes
    assert len(sol.polynomial_nodes()) == q.nprime


def test_wrong_energy_is_inconsistent():
    q = QuantumNumbers(1, 1)
    E = coulomb.energy_closed_form(2, BASE) * 1.001
    with pytest.raises(InconsistentEnergyError):
        coulomb.run_recursions(E, q, BASE)


def test_positive_energy_rejected():
    with pytest.raises(NotBoundStateError):
        coulomb.series_constants(0.1, BASE, 1)


def test_supercritical_coupling_rejected():
    with pytest.raises(SupercriticalCouplingError):
        PhysParams(Z=150)


def test_unknown_convention():
    with pytest.raises(InvalidArgumentError):
        coulomb.bound_state_window(BASE.with_eps(1e-3), "other")


def test_indicial_exponent_at_zero_eps():
    E = coulomb.energy_closed_form(2, BASE)
    for kappa in (1, 2):
        assert coulomb.series_constants(E, BASE, kappa).s == pytest.approx(kappa, rel=1e-15)


@pytest.mark.parametrize("eps", [1e-3, 1e-4, 1e-5])
def test_bisection_agrees_with_quadratic(eps):
    p = BASE.with_eps(eps)
    for q in admissible_states(4):
        E = coulomb.solve_energy_finite_eps(q.nprime, q.kappa, p)
        Q = coulomb.quadratic_energy(q.nprime, q.kappa, p)
        assert E == pytest.approx(Q, rel=1e-10)


@pytest.mark.parametrize("eps", [1e-3, 1e-4, 1e-5])
def test_finite_eps_degeneracy(eps):
    p = BASE.with_eps(eps)
    for n in range(1, 5):
        Es = [coulomb.solve_energy_finite_eps(n - k, k, p) for k in range(1, n + 1)]
        assert (max(Es) - min(Es)) / abs(Es[0]) <= 10 * eps


def test_finite_eps_shift_is_minus_eps_m():
    # the finite-eps level sits eps*m below the closed form, to first order
    for eps in (1e-5, 1e-6, 1e-7):
        p = BASE.with_eps(eps)
        for n in (1, 2):
            E = coulomb.solve_energy_finite_eps(n - 1, 1, p)
            shift = E - coulomb.energy_closed_form(n, BASE)
            assert shift / (-eps * BASE.m) == pytest.approx(1.0, rel=0.05)


def test_eps_slope_is_one():
    from levyleblond.verify import eps_slope
    assert abs(eps_slope(BASE) - 1) <= 0.2


def test_hamiltonian_convention_solution_is_eigenstate():
    p = BASE.with_eps(1e-6)
    E = coulomb.solve_energy_finite_eps(0, 1, p, "hamiltonian")
    sol = coulomb.run_recursions(E, QuantumNumbers(0, 1), p, "hamiltonian")
    assert coulomb.hamiltonian_residual(sol, dps=40) <= 1e-8


def test_literal_convention_solves_flipped_regulator():
    p = BASE.with_eps(1e-6)
    E = coulomb.solve_energy_finite_eps(0, 1, p, "literal")
    sol = coulomb.run_recursions(E, QuantumNumbers(0, 1), p, "literal")
    assert coulomb.hamiltonian_residual(sol, dps=40, eps_h=-1e-6) <= 1e-8
    assert coulomb.hamiltonian_residual(sol, dps=40) > 1e-3


# -- ground state -------------------------------------------------------------

@pytest.mark.parametrize("Z", [1, 2])
def test_d0_matches_formula(Z):
    p = PhysParams(Z=Z)
    gs = coulomb.ground_state(p)
    assert gs.d0 == pytest.approx(coulomb.d0_formula(p), abs=1e-12)
    assert coulomb.d0_formula(BASE) == pytest.approx(0.98973, abs=1e-5)


def test_normalization_and_ratio():
    gs = coulomb.ground_state(BASE)
    fine = RadialGrid.for_state(1, BASE).refined(2)
    from levyleblond.oracle import quadrature_norm
    assert quadrature_norm(gs, fine) == pytest.approx(1.0, abs=1e-8)
    ratio_fine = coulomb.ground_state(BASE, grid=fine).ratio
    assert abs(ratio_fine - gs.ratio) / gs.ratio <= 1e-8
    assert gs.ratio == pytest.approx(1 / (2 * math.sqrt(math.pi)), rel=1e-6)


def test_spin_up_axis_shape():
    gs = coulomb.ground_state(BASE, "up")
    v = gs(BASE.bohr_radius, 0.0, 0.0)
    assert np.allclose(v / v[0], [1, 0, -1j * gs.d0, 0], atol=1e-14)


def test_spin_down_axis_shape():
    gs = coulomb.ground_state(BASE, "down")
    v = gs(BASE.bohr_radius, 0.0, 0.0)
    assert np.allclose(v / v[1], [0, 1, 0, -1j / gs.d0], atol=1e-14)


@pytest.mark.parametrize("spin", ["up", "down"])
def test_ground_state_field_solves_equation(spin):
    p = PhysParams(alpha=0.3)
    gs = coulomb.ground_state(p, spin)

    def psi(x):
        r = np.linalg.norm(x)
        return gs(r, np.arccos(x[2] / r), np.arctan2(x[1], x[0]))
    for x in POINTS + [np.array([0.0, 0.0, 0.8])]:
        assert field_equation_residual(psi, x * p.bohr_radius, p, gs.E, 1e-3 * p.bohr_radius) <= 1e-8


def test_density_is_radial():
    gs = coulomb.ground_state(BASE)
    r = BASE.bohr_radius
    f, g = gs.radial(r)
    for th, ph in ((0.0, 0.0), (1.1, 0.4), (2.9, -2.0)):
        v = gs(r, th, ph)
        assert np.vdot(v, v).real == pytest.approx(f * f + g * g, rel=1e-13)


def test_bad_spin():
    with pytest.raises(InvalidArgumentError):
        coulomb.ground_state(BASE, "sideways")
