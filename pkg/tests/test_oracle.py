import math
import os
import subprocess
import sys

import numpy as np
import pytest

from levyleblond import coulomb, oracle
from levyleblond._accel import HAVE_NUMBA
from levyleblond._kernels import integrate_path, shoot_batch
from levyleblond.errors import GridInadequateError, InvalidArgumentError
from levyleblond.params import PhysParams, QuantumNumbers
from levyleblond.quadrature import RadialGrid

BASE = PhysParams()
needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")


@pytest.mark.parametrize("nprime, kappa", [(0, 1), (1, 1), (0, 2), (2, 1)])
def test_shooting_matches_closed_form(nprime, kappa):
    res = oracle.shoot_eigenvalue(nprime, kappa, BASE)
    Ec = coulomb.energy_closed_form(nprime + kappa, BASE)
    assert abs(res.E - Ec) / abs(Ec) <= 1e-6
    assert res.nodes == nprime
    assert res.match_defect <= 1e-6


def test_degenerate_pair():
    a = oracle.shoot_eigenvalue(1, 1, BASE).E
    b = oracle.shoot_eigenvalue(0, 2, BASE).E
    assert abs(a - b) / abs(a) <= 1e-6


def test_shooting_at_finite_eps_tracks_the_series_root():
    p = BASE.with_eps(1e-4)
    res = oracle.shoot_eigenvalue(0, 1, p)
    E = coulomb.solve_energy_finite_eps(0, 1, p)
    assert abs(res.E - E) / abs(E) <= 1e-6


@pytest.mark.parametrize("nprime", [1, 2])
def test_grid_refinement_is_fourth_order(nprime):
    # nodeless levels are located at the rounding floor on any grid, so the
    # order is measured where a node has to be resolved
    Ec = coulomb.energy_closed_form(nprime + 1, BASE)
    errs = []
    for pts in (1000, 2000, 4000):
        g = RadialGrid.for_state(nprime + 1, BASE, points=pts)
        errs.append(abs(oracle.shoot_eigenvalue(nprime, 1, BASE, grid=g).E - Ec))
    assert errs[0] / errs[1] >= 8 and errs[1] / errs[2] >= 8


def test_short_grid_rejected():
    g = RadialGrid(1e-6 * BASE.bohr_radius, 10 * BASE.bohr_radius)
    with pytest.raises(GridInadequateError):
        oracle.shoot_eigenvalue(0, 1, BASE, grid=g)


def test_uniform_grid_rejected():
    g = RadialGrid(1e-6, 30 * BASE.bohr_radius, spacing="uniform")
    with pytest.raises(InvalidArgumentError):
        oracle.shoot_eigenvalue(0, 1, BASE, grid=g)


def test_off_eigenvalue_integration_diverges():
    q = QuantumNumbers(0, 1)
    g = RadialGrid.for_state(1, BASE)
    E = coulomb.energy_closed_form(1, BASE) * 0.9
    assert oracle.integrate_radial(E, q, BASE, g).diverged


@pytest.mark.parametrize("nprime, kappa", [(0, 1), (1, 1), (0, 2)])
def test_two_sided_matches_series(nprime, kappa):
    q = QuantumNumbers(nprime, kappa)
    E = coulomb.energy_closed_form(q.n, BASE)
    g = RadialGrid.for_state(q.n, BASE, points=16000)
    two = oracle.integrate_two_sided(E, q, BASE, g)
    sol = coulomb.run_recursions(E, q, BASE)
    aB = BASE.bohr_radius
    sel = (g.r >= 0.1 * aB) & (g.r <= 20 * aB)
    F_ser, G_ser = sol.F(g.r[sel]), sol.G(g.r[sel])
    i = np.argmax(np.abs(F_ser))
    scale = F_ser[i] / two.F[sel][i]
    peak = np.max(np.hypot(F_ser, G_ser))
    err = max(np.max(np.abs(scale * two.F[sel] - F_ser)), np.max(np.abs(scale * two.G[sel] - G_ser)))
    assert err / peak <= 1e-8


def test_quadrature_norm_of_pairs():
    g = RadialGrid(1e-6, 60.0)
    assert oracle.quadrature_norm((lambda r: np.exp(-r), lambda r: 0 * r), g) == pytest.approx(0.25)
    with pytest.raises(InvalidArgumentError):
        oracle.quadrature_norm((np.ones(3), np.ones(3)))


# -- kernel backends -----------------------------------------------------------

def _batch_args(count=16):
    q = QuantumNumbers(1, 1)
    g = RadialGrid.for_state(2, BASE)
    Es = -np.geomspace(1e-4, 1e-6, count)
    p1, q1, lam, p2, q2, s = oracle._constants_vec(Es, BASE, 1, "literal")
    k = coulomb.radial_coupling(1)
    F0, G0 = oracle._frobenius_start(g.r_min, p1, q1, lam, p2, q2, s, k)
    return (p1, q1, F0, G0, p2, q2, k, math.log(g.r_min), g.log_step, g.points), q


@needs_numba
def test_backends_agree_on_node_counts():
    args, _ = _batch_args()
    n_np, tail_np = shoot_batch(*args, backend="numpy")
    n_nb, tail_nb = shoot_batch(*args, backend="numba")
    assert np.array_equal(n_np, n_nb)
    assert np.allclose(tail_np, tail_nb, rtol=1e-10)


@needs_numba
def test_backends_agree_on_paths():
    args, _ = _batch_args(1)
    scal = tuple(float(a[0]) if isinstance(a, np.ndarray) else a for a in args)
    F1, G1 = integrate_path(*scal, backend="numpy")
    F2, G2 = integrate_path(*scal, backend="numba")
    assert np.allclose(F1, F2, rtol=1e-12, atol=0) and np.allclose(G1, G2, rtol=1e-12, atol=0)


@needs_numba
def test_backends_agree_on_eigenvalue():
    a = oracle.shoot_eigenvalue(1, 1, BASE, backend="numpy").E
    b = oracle.shoot_eigenvalue(1, 1, BASE, backend="numba").E
    assert a == b


def test_unknown_backend():
    args, _ = _batch_args(2)
    with pytest.raises(ValueError):
        shoot_batch(*args, backend="fortran")


def test_disable_switch_selects_numpy():
    code = ("from levyleblond import _accel, _kernels; "
            "print(_accel.HAVE_NUMBA, _kernels._backend(None))")
    env = dict(os.environ, LL_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True)
    assert out.stdout.split() == ["False", "numpy"]
