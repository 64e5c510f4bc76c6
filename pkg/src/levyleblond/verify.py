"""Verification suites shared by the CLI and the test-suite.

Each suite returns a list of ``Check`` rows; nothing raises on failure.
"""
from dataclasses import dataclass

import numpy as np

from . import coulomb, hamiltonian, oracle, planewave
from .algebra import build_matrix_set, verify_algebra
from .params import TOL, PhysParams, QuantumNumbers, admissible_states

SUITES = ("algebra", "dispersion", "hamiltonian", "commutators", "coulomb", "oracle")
COMMUTATOR_PAIRS = (("H", "J2"), ("H", "Jz"), ("H", "K"), ("K", "J2"), ("K", "Jz"))


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self):
        return bool(self.residual <= self.tol)

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: residual={self.residual:.3e} tol={self.tol:.1e}"


def suite_algebra(params=None):
    out = []
    for dim in (2, 4):
        rep = verify_algebra(build_matrix_set(dim))
        out += [Check(f"dim{dim} {k}", v, rep.tol) for k, v in rep.residuals.items()]
    return out


def suite_dispersion(params=None):
    m = 1.0 if params is None else params.m
    out = []
    worst = 0.0
    for E in (0.0, 0.3, 2.0, 7.5):
        for mode in planewave.momentum_modes(E, m):
            worst = max(worst, planewave.mode_residual(mode, m) / max(1.0, abs(mode.p)))
    out.append(Check("plane-wave modes solve p psi = (eta E + eta^dag m) psi", worst, TOL["dispersion"]))

    worst_R = worst_sum = 0.0
    for E in np.linspace(0.05, 3.0, 10):
        for V0 in np.linspace(-1.0, 2.0, 10):
            if abs(E - V0) < 1e-9:
                continue
            res = planewave.solve_step(E, V0, m)
            R, T = planewave.schrodinger_step(E, V0, m)
            worst_R = max(worst_R, abs(res.R - R), abs(res.T - T))
            worst_sum = max(worst_sum, abs(res.R + res.T - 1))
            res = planewave.solve_barrier(E, V0, 1.3, m)
            Tb = planewave.schrodinger_barrier_T(E, V0, 1.3, m)
            worst_R = max(worst_R, abs(res.T - Tb), abs(res.R - (1 - Tb)))
            worst_sum = max(worst_sum, abs(res.R + res.T - 1))
    out.append(Check("step/barrier R, T vs Schroedinger closed forms", worst_R, TOL["scattering"]))
    out.append(Check("R + T = 1", worst_sum, TOL["scattering"]))
    slope = nr_slope()
    out.append(Check("NR reduction residual slope vs E'/m (|slope - 1|)", abs(slope - 1.0), 0.2))
    return out


def nr_slope(m=1.0, lo=1e-6, hi=1e-2, points=9):
    Ep = np.geomspace(lo, hi, points) * m
    res = [planewave.nr_reduction_residual(e, m, angle=0.7) for e in Ep]
    return float(np.polyfit(np.log(Ep / m), np.log(res), 1)[0])


def momentum_branch_errors(rng, eps_values=(1e-2, 1e-3, 1e-4), count=100, m=1.0, pmax=0.3):
    """Worst deviations of the momentum-space spectrum from p^2/2m and m/eps - p^2/2m.

    Returns (finite_dev, divergent_dev, imag_ratio), deviations in units of eps*m.
    """
    fin = div = imag = 0.0
    for eps in eps_values:
        params = PhysParams(m=m, eps=eps)
        for _ in range(count):
            d = rng.normal(size=3)
            p = d / np.linalg.norm(d) * pmax * m * rng.uniform() ** (1 / 3)
            H = hamiltonian.momentum_hamiltonian(p, params)
            kin = float(p @ p) / (2 * m)
            imag = max(imag, hamiltonian.momentum_eigen_residual(H, params))
            finite, renorm = hamiltonian.finite_and_divergent_eigenvalues(H, params, p)
            fin = max(fin, max(abs(e - kin) for e in finite) / (eps * m))
            div = max(div, max(abs(e + kin) for e in renorm) / (eps * m))
    return fin, div, imag


def suite_hamiltonian(params=None, seed=0):
    rng = np.random.default_rng(seed)
    fin, div, imag = momentum_branch_errors(rng)
    out = [
        Check("finite pair within 5 eps m of p^2/2m", fin, 5.0),
        Check("divergent pair within 5 eps m of m/eps - p^2/2m", div, 5.0),
        Check("imaginary parts / (m/eps)", imag, 1e-10),
    ]
    worst = 0.0
    for eps in (1e-2, 1e-3, 1e-4):
        prm = PhysParams(eps=eps)
        for p in rng.uniform(-0.3, 0.3, size=(10, 3)):
            H = hamiltonian.momentum_hamiltonian(p, prm)
            low, high = hamiltonian.branch_energies(float(p @ p), prm)
            w = np.sort(np.linalg.eigvals(H).real)
            worst = max(worst, abs(w[0] - low) / prm.m, abs(w[1] - low) / prm.m,
                        abs(w[2] - high) / high, abs(w[3] - high) / high)
    out.append(Check("eigenvalues vs exact branch roots", worst, 1e-9))
    return out


def suite_commutators(params=None, count=50, seed=1):
    eps = 1e-3 if params is None or params.eps == 0 else params.eps
    prm = PhysParams(eps=eps) if params is None else params.with_eps(eps)
    rng = np.random.default_rng(seed)
    worst = {pair: 0.0 for pair in COMMUTATOR_PAIRS}
    worst_k = 0.0
    for pot in ("free", "coulomb"):
        spec = hamiltonian.HamiltonianSpec(prm, pot)
        for i in range(count):
            st = hamiltonian.random_ansatz_state(rng, int(rng.integers(1, 4)), prm,
                                                 m_j=0.5 if i % 2 == 0 else -0.5)
            for pair in COMMUTATOR_PAIRS:
                worst[pair] = max(worst[pair], hamiltonian.commutator_residual(*pair, st, spec))
            worst_k = max(worst_k, hamiltonian.k_preservation_residual(st, spec))
    out = [Check(f"[{a}, {b}]", v, TOL["commutator"]) for (a, b), v in worst.items()]
    out.append(Check("K (H psi) = -kappa H psi", worst_k, TOL["commutator"]))
    return out


def suite_coulomb(params=None):
    params = PhysParams() if params is None else params
    base = params.with_eps(0.0)
    out = []
    lam = rec = term = 0.0
    for q in admissible_states(4):
        E = coulomb.energy_closed_form(q.n, base)
        sol = coulomb.run_recursions(E, q, base)
        lam = max(lam, abs(sol.lam - base.m * base.coupling / q.n) / (base.m * base.coupling / q.n))
        rec = max(rec, max(sol.residuals))
        term = max(term, sol.termination_error)
    out.append(Check("lambda = m Z alpha / n at closed-form E", lam, 1e-12))
    out.append(Check("recursion residuals", rec, TOL["recursion"]))
    out.append(Check("termination ratio", term, TOL["termination"]))

    worst_deg = 0.0
    worst_quad = 0.0
    for eps in (1e-3, 1e-4, 1e-5):
        pe = base.with_eps(eps)
        for n in range(1, 5):
            Es = [coulomb.solve_energy_finite_eps(n - k, k, pe) for k in range(1, n + 1)]
            worst_deg = max(worst_deg, (max(Es) - min(Es)) / abs(Es[0]) / eps)
            for k, E in zip(range(1, n + 1), Es):
                Q = coulomb.quadratic_energy(n - k, k, pe)
                worst_quad = max(worst_quad, abs(E - Q) / abs(Q))
    out.append(Check("finite-eps degeneracy spread / eps", worst_deg, 10.0))
    out.append(Check("bisection root vs quadratic oracle", worst_quad, 1e-10))
    out.append(Check("|eps-convergence slope - 1|", abs(eps_slope(base) - 1.0), 0.2))

    gs = coulomb.ground_state(base)
    out.append(Check("d0 vs closed formula", abs(gs.d0 - coulomb.d0_formula(base)), 1e-12))
    fine = oracle.RadialGrid.for_state(1, base).refined(2)
    out.append(Check("ground-state norm on a refined grid", abs(oracle.quadrature_norm(gs, fine) - 1), 1e-8))
    out.append(Check("N ratio stable under refinement",
                     abs(coulomb.ground_state(base, grid=fine).ratio - gs.ratio) / gs.ratio, 1e-8))

    pe = base.with_eps(1e-6)
    E = coulomb.solve_energy_finite_eps(0, 1, pe, "hamiltonian")
    sol = coulomb.run_recursions(E, QuantumNumbers(0, 1), pe, "hamiltonian")
    out.append(Check("H psi = E psi (hamiltonian constants, eps=1e-6, 40 digits)",
                     coulomb.hamiltonian_residual(sol, dps=40), 1e-8))
    return out


def eps_slope(params, eps_values=(1e-3, 1e-4, 1e-5), states=((0, 1),)):
    worst = None
    for nprime, kappa in states:
        Ec = coulomb.energy_closed_form(nprime + kappa, params)
        err = [abs(coulomb.solve_energy_finite_eps(nprime, kappa, params.with_eps(e)) - Ec) / abs(Ec)
               for e in eps_values]
        slope = float(np.polyfit(np.log(eps_values), np.log(err), 1)[0])
        if worst is None or abs(slope - 1) > abs(worst - 1):
            worst = slope
    return worst


def shooting_table(params_list, n_max=4, backend=None):
    rows = []
    for prm in params_list:
        for q in admissible_states(n_max):
            res = oracle.shoot_eigenvalue(q.nprime, q.kappa, prm, backend=backend)
            Ec = coulomb.energy_closed_form(q.n, prm)
            rows.append((prm.Z, q, res, abs(res.E - Ec) / abs(Ec)))
    return rows


def suite_oracle(params=None):
    base = PhysParams() if params is None else params.with_eps(0.0)
    prms = [PhysParams(base.m, Z, base.alpha) for Z in (1, 2)]
    return [Check(f"shooting Z={Z} n'={q.nprime} kappa={q.kappa}", rel, 1e-6)
            for Z, q, res, rel in shooting_table(prms)]


def run_suite(name, params=None):
    fn = {
        "algebra": suite_algebra,
        "dispersion": suite_dispersion,
        "hamiltonian": suite_hamiltonian,
        "commutators": suite_commutators,
        "coulomb": suite_coulomb,
        "oracle": suite_oracle,
    }[name]
    return fn(params)
