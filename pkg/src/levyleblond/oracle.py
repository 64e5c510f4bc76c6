"""Brute-force radial oracle: RK4 integration, shooting and quadrature.

Nothing here uses the series coefficients or the closed-form spectrum except
for the two-term Frobenius start at r_min.  Eigenvalues are located by node
counting: integrating outward, F picks up one extra sign change each time E
crosses a bound-state energy, so ``nodes(E) <= n'`` brackets level ``n'``.
"""
from dataclasses import dataclass
import math

import numpy as np

from ._kernels import integrate_path, shoot_batch
from .coulomb import (GroundStateWavefunction, _prefactors, bound_state_window, radial_coupling,
                      series_constants)
from .errors import (GridInadequateError, InvalidArgumentError, RootNotBracketedError,
                     WrongStateError)
from .params import QuantumNumbers
from .quadrature import RadialGrid, radial_norm

PEAK_DECAY = math.exp(-20.0)


@dataclass(frozen=True)
class RadialIntegration:
    r: np.ndarray
    F: np.ndarray
    G: np.ndarray
    diverged: bool
    match_defect: float = float("nan")


@dataclass(frozen=True)
class ShootingResult:
    E: float
    r: np.ndarray
    F_values: np.ndarray
    G_values: np.ndarray
    match_defect: float
    nodes: int
    rounds: int


def _check_grid(grid, n, params):
    if grid.spacing != "log":
        raise InvalidArgumentError("the RK4 kernels run on log-spaced grids")
    need = 30.0 * n * n * params.bohr_radius
    if grid.r_max < need * (1 - 1e-12):
        raise GridInadequateError(f"r_max = {grid.r_max} < 30 n^2 a_B = {need}")


def _constants_vec(E, params, kappa, convention):
    """p1, q1, lam over an array of energies; p2, q2, s, k are E-independent."""
    E = np.asarray(E, dtype=float)
    ap, aq = _prefactors(params, convention)
    m, za = params.m, params.coupling
    u, v = aq * aq, ap * ap
    lam2 = ((u - v) * (E * E + m * m) - 2 * (u + v) * E * m) / 2
    if np.any(lam2 <= 0):
        raise InvalidArgumentError("energy outside the bound-state window")
    p2, q2 = ap * za / math.sqrt(2), aq * za / math.sqrt(2)
    s = math.sqrt(kappa * kappa + q2 * q2 - p2 * p2)
    return ap * (E + m) / math.sqrt(2), aq * (E - m) / math.sqrt(2), np.sqrt(lam2), p2, q2, s


def _frobenius_start(r0, p1, q1, lam, p2, q2, s, k):
    """F, G at r0 from the first two series terms (a0 = 1)."""
    b0 = -(q2 + s) / (p2 + k)
    N = 1 + s
    M = np.array([[q2 + N, p2 + k], [k - p2, N - q2]])
    rhs0 = (lam - q1) - p1 * b0
    rhs1 = p1 + (q1 + lam) * b0
    Minv = np.linalg.inv(M)
    a1 = Minv[0, 0] * rhs0 + Minv[0, 1] * rhs1
    b1 = Minv[1, 0] * rhs0 + Minv[1, 1] * rhs1
    env = np.exp(-lam * r0) * r0 ** s
    return env * (1.0 + a1 * r0), env * (b0 + b1 * r0)


def node_counts(energies, quantum, params, grid, convention="literal", backend=None):
    """Sign changes of F over the whole grid for each energy."""
    k = radial_coupling(quantum.kappa)
    p1, q1, lam, p2, q2, s = _constants_vec(energies, params, quantum.kappa, convention)
    F0, G0 = _frobenius_start(grid.r_min, p1, q1, lam, p2, q2, s, k)
    nodes, _ = shoot_batch(np.atleast_1d(p1), np.atleast_1d(q1), np.atleast_1d(F0),
                           np.atleast_1d(G0), p2, q2, k, math.log(grid.r_min),
                           grid.log_step, grid.points, backend)
    return nodes


def integrate_radial(E, quantum, params, grid, convention="literal", backend=None):
    """Outward RK4 from r_min; ``diverged`` flags overflow or a non-decaying tail."""
    if grid.spacing != "log":
        raise InvalidArgumentError("the RK4 kernels run on log-spaced grids")
    c = series_constants(E, params, quantum.kappa, convention)
    k = c.k
    F0, G0 = _frobenius_start(grid.r_min, c.p1, c.q1, c.lam, c.p2, c.q2, c.s, k)
    with np.errstate(over="ignore", invalid="ignore"):
        F, G = integrate_path(c.p1, c.q1, F0, G0, c.p2, c.q2, k, math.log(grid.r_min),
                              grid.log_step, grid.points, backend)
        amp = np.hypot(F, G)
        diverged = not np.all(np.isfinite(amp)) or amp[-1] > PEAK_DECAY * np.max(amp)
    return RadialIntegration(grid.r, F, G, bool(diverged))


def _scan_energies(params, convention, count):
    # Deep energies are not resolved at large r, but the RK4 amplification of
    # the decaying mode stays positive there, so node counts remain valid.
    lo_w, hi_w = bound_state_window(params, convention)
    e_max = abs(lo_w) * (1 - 1e-9)
    e_min = abs(hi_w) * (1 + 1e-6) if hi_w < 0 else 1e-10 * params.m
    if e_min >= e_max:
        raise RootNotBracketedError("bound-state window is empty for these parameters")
    return -np.geomspace(e_max, e_min, count)


def shoot_eigenvalue(nprime, kappa, params, grid=None, convention="literal", backend=None,
                     batch=32, max_rounds=60):
    q = QuantumNumbers(nprime, kappa)
    grid = RadialGrid.for_state(q.n, params) if grid is None else grid
    _check_grid(grid, q.n, params)

    Es = _scan_energies(params, convention, batch)
    counts = node_counts(Es, q, params, grid, convention, backend)
    below = np.nonzero(counts <= nprime)[0]
    above = np.nonzero(counts > nprime)[0]
    if len(below) == 0 or len(above) == 0:
        raise RootNotBracketedError(f"scan never crosses level n'={nprime}: counts {counts.tolist()}")
    lo, hi = Es[below[-1]], Es[above[0]]
    if lo >= hi:
        raise RootNotBracketedError("node counts are not monotone in E")

    rounds = 0
    while rounds < max_rounds:
        rounds += 1
        pts = np.linspace(lo, hi, batch + 2)[1:-1]
        c = node_counts(pts, q, params, grid, convention, backend)
        ok = c <= nprime
        new_lo = pts[ok].max() if ok.any() else lo
        new_hi = pts[~ok].min() if (~ok).any() else hi
        if new_lo == lo and new_hi == hi:
            break
        lo, hi = new_lo, new_hi
        if hi - lo <= 4 * np.spacing(abs(lo)):
            break
    E = 0.5 * (lo + hi)
    n_lo = int(node_counts(np.array([lo]), q, params, grid, convention, backend)[0])
    if n_lo != nprime:
        raise WrongStateError(f"converged on a level with {n_lo} nodes, wanted {nprime}")
    two = integrate_two_sided(E, q, params, grid, convention, backend)
    F, G, defect = two.F, two.G, two.match_defect
    nodes = _interior_nodes(F)
    if nodes != nprime:
        raise WrongStateError(f"eigenfunction has {nodes} nodes, wanted {nprime}")
    return ShootingResult(E, grid.r, F, G, defect, nodes, rounds)


def _interior_nodes(F):
    peak = np.max(np.abs(F))
    sig = F[np.abs(F) > 1e-12 * peak]
    return int(np.count_nonzero(np.signbit(sig[1:]) != np.signbit(sig[:-1])))


def integrate_two_sided(E, quantum, params, grid, convention="literal", backend=None):
    """Outward solution up to n^2 a_B / Z, inward recessive solution beyond.

    Outward integration alone is swamped by the growing mode once
    exp(2 lam r) times the local error is O(1); integrating the tail inward
    keeps it on the decaying branch.  ``match_defect`` is the sine of the angle
    between the two (F, G) vectors at the matching radius.
    """
    c = series_constants(E, params, quantum.kappa, convention)
    out = integrate_radial(E, quantum, params, grid, convention, backend)
    r = grid.r
    r_match = quantum.n ** 2 * params.bohr_radius / params.Z
    i = min(max(int(np.searchsorted(r, r_match)), 1), grid.points - 2)
    # recessive direction at large r: G/F = (lam - q1)/p1
    F_in, G_in = integrate_path(c.p1, c.q1, 1.0, c.termination_ratio, c.p2, c.q2, c.k,
                                math.log(grid.r_max), -grid.log_step, grid.points - i, backend)
    F_in, G_in = F_in[::-1], G_in[::-1]
    fo, go = out.F[i], out.G[i]
    fi, gi = F_in[0], G_in[0]
    scale = (fo * fi + go * gi) / (fi * fi + gi * gi)
    defect = abs(fo * gi - go * fi) / (math.hypot(fo, go) * math.hypot(fi, gi))
    F = np.concatenate([out.F[:i], scale * F_in])
    G = np.concatenate([out.G[:i], scale * G_in])
    return RadialIntegration(r, F, G, False, float(defect))


def quadrature_norm(wavefunction, grid=None, angular_factor=None):
    """int (|g|^2 + |f|^2) r^2 dr times the angular factor.

    ``wavefunction`` is a ``GroundStateWavefunction`` (angular factor 4 pi,
    since its radial parts carry the 1/sqrt(4 pi)) or a pair ``(f, g)`` of
    callables or arrays on ``grid`` (angular factor 1 by default).
    """
    if isinstance(wavefunction, GroundStateWavefunction):
        grid = RadialGrid.for_state(1, wavefunction.params) if grid is None else grid
        f, g = wavefunction.radial(grid.r)
        factor = 4 * math.pi if angular_factor is None else angular_factor
        return radial_norm(f, g, grid, factor)
    if grid is None:
        raise InvalidArgumentError("a grid is required for (f, g) pairs")
    f, g = wavefunction
    f = f(grid.r) if callable(f) else np.asarray(f)
    g = g(grid.r) if callable(g) else np.asarray(g)
    return radial_norm(f, g, grid, 1.0 if angular_factor is None else angular_factor)
