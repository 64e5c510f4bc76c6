"""Frobenius-series solution of the Coulomb problem.

With ``F = r f`` and ``G = r g`` the radial pair obeys

    F' + (q1 + q2/r) F + (p1 + (p2 + k)/r) G = 0
    G' - (q1 + q2/r) G - (p1 + (p2 - k)/r) F = 0

where ``k = radial_coupling(kappa)``.  The series

    F = exp(-lam r) r^s sum a_n r^n,   G = exp(-lam r) r^s sum b_n r^n

terminates at ``n'`` only for quantized E, and ``a_0 = 1`` fixes the scale.

Two conventions are offered for the constants.  ``"literal"`` attaches
``a = 1 + eps`` to p1, p2 and ``a' = 1 - eps`` to q1, q2.  ``"hamiltonian"``
swaps them, which is what the reduction of ``eta'^-1 (gamma.p - m eta'^dag)``
actually produces; both agree at eps = 0.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .errors import (DegenerateRecursionError, InconsistentEnergyError, InvalidArgumentError,
                     NotBoundStateError, RootNotBracketedError, SupercriticalCouplingError)
from .hamiltonian import AnsatzState
from .params import TOL, PhysParams, QuantumNumbers
from .quadrature import RadialGrid, radial_norm
from .radial import RadialFunction

SQRT2 = math.sqrt(2.0)
CONVENTIONS = ("literal", "hamiltonian")


def radial_coupling(kappa):
    """Coefficient of the 1/r cross terms for K psi = -kappa psi.

    The block form of ``i gamma5 gamma0 (Sigma.L + I)`` in the Dirac basis
    makes this ``-kappa``; with it the eps = 0 system reduces to the hydrogen
    radial equation with ``l = kappa - 1`` for ``F + G``.
    """
    return -kappa


def _prefactors(params, convention):
    if convention == "literal":
        return params.a, params.a_prime
    if convention == "hamiltonian":
        return params.a_prime, params.a
    raise InvalidArgumentError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


@dataclass(frozen=True)
class SeriesConstants:
    p1: float
    p2: float
    q1: float
    q2: float
    lam: float
    s: float
    kappa: int

    @property
    def k(self):
        return radial_coupling(self.kappa)

    @property
    def termination_ratio(self):
        """b/a at the last coefficient."""
        return (self.lam - self.q1) / self.p1


def _raw_constants(E, params, convention):
    ap, aq = _prefactors(params, convention)
    m, za = params.m, params.coupling
    return ap * (E + m) / SQRT2, ap * za / SQRT2, aq * (E - m) / SQRT2, aq * za / SQRT2


def indicial_exponent(kappa, constants):
    """Positive root s = sqrt(kappa^2 + q2^2 - p2^2)."""
    c = constants
    rad = kappa * kappa + c.q2 * c.q2 - c.p2 * c.p2
    if rad <= 0:
        raise SupercriticalCouplingError(f"indicial radicand {rad} <= 0")
    return math.sqrt(rad)


def series_constants(E, params, kappa, convention="literal"):
    if kappa < 1 or int(kappa) != kappa:
        raise InvalidArgumentError(f"kappa must be a positive integer, got {kappa}")
    if not E < 0:
        raise NotBoundStateError(f"E = {E} is not negative")
    p1, p2, q1, q2 = _raw_constants(E, params, convention)
    ap, aq = _prefactors(params, convention)
    u, v, m = aq * aq, ap * ap, params.m
    # q1^2 - p1^2 expanded so that eps = 0 gives exactly -2 E m
    lam2 = ((u - v) * (E * E + m * m) - 2 * (u + v) * E * m) / 2
    if lam2 <= 0:
        raise NotBoundStateError(f"q1^2 - p1^2 = {lam2} <= 0 at E = {E}")
    partial = SeriesConstants(p1, p2, q1, q2, math.sqrt(lam2), 0.0, int(kappa))
    s = indicial_exponent(kappa, partial)
    return SeriesConstants(p1, p2, q1, q2, math.sqrt(lam2), s, int(kappa))


def energy_closed_form(n, params):
    """E = -m Z^2 alpha^2 / (2 n^2)."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n}")
    return -params.m * params.coupling ** 2 / (2.0 * n * n)


# -- recursions ---------------------------------------------------------------

def _step_matrix(c, n):
    """Left-hand side matrix acting on (a_n, b_n) in the step n-1 -> n."""
    N = n + c.s
    return np.array([[c.q2 + N, c.p2 + c.k], [c.k - c.p2, N - c.q2]])


def _step_rhs(c, a, b):
    return np.array([(c.lam - c.q1) * a - c.p1 * b, c.p1 * a + (c.q1 + c.lam) * b])


def _recursion_coefficients(c, nprime):
    # n = -1: (q2 + s) a0 + (p2 + k) b0 = 0
    if abs(c.p2 + c.k) == 0:
        raise DegenerateRecursionError("indicial relation does not fix b0")
    a = [1.0]
    b = [-(c.q2 + c.s) / (c.p2 + c.k)]
    for n in range(1, nprime + 1):
        M = _step_matrix(c, n)
        det = np.linalg.det(M)
        if abs(det) <= 1e-300:
            raise DegenerateRecursionError(f"singular step matrix at n = {n}")
        an, bn = np.linalg.solve(M, _step_rhs(c, a[-1], b[-1]))
        a.append(float(an))
        b.append(float(bn))
    return np.array(a), np.array(b)


def recursion_residuals(c, a_coeffs, b_coeffs):
    """Relative residuals of both relations for n = -1 .. n'-1."""
    out = []
    for n in range(len(a_coeffs)):
        lhs = _step_matrix(c, n) @ np.array([a_coeffs[n], b_coeffs[n]])
        if n == 0:
            rhs = np.zeros(2)
        else:
            rhs = _step_rhs(c, a_coeffs[n - 1], b_coeffs[n - 1])
        M = np.abs(_step_matrix(c, n)) @ np.abs([a_coeffs[n], b_coeffs[n]])
        scale = np.maximum(M, 1e-300)
        out.append(float(np.max(np.abs(lhs - rhs) / scale)))
    return out


@dataclass(frozen=True)
class RadialSolution:
    quantum: QuantumNumbers
    E: float
    constants: SeriesConstants
    a_coeffs: np.ndarray
    b_coeffs: np.ndarray
    params: PhysParams
    convention: str = "literal"
    residuals: tuple = field(default=())
    termination_error: float = 0.0

    @property
    def s(self):
        return self.constants.s

    @property
    def lam(self):
        return self.constants.lam

    def _series(self, coeffs, r, shift):
        r = np.asarray(r, dtype=float)
        if np.any(r < 0):
            raise InvalidArgumentError("radial functions are defined for r >= 0")
        poly = np.polynomial.polynomial.polyval(r, coeffs)
        with np.errstate(divide="ignore", invalid="ignore"):
            lead = np.where(r > 0, r ** (self.s + shift), 0.0 if self.s + shift > 0 else 1.0)
        return np.exp(-self.lam * r) * lead * poly

    def F(self, r):
        return self._series(self.a_coeffs, r, 0)

    def G(self, r):
        return self._series(self.b_coeffs, r, 0)

    def f(self, r):
        return self._series(self.a_coeffs, r, -1)

    def g(self, r):
        return self._series(self.b_coeffs, r, -1)

    def to_ansatz(self, m_j=None):
        """Family member with upper radial part g and lower radial part f."""
        m_j = self.quantum.m_j if m_j is None else m_j
        gf = RadialFunction(self.b_coeffs, self.lam, self.s - 1)
        ff = RadialFunction(self.a_coeffs, self.lam, self.s - 1)
        return AnsatzState(self.quantum.kappa, gf, ff, m_j)

    def polynomial_nodes(self):
        """Positive real roots of sum a_n r^n (radial nodes of F)."""
        if len(self.a_coeffs) < 2:
            return np.array([])
        roots = np.polynomial.polynomial.polyroots(self.a_coeffs)
        real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1, np.abs(roots))].real
        return np.sort(real[real > 0])


def run_recursions(E, quantum, params, convention="literal", check=True):
    c = series_constants(E, params, quantum.kappa, convention)
    a, b = _recursion_coefficients(c, quantum.nprime)
    res = tuple(recursion_residuals(c, a, b))
    want = c.termination_ratio
    term = abs(b[-1] / a[-1] - want) / abs(want)
    if check and term > TOL["termination"]:
        raise InconsistentEnergyError(
            f"termination ratio off by {term:.3e} (relative) at E = {E}; solve the energy first")
    return RadialSolution(quantum, E, c, a, b, params, convention, res, float(term))


def radial_functions(solution):
    return solution.f, solution.g


# -- quantization -------------------------------------------------------------

def combined_relation(E, nprime, kappa, params, convention="literal"):
    """n'-1 relation with b/a fixed by termination; a root means a bound state.

    p1 ((q2 + N) a + (p2 + k) b) + (q1 - lam) ((k - p2) a + (N - q2) b),
    N = n' + s, a = 1.
    """
    c = series_constants(E, params, kappa, convention)
    N = nprime + c.s
    b = c.termination_ratio
    return c.p1 * ((c.q2 + N) + (c.p2 + c.k) * b) + (c.q1 - c.lam) * ((c.k - c.p2) + (N - c.q2) * b)


def bound_state_window(params, convention="literal"):
    """Open interval of E in (-m, 0) where q1^2 > p1^2."""
    ap, aq = _prefactors(params, convention)
    top = params.m * (aq - ap) / (aq + ap)
    return -params.m, min(top, 0.0)


def solve_energy_finite_eps(nprime, kappa, params, convention="literal"):
    """Root of the combined relation by bisection down to adjacent doubles.

    The bracket is the whole bound-state window, which holds exactly one root.
    eps = 0 short-circuits to the closed form.
    """
    q = QuantumNumbers(nprime, kappa)
    if params.eps == 0:
        return energy_closed_form(q.n, params)
    lo, hi = bound_state_window(params, convention)
    lo = lo + 1e-12 * params.m
    hi = hi - 1e-9 * max(abs(hi), 1e-6 * params.m)
    flo = combined_relation(lo, nprime, kappa, params, convention)
    fhi = combined_relation(hi, nprime, kappa, params, convention)
    if (flo > 0) == (fhi > 0):
        raise RootNotBracketedError(f"no sign change on [{lo}, {hi}] for n'={nprime}, kappa={kappa}")
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            return mid
        fm = combined_relation(mid, nprime, kappa, params, convention)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm


def quadratic_energy(nprime, kappa, params, convention="literal"):
    """Closed-form root of lam N = p1 p2 - q1 q2 (squared into a quadratic in E).

    Independent of the bisection; used as its oracle.  N = n' + s does not
    depend on E.
    """
    ap, aq = _prefactors(params, convention)
    m, za = params.m, params.coupling
    s = math.sqrt(kappa * kappa + (aq * aq - ap * ap) * za * za / 2)
    N = nprime + s
    # lam^2 = ((aq(E-m))^2 - (ap(E+m))^2)/2 ; R = za (ap^2 (E+m) - aq^2 (E-m)) / 2
    # lam^2 N^2 = R^2  ->  A E^2 + B E + C = 0
    u, v = aq * aq, ap * ap
    A = (u - v) * N * N / 2 - za * za * (v - u) ** 2 / 4
    B = -(u + v) * m * N * N - za * za * (v - u) * (v + u) * m / 2
    C = (u - v) * m * m * N * N / 2 - za * za * (v + u) ** 2 * m * m / 4
    if A == 0:
        roots = [-C / B]
    else:
        disc = B * B - 4 * A * C
        if disc < 0:
            raise RootNotBracketedError("quadratic has no real root")
        sq = math.sqrt(disc)
        qq = -0.5 * (B + math.copysign(sq, B))
        roots = [qq / A, C / qq]
    lo, hi = bound_state_window(params, convention)
    good = []
    for E in roots:
        if lo < E < hi:
            R = za * (v * (E + m) - u * (E - m)) / 2
            if R > 0:
                good.append(E)
    if len(good) != 1:
        raise RootNotBracketedError(f"expected one admissible root, got {good}")
    return good[0]


# -- ground state -------------------------------------------------------------

def d0_formula(params):
    x = SQRT2 * params.coupling
    return (2 - x) / (2 + x)


def n_formula(params):
    """Normalization constant as printed alongside the ground state."""
    za = params.coupling
    return (2 * math.sqrt(math.pi) * (params.Z / params.bohr_radius) ** 1.5
            * (2 + SQRT2 * za) / math.sqrt(2 + za * za))


@dataclass(frozen=True)
class GroundStateWavefunction:
    """Ground state built from the radial pair g = N/sqrt(4 pi) exp(-Z r/a_B), f = d0 g.

    With P+- = (1 +- sigma.rhat)/2 the field is

        upper = (g P+ + f P-) chi,   lower = -i (g P- + f P+) chi

    which is the K = -1 eigenfamily written in spin projectors.  On the +z
    axis the spin-up field is g (1, 0, -i d0, 0); spin down gives
    g (0, d0, 0, -i) there, so its lower/upper ratio is -1/d0.
    """

    params: PhysParams
    spin: str
    d0: float
    N: float
    N_formula: float
    E: float
    solution: RadialSolution

    @property
    def ratio(self):
        return self.N / self.N_formula

    def radial(self, r):
        """(f, g) radial profiles including N / sqrt(4 pi)."""
        r = np.asarray(r, dtype=float)
        base = self.N / math.sqrt(4 * math.pi) * np.exp(-self.params.Z * r / self.params.bohr_radius)
        return self.d0 * base, base

    def __call__(self, r, theta, phi):
        r, theta, phi = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float),
                                            np.asarray(phi, float))
        f, g = self.radial(r)
        c, s_ = np.cos(theta), np.sin(theta)
        # (sigma.rhat) chi for chi = (1, 0) or (0, 1)
        if self.spin == "up":
            chi, sr = (1.0, 0.0), (c, s_ * np.exp(1j * phi))
        else:
            chi, sr = (0.0, 1.0), (s_ * np.exp(-1j * phi), -c)
        plus = [(x + y) / 2 for x, y in zip(chi, sr)]
        minus = [(x - y) / 2 for x, y in zip(chi, sr)]
        up = [g * a + f * b for a, b in zip(plus, minus)]
        lo = [-1j * (g * b + f * a) for a, b in zip(plus, minus)]
        return np.stack([np.asarray(x, dtype=complex) * np.ones_like(g) for x in up + lo], axis=-1)


def ground_state(params, spin="up", grid=None):
    """Ground state with d0 from the series and N fixed by quadrature."""
    if spin not in ("up", "down"):
        raise InvalidArgumentError(f"spin must be 'up' or 'down', got {spin!r}")
    base = params.with_eps(0.0)
    E = energy_closed_form(1, base)
    sol = run_recursions(E, QuantumNumbers(0, 1, 0.5 if spin == "up" else -0.5), base)
    d0 = float(sol.a_coeffs[0] / sol.b_coeffs[0])
    grid = RadialGrid.for_state(1, base) if grid is None else grid
    r = grid.r
    decay = np.exp(-base.Z * r / base.bohr_radius)
    # P+ chi and P- chi are orthogonal and sum to chi, so the density is g^2 + f^2 pointwise
    norm = radial_norm(d0 * decay, decay, grid)
    return GroundStateWavefunction(base, spin, d0, 1.0 / math.sqrt(norm), n_formula(base), E, sol)


# -- eigenstate residual of the regularized Hamiltonian ---------------------

def _reduced_blocks(eps, sqrt2, conj=lambda z: z.conjugate()):
    """2x2 radial actions of eta'^-1 and eta'^dag for the Dirac-basis eta'."""
    a, b = (1 - eps) / sqrt2, 1j * (1 + eps) / sqrt2
    ep = [[a, b], [b, -a]]  # eta' = eta - eps eta^dag, blocks proportional to I
    det = ep[0][0] * ep[1][1] - ep[0][1] * ep[1][0]
    inv = [[ep[1][1] / det, -ep[0][1] / det], [-ep[1][0] / det, ep[0][0] / det]]
    dagm = [[conj(ep[0][0]), conj(ep[1][0])], [conj(ep[0][1]), conj(ep[1][1])]]

    def red(M):
        return [[M[0][0], -1j * M[0][1]], [1j * M[1][0], M[1][1]]]

    return red(inv), red(dagm)


def _mp_solution(nprime, kappa, params, convention, E0):
    import mpmath as mp

    ap, aq = (mp.mpf(1) + params.eps, mp.mpf(1) - params.eps)
    if convention == "hamiltonian":
        ap, aq = aq, ap
    m, za, k = mp.mpf(params.m), mp.mpf(params.Z) * mp.mpf(params.alpha), -kappa
    r2 = mp.sqrt(2)
    p2, q2 = ap * za / r2, aq * za / r2
    s = mp.sqrt(kappa * kappa + q2 * q2 - p2 * p2)
    N = nprime + s

    def consts(E):
        p1, q1 = ap * (E + m) / r2, aq * (E - m) / r2
        return p1, q1, mp.sqrt(q1 * q1 - p1 * p1)

    def relation(E):
        p1, q1, lam = consts(E)
        b = (lam - q1) / p1
        return p1 * ((q2 + N) + (p2 + k) * b) + (q1 - lam) * ((k - p2) + (N - q2) * b)

    E = mp.findroot(relation, mp.mpf(E0))
    p1, q1, lam = consts(E)
    a, b = [mp.mpf(1)], [-(q2 + s) / (p2 + k)]
    for n in range(1, nprime + 1):
        Nn = n + s
        M = mp.matrix([[q2 + Nn, p2 + k], [k - p2, Nn - q2]])
        rhs = mp.matrix([(lam - q1) * a[-1] - p1 * b[-1], p1 * a[-1] + (q1 + lam) * b[-1]])
        x = mp.lu_solve(M, rhs)
        a.append(x[0])
        b.append(x[1])
    return E, lam, s, a, b


def hamiltonian_residual(solution, r=None, dps=None, eps_h=None):
    """max_r |H psi - E psi| / (|E| max_r |psi|) for the series eigenstate.

    ``dps=None`` evaluates in double precision through the ansatz operators.
    At small eps the 1/eps entries of eta'^-1 amplify rounding of the
    coefficients, so the double result has a floor near 1e-16 m / (eps |E|);
    passing ``dps`` redoes the root, recursion and operator action in
    mpmath.  ``eps_h`` evaluates H at a different regulator than the one used
    for the series constants (e.g. ``-eps``).
    """
    from .hamiltonian import HamiltonianSpec, apply_H, default_grid

    p = solution.params
    eps_h = p.eps if eps_h is None else eps_h
    r = default_grid(p) if r is None else np.asarray(r, dtype=float)
    if eps_h == 0:
        raise InvalidArgumentError("H needs eps != 0")
    if dps is None:
        if eps_h != p.eps:
            raise InvalidArgumentError("eps_h override requires dps")
        st = solution.to_ansatz()
        h = apply_H(st, HamiltonianSpec(p, "coulomb"))
        diff = h.radial_values(r) - solution.E * st.radial_values(r)
        return float(np.max(np.abs(diff)) / (abs(solution.E) * np.max(np.abs(st.radial_values(r)))))

    import mpmath as mp

    q = solution.quantum
    with mp.workdps(dps):
        E, lam, s, a, b = _mp_solution(q.nprime, q.kappa, p, solution.convention, solution.E)
        m, za, kap = mp.mpf(p.m), mp.mpf(p.Z) * mp.mpf(p.alpha), q.kappa
        Tinv, Tdag = _reduced_blocks(mp.mpf(eps_h), mp.sqrt(2), conj=mp.conj)
        worst_res, worst_psi = mp.mpf(0), mp.mpf(0)
        for x in r:
            x = mp.mpf(float(x))
            env = mp.exp(-lam * x) * x ** (s - 1)
            g = env * mp.fsum(bn * x ** n for n, bn in enumerate(b))
            f = env * mp.fsum(an * x ** n for n, an in enumerate(a))
            # d/dr of env * sum c_n r^n = env * sum c_n ((s - 1 + n)/r - lam) r^n
            dg = env * mp.fsum(bn * ((s - 1 + n) / x - lam) * x ** n for n, bn in enumerate(b))
            df = env * mp.fsum(an * ((s - 1 + n) / x - lam) * x ** n for n, an in enumerate(a))
            pg = -df - f / x + kap * g / x
            pf = -dg - g / x + kap * f / x
            u = pg - m * (Tdag[0][0] * g + Tdag[0][1] * f)
            v = pf - m * (Tdag[1][0] * g + Tdag[1][1] * f)
            hg = Tinv[0][0] * u + Tinv[0][1] * v - za * g / x
            hf = Tinv[1][0] * u + Tinv[1][1] * v - za * f / x
            worst_res = max(worst_res, abs(hg - E * g), abs(hf - E * f))
            worst_psi = max(worst_psi, abs(g), abs(f))
        return float(worst_res / (abs(E) * worst_psi))
