"""The regularized Hamiltonian ``H = eta'^-1 (gamma.p - m eta'^dag) + V(r)``.

Two representations are provided:

* momentum space, a dense 4x4 matrix for a given 3-momentum;
* the four-component ansatz ``(g(r) Y_A, i f(r) Y_B)`` read on the
  ``theta = 0`` spinors, where ``Y_A`` and ``Y_B`` are proportional and every
  4x4 block reduces to a 2x2 action on the radial pair ``(g, f)``.

Conventions for the ansatz
--------------------------
``K = i gamma5 gamma0 (Sigma.L + I)`` in the Dirac basis has the block form
``i [[0, -(sigma.L + 1)], [sigma.L + 1, 0]]``.  It pairs equal harmonics in
the two halves, so the full ``K = -kappa`` family at fixed ``(j, m_j)`` is

    (u Y_A + v Y_B,  i (u Y_A - v Y_B)),   u = (g - f)/2,  v = -(g + f)/2

with ``Y_A = -(sigma.rhat) Y_B``.  On the ``+z`` axis in the ``m_j = +1/2``
channel this is ``(g Y_A, i f Y_B)``, and the relations

    (sigma.L + 1) psi_A =  i kappa psi_B
    (sigma.L + 1) psi_B = -i kappa psi_A

hold on the whole family.  The 2x2 radial action on ``(g, f)`` is therefore
exact for every ``m_j``; only the assembled axis spinor depends on it.
"""
from dataclasses import dataclass, replace

import numpy as np

from .algebra import build_eta_prime, build_matrix_set, dag, invert
from .errors import BranchOverlapError, InvalidArgumentError, SingularMatrixError
from .params import PhysParams, _as_half_integer
from .radial import RadialFunction

SET4 = build_matrix_set(4)


# -- momentum space ------------------------------------------------------------

def momentum_hamiltonian(p, params):
    """4x4 matrix eta'^-1 (gamma_i p_i - m eta'^dag)."""
    if params.eps == 0:
        raise SingularMatrixError("eta' is singular at eps = 0")
    etap = build_eta_prime(SET4, params.eps)
    gp = sum(pi * gi for pi, gi in zip(p, SET4.gamma_space))
    return invert(etap) @ (gp - params.m * dag(etap))


def branch_energies(p2, params):
    """Exact doubly-degenerate eigenvalues for |p|^2 = p2.

    ``det(gamma.p - m eta'^dag - E eta') = 0`` reduces to
    ``2 (m - eps E)(E - eps m) = p2``.
    """
    m, e = params.m, params.eps
    disc = (m * (1 - e * e)) ** 2 - 2 * e * p2
    if disc < 0:
        raise BranchOverlapError("branches merge into a complex pair")
    root = np.sqrt(disc)
    b = m * (1 + e * e)
    high = (b + root) / (2 * e)
    low = (e * m * m + p2 / 2) / (e * high)  # product of roots, avoids cancellation
    return low, high


def finite_and_divergent_eigenvalues(H, params, p=None):
    """Split the spectrum of ``H`` at m/(2 eps).

    Returns ``(finite_pair, renormalized_pair)`` where the divergent pair is
    shifted by ``-m/eps``.
    """
    m, e = params.m, params.eps
    if p is not None:
        p2 = float(np.dot(p, p))
        if p2 / (2 * m) > m / (4 * e):
            raise BranchOverlapError(f"p^2/2m = {p2 / (2 * m)} exceeds m/(4 eps) = {m / (4 * e)}")
    w = np.linalg.eigvals(H)
    scale = m / e
    if np.max(np.abs(w.imag)) > 1e-10 * scale:
        raise BranchOverlapError(f"complex eigenvalues, max |Im| = {np.max(np.abs(w.imag))}")
    w = np.sort(w.real)
    threshold = m / (2 * e)
    finite = w[w < threshold]
    divergent = w[w >= threshold]
    if len(finite) != 2 or len(divergent) != 2:
        raise BranchOverlapError("eigenvalues do not split into two finite and two divergent")
    return tuple(finite), tuple(divergent - scale)


# -- ansatz family -------------------------------------------------------------

def kappa_j_relation(j):
    """kappa = j + 1/2, checked against J^2 = K^2 - 1/4."""
    fj = _as_half_integer(j)
    kappa = int(fj + 0.5)
    check = kappa * kappa - 0.25 == float(fj * (fj + 1))
    return kappa, check


def angular_spinor(j, m_j, l):
    """Spinor harmonic Y^{j, m_j}_l at theta = 0 for l = j -+ 1/2."""
    if m_j not in (0.5, -0.5):
        return np.zeros(2)
    norm = np.sqrt((j + 0.5) / (4 * np.pi))
    if abs(l - (j - 0.5)) < 1e-12:
        sign = 1.0
    elif abs(l - (j + 0.5)) < 1e-12:
        sign = -1.0
    else:
        raise InvalidArgumentError(f"l = {l} incompatible with j = {j}")
    return norm * np.array([sign if m_j == 0.5 else 0.0, 1.0 if m_j == -0.5 else 0.0])


def sigma_dot_rhat(theta, phi):
    return np.array([[np.cos(theta), np.exp(-1j * phi) * np.sin(theta)],
                     [np.exp(1j * phi) * np.sin(theta), -np.cos(theta)]])


def parity_flip(label):
    """sigma.rhat on the angular labels: Y_A -> -Y_B, Y_B -> -Y_A."""
    return (-1.0, "B") if label == "A" else (-1.0, "A")


@dataclass(frozen=True)
class AnsatzState:
    """Radial pair ``(g, f)`` of the ``K = -kappa`` family, ``kappa = j + 1/2``."""

    kappa: int
    g: RadialFunction
    f: RadialFunction
    m_j: float = 0.5

    def __post_init__(self):
        if int(self.kappa) != self.kappa or self.kappa < 1:
            raise InvalidArgumentError("ansatz states need kappa = +(j + 1/2) >= 1")
        if self.m_j not in (0.5, -0.5):
            raise InvalidArgumentError("m_j must be +-1/2")

    @property
    def j(self):
        return self.kappa - 0.5

    @property
    def l_A(self):
        return self.j + 0.5

    @property
    def l_B(self):
        return self.j - 0.5

    def scaled(self, c):
        return replace(self, g=c * self.g, f=c * self.f)

    def __add__(self, other):
        return replace(self, g=self.g + other.g, f=self.f + other.f)

    def __sub__(self, other):
        return replace(self, g=self.g - other.g, f=self.f - other.f)

    def spinor(self, r):
        """Four-component values at theta = 0, shape (len(r), 4).

        ``m_j = +1/2`` gives ``(g Y_A, i f Y_B)``; for ``m_j = -1/2`` the axis
        harmonics satisfy ``Y_A = Y_B`` and the family reads ``(-f Y_A, i g Y_B)``.
        """
        r = np.atleast_1d(np.asarray(r, dtype=float))
        YA = angular_spinor(self.j, self.m_j, self.l_A)
        YB = angular_spinor(self.j, self.m_j, self.l_B)
        top, bottom = (self.g, self.f) if self.m_j == 0.5 else (-self.f, self.g)
        up = top(r)[:, None] * YA[None, :]
        lo = 1j * bottom(r)[:, None] * YB[None, :]
        return np.concatenate([up, lo], axis=1)

    def radial_values(self, r):
        return np.stack([self.g(r), self.f(r)])


@dataclass(frozen=True)
class HamiltonianSpec:
    params: PhysParams
    potential: str = "free"

    def __post_init__(self):
        if self.potential not in ("free", "coulomb"):
            raise InvalidArgumentError(f"unknown potential {self.potential!r}")


def reduce_block(M):
    """2x2 action on (g, f) of a 4x4 matrix whose blocks are multiples of I.

    With psi = (g y_A, i f y_B) and y_B = -y_A the upper block row gives
    g -> m11 g - i m12 f and the lower gives f -> i m21 g + m22 f.
    """
    m11, m12, m21, m22 = M[0, 0], M[0, 2], M[2, 0], M[2, 2]
    return np.array([[m11, -1j * m12], [1j * m21, m22]])


def _mix(T, g, f):
    return T[0, 0] * g + T[0, 1] * f, T[1, 0] * g + T[1, 1] * f


def gamma_dot_p(state):
    """(gamma.p) psi on the family, returned as the radial pair.

    sigma.p = (1/r) sigma.rhat (-i r d/dr + i sigma.L); with the K relations
    this gives  g -> -f' - f/r + kappa g/r  and  f -> -g' - g/r + kappa f/r.
    """
    k = state.kappa
    g, f = state.g, state.f
    new_g = -f.derivative() - f.over_r() + k * g.over_r()
    new_f = -g.derivative() - g.over_r() + k * f.over_r()
    return new_g, new_f


def apply_H(state, spec):
    p = spec.params
    if p.eps == 0:
        raise SingularMatrixError("eta' is singular at eps = 0")
    etap = build_eta_prime(SET4, p.eps)
    T_inv = reduce_block(invert(etap))
    T_dag = reduce_block(dag(etap))
    dg, df = gamma_dot_p(state)
    mg, mf = _mix(T_dag, state.g, state.f)
    u, v = dg - p.m * mg, df - p.m * mf
    new_g, new_f = _mix(T_inv, u, v)
    if spec.potential == "coulomb":
        c = -p.coupling
        new_g = new_g + c * state.g.over_r()
        new_f = new_f + c * state.f.over_r()
    return replace(state, g=new_g, f=new_f)


def sigma_L_plus_one(state):
    """(Sigma.L + I) psi collapsed onto the family.

    (sigma.L+1) psi_A = i kappa (i f Y_B) = kappa f Y_A   -> upper slot kappa f
    (sigma.L+1) psi_B = -i kappa g Y_A = i (kappa g) Y_B  -> lower slot kappa g
    """
    k = state.kappa
    return replace(state, g=k * state.f, f=k * state.g)


def apply_K(state):
    """K = i gamma5 gamma0 (Sigma.L + I); returns -kappa * state."""
    C = reduce_block(1j * SET4.gamma5 @ SET4.gamma0)
    s = sigma_L_plus_one(state)
    new_g, new_f = _mix(C, s.g, s.f)
    return replace(state, g=new_g, f=new_f)


def apply_J2(state):
    return state.scaled(state.j * (state.j + 1))


def apply_Jz(state):
    return state.scaled(state.m_j)


def apply_operator(name, state, spec):
    if name == "H":
        return apply_H(state, spec)
    if name == "K":
        return apply_K(state)
    if name == "J2":
        return apply_J2(state)
    if name == "Jz":
        return apply_Jz(state)
    raise InvalidArgumentError(f"unknown operator {name!r}")


def default_grid(params, points=400):
    return params.bohr_radius * np.linspace(0.1, 20.0, points)


def sup_norm(state, r):
    return float(np.max(np.abs(state.radial_values(r))))


def commutator_residual(opA, opB, state, spec, r=None):
    """sup_r |[A, B] psi| / sup_r |psi| over a fixed radial grid."""
    r = default_grid(spec.params) if r is None else r
    ab = apply_operator(opA, apply_operator(opB, state, spec), spec)
    ba = apply_operator(opB, apply_operator(opA, state, spec), spec)
    diff = ab.radial_values(r) - ba.radial_values(r)
    return float(np.max(np.abs(diff))) / sup_norm(state, r)


def k_preservation_residual(state, spec, r=None):
    """sup |K(H psi) + kappa H psi| / sup |H psi|."""
    r = default_grid(spec.params) if r is None else r
    hpsi = apply_H(state, spec)
    diff = apply_K(hpsi).radial_values(r) + state.kappa * hpsi.radial_values(r)
    return float(np.max(np.abs(diff))) / sup_norm(hpsi, r)


def random_ansatz_state(rng, kappa, params, m_j=0.5, degree=3):
    """Random polynomial-times-exponential radial parts on the Bohr-radius scale."""
    aB = params.bohr_radius
    lam = rng.uniform(0.2, 2.0) / aB
    scale = aB ** -np.arange(degree + 1)
    g = RadialFunction(rng.normal(size=degree + 1) * scale, lam, 0.0)
    f = RadialFunction(rng.normal(size=degree + 1) * scale, lam, 0.0)
    return AnsatzState(kappa, g, f, m_j)


def momentum_eigen_residual(H, params):
    """max |Im| of the spectrum relative to m/eps (realness check)."""
    w = np.linalg.eigvals(H)
    return float(np.max(np.abs(w.imag)) / (params.m / params.eps))

