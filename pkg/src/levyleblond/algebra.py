"""Pauli, Dirac and nilpotent matrices in the Dirac basis.

Matrices are plain ``complex128`` numpy arrays of shape (2, 2) or (4, 4).
"""
from dataclasses import dataclass, field
import itertools

import numpy as np

from .errors import InvalidArgumentError, SingularMatrixError
from .params import TOL

SQRT2 = np.sqrt(2.0)

I2 = np.eye(2, dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)
SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


def block(a, b, c, d):
    return np.block([[a, b], [c, d]])


def dag(M):
    return M.conj().T


def anticommutator(A, B):
    return A @ B + B @ A


def commutator(A, B):
    return A @ B - B @ A


@dataclass(frozen=True)
class MatrixSet:
    """Canonical matrices for one dimension.

    For ``dim == 4`` ``gammas`` is (gamma0, gamma1, gamma2, gamma3, gamma5);
    for ``dim == 2`` it is (mu1, mu2, sigma1, sigma2, sigma3).
    """

    dim: int
    gammas: tuple
    eta: np.ndarray
    eta_dag: np.ndarray
    spins: tuple = field(default=())  # Sigma_k = diag(sigma_k, sigma_k), dim 4 only

    @property
    def identity(self):
        return np.eye(self.dim, dtype=complex)

    @property
    def gamma0(self):
        self._need(4)
        return self.gammas[0]

    @property
    def gamma_space(self):
        self._need(4)
        return self.gammas[1:4]

    @property
    def gamma5(self):
        self._need(4)
        return self.gammas[4]

    @property
    def mu(self):
        self._need(2)
        return self.gammas[:2]

    @property
    def sigma(self):
        return self.gammas[2:] if self.dim == 2 else SIGMA

    def _need(self, dim):
        if self.dim != dim:
            raise InvalidArgumentError(f"not defined for a dim-{self.dim} matrix set")


def build_matrix_set(dim):
    """Build the canonical matrix set for ``dim`` in {2, 4}."""
    if dim == 2:
        eta = (SIGMA[0] - 1j * SIGMA[1]) / SQRT2
        gammas = (I2.copy(), 1j * SIGMA[2], *(s.copy() for s in SIGMA))
        return MatrixSet(2, gammas, eta, dag(eta))
    if dim == 4:
        g0 = block(I2, Z2, Z2, -I2)
        gi = tuple(block(Z2, s, -s, Z2) for s in SIGMA)
        g5 = block(Z2, I2, I2, Z2)
        eta = (g0 + 1j * g5) / SQRT2
        spins = tuple(block(s, Z2, Z2, s) for s in SIGMA)
        return MatrixSet(4, (g0, *gi, g5), eta, dag(eta), spins)
    raise InvalidArgumentError(f"unsupported dimension {dim}; expected 2 or 4")


def build_eta_prime(mset, eps):
    """eta' = eta - eps * eta^dagger."""
    return mset.eta - eps * mset.eta_dag


def invert(M, tol=1e-300):
    d = np.linalg.det(M)
    if abs(d) <= tol:
        raise SingularMatrixError(f"matrix is singular (det = {d})")
    return np.linalg.inv(M)


def max_abs(M):
    return float(np.max(np.abs(M))) if np.size(M) else 0.0


@dataclass
class IdentityReport:
    """Named residuals of the algebraic identities; ``passed`` compares against ``tol``."""

    dim: int
    tol: float
    residuals: dict = field(default_factory=dict)

    def add(self, name, residual):
        self.residuals[name] = float(residual)

    @property
    def max_residual(self):
        return max(self.residuals.values(), default=0.0)

    @property
    def passed(self):
        return self.max_residual <= self.tol

    def failures(self):
        return {k: v for k, v in self.residuals.items() if v > self.tol}

    def lines(self):
        for name, res in self.residuals.items():
            status = "PASS" if res <= self.tol else "FAIL"
            yield f"{status} {name}: residual={res:.3e}"


def verify_algebra(mset, tol=None):
    """Evaluate every identity of ``mset``; failures are reported, never raised."""
    tol = TOL["algebra"] if tol is None else tol
    rep = IdentityReport(mset.dim, tol)
    one = mset.identity
    eta, etad = mset.eta, mset.eta_dag
    rep.add("eta^2 = 0", max_abs(eta @ eta))
    rep.add("(eta^dag)^2 = 0", max_abs(etad @ etad))
    rep.add("{eta, eta^dag} = 2I", max_abs(anticommutator(eta, etad) - 2 * one))
    if mset.dim == 2:
        s1, s2, s3 = mset.sigma
        rep.add("eta + eta^dag = sqrt2 sigma1", max_abs(eta + etad - SQRT2 * s1))
        rep.add("eta^dag eta = I + sigma3", max_abs(etad @ eta - (one + s3)))
        worst = 0.0
        for i, j in itertools.product(range(3), repeat=2):
            expect = 2.0 * one if i == j else np.zeros_like(one)
            worst = max(worst, max_abs(anticommutator(mset.sigma[i], mset.sigma[j]) - expect))
        rep.add("{sigma_i, sigma_j} = 2 delta_ij", worst)
        rep.add("sigma1 sigma2 = i sigma3", max_abs(s1 @ s2 - 1j * s3))
        mu1, mu2 = mset.mu
        rep.add("mu1 = I", max_abs(mu1 - one))
        rep.add("mu2^2 = -I", max_abs(mu2 @ mu2 + one))
        rep.add("sigma hermitian", max(max_abs(s - dag(s)) for s in mset.sigma))
    else:
        g = mset.gammas[:4]
        g5 = mset.gamma5
        worst = 0.0
        for mu, nu in itertools.product(range(4), repeat=2):
            worst = max(worst, max_abs(anticommutator(g[mu], g[nu]) - 2 * METRIC[mu, nu] * one))
        rep.add("{gamma_mu, gamma_nu} = 2 g_mu_nu", worst)
        rep.add("gamma5 = i g0 g1 g2 g3", max_abs(g5 - 1j * g[0] @ g[1] @ g[2] @ g[3]))
        rep.add("{gamma5, gamma_mu} = 0", max(max_abs(anticommutator(g5, gm)) for gm in g))
        rep.add("gamma5^2 = I", max_abs(g5 @ g5 - one))
        rep.add("eta + eta^dag = sqrt2 gamma0", max_abs(eta + etad - SQRT2 * g[0]))
        P = etad @ eta
        rep.add("(eta^dag eta)^2 = 2 eta^dag eta", max_abs(P @ P - 2 * P))
        rep.add("gamma0, gamma5 hermitian", max(max_abs(g[0] - dag(g[0])), max_abs(g5 - dag(g5))))
        rep.add("gamma_i anti-hermitian", max(max_abs(gi + dag(gi)) for gi in g[1:]))
        if mset.spins:
            rep.add("Sigma_k = gamma5 gamma0 gamma_k",
                    max(max_abs(S - g5 @ g[0] @ gk) for S, gk in zip(mset.spins, g[1:])))
    return rep


def is_non_normal(M, tol=TOL["algebra"]):
    return max_abs(M @ dag(M) - dag(M) @ M) > tol
