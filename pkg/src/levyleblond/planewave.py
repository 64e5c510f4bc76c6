"""Plane waves of the first-order 2x2 equation and 1D step/barrier scattering.

In momentum space the (1+1)D equation reads ``p psi = (eta E + eta^dag m) psi``
with ``eta = sqrt2 [[0, 0], [1, 0]]``.  Writing a mode as ``(1, y)`` gives
``y = p / (sqrt2 m)`` and ``p**2 = 2 E m``.
"""
from dataclasses import dataclass

import numpy as np

from .algebra import SIGMA, SQRT2, build_matrix_set
from .errors import EvanescentModeError, InvalidArgumentError

_SET2 = build_matrix_set(2)


@dataclass(frozen=True)
class PlaneWaveMode:
    E: float
    p: complex
    spinor: np.ndarray
    direction: int  # +1 or -1


@dataclass(frozen=True)
class ScatteringResult:
    R: float
    T: float
    r: complex
    t: complex


def _mode(E, m, p, direction):
    spinor = np.array([1.0, p / (SQRT2 * m)], dtype=complex)
    return PlaneWaveMode(E, p, spinor, direction)


def momentum_modes(E, m):
    """Right- and left-moving modes with p = +-sqrt(2 E m).

    Spinors are normalized to unit upper component, ``(1, +-sqrt(E/m))``, which
    stays regular at E = 0.
    """
    if not m > 0:
        raise InvalidArgumentError("m must be positive")
    if E < 0:
        raise EvanescentModeError(f"E = {E} < 0 has no propagating modes; use evanescent_modes")
    p = np.sqrt(2.0 * E * m)
    return _mode(E, m, p, +1), _mode(E, m, -p, -1)


def evanescent_modes(E, m):
    """Modes for E < 0: p = +-i sqrt(2 |E| m); the +i branch decays toward +z."""
    if not m > 0:
        raise InvalidArgumentError("m must be positive")
    if E >= 0:
        raise InvalidArgumentError("evanescent modes require E < 0")
    kap = np.sqrt(-2.0 * E * m)
    return _mode(E, m, 1j * kap, +1), _mode(E, m, -1j * kap, -1)


def momentum_operator(E, m, mset=_SET2):
    return E * mset.eta + m * mset.eta_dag


def mode_residual(mode, m, mset=_SET2):
    """max |p psi - (eta E + eta^dag m) psi| for a mode."""
    psi = mode.spinor
    return float(np.max(np.abs(mode.p * psi - momentum_operator(mode.E, m, mset) @ psi)))


def current_density(psi, mset=_SET2):
    """Probability current J = psi^dag (eta + eta^dag) psi and density rho = psi^dag eta^dag eta psi."""
    if mset.dim != 2:
        raise InvalidArgumentError("current_density needs the dim-2 matrix set")
    psi = np.asarray(psi, dtype=complex)
    J = np.vdot(psi, (mset.eta + mset.eta_dag) @ psi)
    rho = np.vdot(psi, mset.eta_dag @ mset.eta @ psi)
    return float(J.real), float(rho.real)


# -- (2+1)D reduction ---------------------------------------------------------

def mu_dot_p(p, mset=_SET2):
    mu1, mu2 = mset.mu
    return p[0] * mu1 + p[1] * mu2


def dirac_2p1_mode(E, m, p):
    """Solution of (mu . p) psi = (sigma1 E + i sigma2 m) psi for E^2 = |p|^2 + m^2."""
    return np.array([E + m, p[0] + 1j * p[1]], dtype=complex)


def nr_reduction_residual(Eprime, m, angle=0.0):
    """Relative residual of the exact (2+1)D Dirac mode inserted in the non-relativistic form.

    The Dirac mode is built for ``E = m + Eprime`` with the exact momentum
    ``|p| = sqrt(E**2 - m**2)`` pointing along ``angle``.  After the rescaling
    ``phi = diag(1/sqrt2, 1) psi`` (which maps ``(E+m)/sqrt2 -> m`` exactly in the
    limit) it is substituted into ``(mu . p) phi = (eta E' + eta^dag m) phi``.
    Returns ``|residual| / |(mu . p) phi|``, which is ``E'/(2m) + O(E'^2)``.
    """
    if not m > 0:
        raise InvalidArgumentError("m must be positive")
    if Eprime <= -m:
        raise InvalidArgumentError(f"invalid kinematics: E' = {Eprime} <= -m")
    if Eprime < 0:
        raise InvalidArgumentError("E' < 0 has no real momentum")
    if Eprime == 0:
        return 0.0
    E = m + Eprime
    pmag = np.sqrt(Eprime * (2.0 * m + Eprime))
    p = (pmag * np.cos(angle), pmag * np.sin(angle))
    psi = dirac_2p1_mode(E, m, p)
    phi = np.array([psi[0] / SQRT2, psi[1]])
    L = mu_dot_p(p)
    lhs = L @ phi
    res = lhs - momentum_operator(Eprime, m) @ phi
    return float(np.linalg.norm(res) / np.linalg.norm(lhs))


def dirac_2p1_residual(Eprime, m, angle=0.0):
    """Residual of the exact Dirac mode in its own equation (sanity check, ~1e-16)."""
    E = m + Eprime
    pmag = np.sqrt(Eprime * (2.0 * m + Eprime))
    p = (pmag * np.cos(angle), pmag * np.sin(angle))
    psi = dirac_2p1_mode(E, m, p)
    M = E * SIGMA[0] + 1j * m * SIGMA[1]
    return float(np.linalg.norm(mu_dot_p(p) @ psi - M @ psi) / np.linalg.norm(psi))


def massless_residual(p):
    """m = 0 check: sigma1 (mu . p) equals sigma . p and E = |p| solves the Dirac form."""
    p = np.asarray(p, dtype=float)
    L = mu_dot_p(p)
    matrix_res = np.max(np.abs(SIGMA[0] @ L - (p[0] * SIGMA[0] + p[1] * SIGMA[1])))
    E = float(np.hypot(p[0], p[1]))
    psi = np.array([E, p[0] + 1j * p[1]]) if E > 0 else np.array([1.0, 0.0], dtype=complex)
    eig_res = np.linalg.norm(L @ psi - E * SIGMA[0] @ psi) / np.linalg.norm(psi)
    return float(max(matrix_res, eig_res))


# -- piecewise-constant scattering -------------------------------------------

def _wavenumber(E, V, m):
    # principal sqrt: +i kappa below the potential, so exp(ikz) decays toward +z
    return np.sqrt(complex(2.0 * m * (E - V)))


def _mode_matrix(k, z, m):
    c = k / (SQRT2 * m)
    ep, em = np.exp(1j * k * z), np.exp(-1j * k * z)
    return np.array([[ep, em], [c * ep, -c * em]], dtype=complex)


def solve_piecewise(E, potentials, interfaces, m):
    """Scatter a wave incident from the left on piecewise-constant potentials.

    ``potentials`` has one more entry than ``interfaces``.  Only continuity of the
    two-component spinor is imposed at each interface.
    """
    if not E > 0:
        raise InvalidArgumentError(f"E must be positive, got {E}")
    if not m > 0:
        raise InvalidArgumentError("m must be positive")
    if len(potentials) != len(interfaces) + 1:
        raise InvalidArgumentError("need len(potentials) == len(interfaces) + 1")
    if potentials[0] != 0:
        raise InvalidArgumentError("incident region must have zero potential")
    ks = [_wavenumber(E, V, m) for V in potentials]
    if ks[-1] == 0:
        # zero-velocity transmitted wave carries no current
        if len(interfaces) == 1:
            return ScatteringResult(1.0, 0.0, 1.0 + 0j, 2.0 + 0j)
        raise InvalidArgumentError("E coincides with the transmitted-region potential")
    for k in ks[1:-1]:
        if k == 0:
            raise InvalidArgumentError("E coincides with an interior potential; modes degenerate")

    coeff = np.array([1.0, 0.0], dtype=complex)  # outgoing wave only, unit amplitude
    for j in range(len(interfaces) - 1, -1, -1):
        z = interfaces[j]
        coeff = np.linalg.solve(_mode_matrix(ks[j], z, m), _mode_matrix(ks[j + 1], z, m) @ coeff)
    A, B = coeff
    r, t = B / A, 1.0 / A

    def spinor(k, sign):
        return np.array([1.0, sign * k / (SQRT2 * m)], dtype=complex)

    J_in, _ = current_density(spinor(ks[0], +1))
    J_ref, _ = current_density(r * spinor(ks[0], -1))
    J_tr, _ = current_density(t * spinor(ks[-1], +1))
    return ScatteringResult(0.0 - J_ref / J_in, J_tr / J_in, complex(r), complex(t))


def solve_step(E, V0, m):
    return solve_piecewise(E, [0.0, V0], [0.0], m)


def solve_barrier(E, V0, width, m):
    if not width > 0:
        raise InvalidArgumentError("barrier width must be positive")
    return solve_piecewise(E, [0.0, V0, 0.0], [0.0, width], m)


# -- textbook second-order results used as the oracle ------------------------

def schrodinger_step(E, V0, m):
    """(R, T) for the Schroedinger step."""
    if E <= V0:
        return 1.0, 0.0
    k1, k2 = np.sqrt(2 * m * E), np.sqrt(2 * m * (E - V0))
    R = ((k1 - k2) / (k1 + k2)) ** 2
    return float(R), float(1.0 - R)


def schrodinger_barrier_T(E, V0, width, m):
    if V0 == 0:
        return 1.0
    if E < V0:
        kap = np.sqrt(2 * m * (V0 - E))
        return float(1.0 / (1.0 + V0 ** 2 * np.sinh(kap * width) ** 2 / (4 * E * (V0 - E))))
    if E > V0:
        k2 = np.sqrt(2 * m * (E - V0))
        return float(1.0 / (1.0 + V0 ** 2 * np.sin(k2 * width) ** 2 / (4 * E * (E - V0))))
    return float(1.0 / (1.0 + m * V0 * width ** 2 / 2))
