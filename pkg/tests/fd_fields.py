"""Finite-difference field operators on full four-component fields (test oracle)."""
import numpy as np
from scipy.special import sph_harm_y

from levyleblond.algebra import build_eta_prime, dag
from levyleblond.hamiltonian import SET4


def spinor_harmonic(j, m, l, theta, phi):
    """Two-component Y^{j m}_l with Condon-Shortley phases."""
    def Y(mm):
        if abs(mm) > l:
            return 0.0
        return sph_harm_y(l, int(mm), theta, phi)
    if abs(j - (l + 0.5)) < 1e-12:
        c1, c2 = np.sqrt((l + m + 0.5) / (2 * l + 1)), np.sqrt((l - m + 0.5) / (2 * l + 1))
    else:
        c1, c2 = -np.sqrt((l - m + 0.5) / (2 * l + 1)), np.sqrt((l + m + 0.5) / (2 * l + 1))
    return np.array([c1 * Y(m - 0.5), c2 * Y(m + 0.5)], dtype=complex)


def full_field(g, f, kappa, m_j):
    """K = -kappa family (u Y_A + v Y_B, i (u Y_A - v Y_B)) carrying the pair (g, f)."""
    j = kappa - 0.5

    def psi(x):
        r = np.linalg.norm(x)
        th, ph = np.arccos(x[2] / r), np.arctan2(x[1], x[0])
        YA = spinor_harmonic(j, m_j, kappa, th, ph)
        YB = spinor_harmonic(j, m_j, kappa - 1, th, ph)
        u, v = (g(r) - f(r)) / 2, -(g(r) + f(r)) / 2
        return np.concatenate([u * YA + v * YB, 1j * (u * YA - v * YB)])
    return psi


def gradient(psi, x, h):
    out = []
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        d = (-psi(x + 2 * e) + 8 * psi(x + e) - 8 * psi(x - e) + psi(x - 2 * e)) / (12 * h)
        out.append(d)
    return out


def fd_H(psi, x, prm, coulomb, h):
    etap = build_eta_prime(SET4, prm.eps)
    grad = gradient(psi, x, h)
    gp = sum(SET4.gamma_space[i] @ (-1j * grad[i]) for i in range(3))
    out = np.linalg.solve(etap, gp - prm.m * dag(etap) @ psi(x))
    if coulomb:
        out = out - prm.coupling / np.linalg.norm(x) * psi(x)
    return out


def fd_K(psi, x, h):
    grad = gradient(psi, x, h)
    # L_k = -i (x cross grad)_k
    L = [-1j * (x[1] * grad[2] - x[2] * grad[1]), -1j * (x[2] * grad[0] - x[0] * grad[2]),
         -1j * (x[0] * grad[1] - x[1] * grad[0])]
    SL = sum(S @ Lk for S, Lk in zip(SET4.spins, L))
    return 1j * SET4.gamma5 @ SET4.gamma0 @ (SL + psi(x))


POINTS = [np.array([0.3, -0.4, 0.5]), np.array([-0.7, 0.2, -0.1]), np.array([0.1, 0.9, 0.6])]


def field_equation_residual(psi, x, params, E, h=1e-3):
    """(gamma.p - eta' (E - V) - m eta'^dag) psi at x, relative to |psi(x)|."""
    etap = build_eta_prime(SET4, params.eps)
    grad = gradient(psi, x, h)
    gp = sum(SET4.gamma_space[i] @ (-1j * grad[i]) for i in range(3))
    V = -params.coupling / np.linalg.norm(x)
    res = gp - etap @ ((E - V) * psi(x)) - params.m * dag(etap) @ psi(x)
    return float(np.max(np.abs(res)) / np.max(np.abs(psi(x))))

