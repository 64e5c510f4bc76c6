"""RK4 kernels for the coupled radial system on a uniform grid in t = ln r.

    dF/dt = -(q1 r + q2) F - (p1 r + p2 + k) G
    dG/dt =  (q1 r + q2) G + (p1 r + p2 - k) F

``k`` is the coupling entering the 1/r terms (see ``coulomb.radial_coupling``).
Each kernel exists twice: a numba version and a numpy version vectorized over
a batch of energies.  ``LL_DISABLE_NUMBA=1`` selects numpy everywhere.
"""
import math

import numpy as np

from ._accel import HAVE_NUMBA, numba, use_numba

_RESCALE = 1e100


def _shoot_batch_numpy(p1s, q1s, F0s, G0s, p2, q2, k, t0, h, npts):
    F = np.array(F0s, dtype=float)
    G = np.array(G0s, dtype=float)
    p1s = np.asarray(p1s, dtype=float)
    q1s = np.asarray(q1s, dtype=float)
    nodes = np.zeros(F.shape, dtype=np.int64)
    sign = np.sign(F)

    def rhs(r, F, G):
        a = q1s * r + q2
        return -a * F - (p1s * r + p2 + k) * G, a * G + (p1s * r + p2 - k) * F

    for i in range(npts - 1):
        t = t0 + i * h
        r0, rm, r1 = math.exp(t), math.exp(t + 0.5 * h), math.exp(t + h)
        k1F, k1G = rhs(r0, F, G)
        k2F, k2G = rhs(rm, F + 0.5 * h * k1F, G + 0.5 * h * k1G)
        k3F, k3G = rhs(rm, F + 0.5 * h * k2F, G + 0.5 * h * k2G)
        k4F, k4G = rhs(r1, F + h * k3F, G + h * k3G)
        F = F + h / 6.0 * (k1F + 2 * k2F + 2 * k3F + k4F)
        G = G + h / 6.0 * (k1G + 2 * k2G + 2 * k3G + k4G)
        big = np.maximum(np.abs(F), np.abs(G))
        over = big > _RESCALE
        if over.any():
            F[over] /= big[over]
            G[over] /= big[over]
        s = np.sign(F)
        nodes += (s * sign < 0).astype(np.int64)
        sign = np.where(s != 0, s, sign)
    return nodes, F


def _integrate_path_numpy(p1, q1, F0, G0, p2, q2, k, t0, h, npts):
    F = np.empty(npts)
    G = np.empty(npts)
    F[0], G[0] = F0, G0
    for i in range(npts - 1):
        t = t0 + i * h
        r0, rm, r1 = math.exp(t), math.exp(t + 0.5 * h), math.exp(t + h)
        y0, y1 = F[i], G[i]
        a = q1 * r0 + q2
        k1F = -a * y0 - (p1 * r0 + p2 + k) * y1
        k1G = a * y1 + (p1 * r0 + p2 - k) * y0
        a = q1 * rm + q2
        u0, u1 = y0 + 0.5 * h * k1F, y1 + 0.5 * h * k1G
        k2F = -a * u0 - (p1 * rm + p2 + k) * u1
        k2G = a * u1 + (p1 * rm + p2 - k) * u0
        u0, u1 = y0 + 0.5 * h * k2F, y1 + 0.5 * h * k2G
        k3F = -a * u0 - (p1 * rm + p2 + k) * u1
        k3G = a * u1 + (p1 * rm + p2 - k) * u0
        a = q1 * r1 + q2
        u0, u1 = y0 + h * k3F, y1 + h * k3G
        k4F = -a * u0 - (p1 * r1 + p2 + k) * u1
        k4G = a * u1 + (p1 * r1 + p2 - k) * u0
        F[i + 1] = y0 + h / 6.0 * (k1F + 2 * k2F + 2 * k3F + k4F)
        G[i + 1] = y1 + h / 6.0 * (k1G + 2 * k2G + 2 * k3G + k4G)
    return F, G


if HAVE_NUMBA:
    _integrate_path_numba = numba.njit(cache=True)(_integrate_path_numpy)

    @numba.njit(cache=True, parallel=True)
    def _shoot_batch_numba(p1s, q1s, F0s, G0s, p2, q2, k, t0, h, npts):
        nb = p1s.shape[0]
        nodes = np.zeros(nb, dtype=np.int64)
        tail = np.empty(nb)
        for j in numba.prange(nb):
            p1, q1 = p1s[j], q1s[j]
            y0, y1 = F0s[j], G0s[j]
            sgn = 1.0 if y0 > 0 else (-1.0 if y0 < 0 else 0.0)
            cnt = 0
            for i in range(npts - 1):
                t = t0 + i * h
                r0, rm, r1 = math.exp(t), math.exp(t + 0.5 * h), math.exp(t + h)
                a = q1 * r0 + q2
                k1F = -a * y0 - (p1 * r0 + p2 + k) * y1
                k1G = a * y1 + (p1 * r0 + p2 - k) * y0
                a = q1 * rm + q2
                u0, u1 = y0 + 0.5 * h * k1F, y1 + 0.5 * h * k1G
                k2F = -a * u0 - (p1 * rm + p2 + k) * u1
                k2G = a * u1 + (p1 * rm + p2 - k) * u0
                u0, u1 = y0 + 0.5 * h * k2F, y1 + 0.5 * h * k2G
                k3F = -a * u0 - (p1 * rm + p2 + k) * u1
                k3G = a * u1 + (p1 * rm + p2 - k) * u0
                a = q1 * r1 + q2
                u0, u1 = y0 + h * k3F, y1 + h * k3G
                k4F = -a * u0 - (p1 * r1 + p2 + k) * u1
                k4G = a * u1 + (p1 * r1 + p2 - k) * u0
                y0 = y0 + h / 6.0 * (k1F + 2 * k2F + 2 * k3F + k4F)
                y1 = y1 + h / 6.0 * (k1G + 2 * k2G + 2 * k3G + k4G)
                big = max(abs(y0), abs(y1))
                if big > _RESCALE:
                    y0 /= big
                    y1 /= big
                s = 1.0 if y0 > 0 else (-1.0 if y0 < 0 else 0.0)
                if s * sgn < 0:
                    cnt += 1
                if s != 0:
                    sgn = s
            nodes[j] = cnt
            tail[j] = y0
        return nodes, tail
else:  # pragma: no cover
    _integrate_path_numba = None
    _shoot_batch_numba = None


def _backend(backend):
    if backend is None:
        return "numba" if use_numba() else "numpy"
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is unavailable or disabled")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


def shoot_batch(p1s, q1s, F0s, G0s, p2, q2, k, t0, h, npts, backend=None):
    """Node counts of F and final F values for a batch of energies."""
    args = (np.ascontiguousarray(p1s, dtype=float), np.ascontiguousarray(q1s, dtype=float),
            np.ascontiguousarray(F0s, dtype=float), np.ascontiguousarray(G0s, dtype=float),
            float(p2), float(q2), float(k), float(t0), float(h), int(npts))
    if _backend(backend) == "numba":
        return _shoot_batch_numba(*args)
    return _shoot_batch_numpy(*args)


def integrate_path(p1, q1, F0, G0, p2, q2, k, t0, h, npts, backend=None):
    args = (float(p1), float(q1), float(F0), float(G0), float(p2), float(q2), float(k),
            float(t0), float(h), int(npts))
    if _backend(backend) == "numba":
        return _integrate_path_numba(*args)
    return _integrate_path_numpy(*args)
