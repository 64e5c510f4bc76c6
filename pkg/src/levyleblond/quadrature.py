"""Radial grids and composite Simpson quadrature."""
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import GridInadequateError, InvalidArgumentError

TAIL_TOL = 1e-10


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_max: float
    points: int = 4000
    spacing: str = "log"

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise InvalidArgumentError(f"need 0 < r_min < r_max, got {self.r_min}, {self.r_max}")
        if self.points < 1000:
            raise InvalidArgumentError(f"need at least 1000 points, got {self.points}")
        if self.spacing not in ("log", "uniform"):
            raise InvalidArgumentError(f"unknown spacing {self.spacing!r}")

    @classmethod
    def for_state(cls, n, params, points=4000, spacing="log"):
        """r in [1e-6, 30 n^2] Bohr radii."""
        aB = params.bohr_radius
        return cls(1e-6 * aB, 30.0 * n * n * aB, points, spacing)

    @property
    def r(self):
        if self.spacing == "log":
            return np.exp(np.linspace(np.log(self.r_min), np.log(self.r_max), self.points))
        return np.linspace(self.r_min, self.r_max, self.points)

    @property
    def log_step(self):
        if self.spacing != "log":
            raise InvalidArgumentError("log_step is only defined for log grids")
        return (np.log(self.r_max) - np.log(self.r_min)) / (self.points - 1)

    def refined(self, factor=2):
        return RadialGrid(self.r_min, self.r_max, factor * (self.points - 1) + 1, self.spacing)


def integrate(values, grid):
    """Simpson rule for int values(r) dr; log grids integrate values * r over ln r."""
    values = np.asarray(values)
    if grid.spacing == "log":
        return simpson(values * grid.r, dx=grid.log_step)
    return simpson(values, x=grid.r)


def check_tail(values, grid, total, tol=TAIL_TOL):
    """Raise when the exponential tail beyond r_max exceeds ``tol`` of the integral."""
    r = grid.r
    v1, v2 = abs(values[-2]), abs(values[-1])
    if v2 == 0:
        return 0.0
    rate = np.log(v1 / v2) / (r[-1] - r[-2]) if v1 > 0 else 0.0
    if rate <= 0:
        raise GridInadequateError("integrand does not decay at r_max")
    tail = v2 / rate
    if tail > tol * abs(total):
        raise GridInadequateError(f"tail beyond r_max is {tail / abs(total):.2e} of the integral")
    return tail / abs(total)


def radial_norm(f_vals, g_vals, grid, angular_factor=1.0):
    """int (|g|^2 + |f|^2) r^2 dr times ``angular_factor``."""
    dens = (np.abs(g_vals) ** 2 + np.abs(f_vals) ** 2) * grid.r ** 2
    total = integrate(dens, grid)
    check_tail(dens, grid, total)
    return float(total * angular_factor)
