"""Physical parameters, quantum-number labels and shared tolerances.

Natural units throughout: hbar = c = 1, the particle mass ``m`` is the energy
unit and the Bohr radius ``1/(alpha m)`` is the display length unit.
"""
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidArgumentError, SupercriticalCouplingError

FINE_STRUCTURE = 7.2973525693e-3
ELECTRON_MASS_EV = 510998.9461

# Central tolerance table; individual checks accept overrides.
TOL = {
    "algebra": 1e-12,
    "inverse": 1e-10,
    "dispersion": 1e-12,
    "scattering": 1e-10,
    "commutator": 1e-9,
    "recursion": 1e-12,
    "termination": 1e-8,
}


@dataclass(frozen=True)
class PhysParams:
    """Mass, nuclear charge, coupling and the regulator of eta' = eta - eps eta^dagger."""

    m: float = 1.0
    Z: int = 1
    alpha: float = FINE_STRUCTURE
    eps: float = 0.0

    def __post_init__(self):
        if not self.m > 0:
            raise InvalidArgumentError(f"mass must be positive, got {self.m}")
        if int(self.Z) != self.Z or self.Z < 1:
            raise InvalidArgumentError(f"Z must be a positive integer, got {self.Z}")
        if not self.alpha > 0:
            raise InvalidArgumentError(f"alpha must be positive, got {self.alpha}")
        if self.Z * self.alpha >= 1:
            raise SupercriticalCouplingError(f"Z*alpha = {self.Z * self.alpha} >= 1")
        if not 0 <= self.eps < 0.1:
            raise InvalidArgumentError(f"eps must lie in [0, 0.1), got {self.eps}")

    @property
    def a(self):
        return 1.0 + self.eps

    @property
    def a_prime(self):
        return 1.0 - self.eps

    @property
    def coupling(self):
        return self.Z * self.alpha

    @property
    def bohr_radius(self):
        return 1.0 / (self.alpha * self.m)

    def with_eps(self, eps):
        return PhysParams(self.m, self.Z, self.alpha, eps)


def _as_half_integer(j):
    fj = Fraction(j).limit_denominator(4)
    if abs(float(fj) - float(j)) > 1e-12 or fj.denominator != 2 or fj <= 0:
        raise InvalidArgumentError(f"j must be a positive half-integer, got {j}")
    return fj


@dataclass(frozen=True)
class QuantumNumbers:
    """Bound-state label: n' radial order, kappa = j + 1/2, n = n' + kappa."""

    nprime: int
    kappa: int
    m_j: float = 0.5

    def __post_init__(self):
        if int(self.nprime) != self.nprime or self.nprime < 0:
            raise InvalidArgumentError(f"n' must be a non-negative integer, got {self.nprime}")
        if int(self.kappa) != self.kappa or self.kappa < 1:
            raise InvalidArgumentError(
                f"only kappa = +(j + 1/2) >= 1 is supported, got {self.kappa}")
        if self.m_j not in (0.5, -0.5):
            raise InvalidArgumentError(f"m_j must be +-1/2, got {self.m_j}")

    @classmethod
    def from_j(cls, nprime, j, m_j=0.5):
        fj = _as_half_integer(j)
        return cls(nprime, int(fj + Fraction(1, 2)), m_j)

    @property
    def j(self):
        return self.kappa - 0.5

    @property
    def n(self):
        return self.nprime + self.kappa

    @property
    def l(self):
        return self.kappa - 1


def admissible_states(n_max):
    """All (n', kappa) labels with n' + kappa <= n_max, ordered by n then kappa."""
    out = []
    for n in range(1, n_max + 1):
        for kappa in range(1, n + 1):
            out.append(QuantumNumbers(n - kappa, kappa))
    return out


def energy_to_ev(E, params, m_ev=ELECTRON_MASS_EV):
    """Convert an energy in units of ``params.m`` to eV for a particle of rest energy ``m_ev``."""
    return E / params.m * m_ev
