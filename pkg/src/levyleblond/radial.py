"""Closed-form radial functions ``exp(-lam r) * sum_k c_k r**(power + k)``.

Derivatives, division by r and linear combinations stay inside this family, so
operators built from them act exactly (up to rounding).  Negative powers are
allowed; such functions are only meaningful for r > 0.
"""
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

_POWER_TOL = 1e-12


@dataclass(frozen=True)
class RadialFunction:
    coeffs: np.ndarray
    lam: float = 0.0
    power: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.atleast_1d(np.asarray(self.coeffs, dtype=complex)))
        if self.lam < 0:
            raise InvalidArgumentError("decay rate must be non-negative")

    @classmethod
    def zero(cls, lam=0.0, power=0.0):
        return cls(np.zeros(1), lam, power)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0) and (self.power < 0 or self.power != int(self.power)):
            raise InvalidArgumentError("function with negative or fractional power evaluated at r <= 0")
        # Horner in r, then the leading r**power
        acc = np.zeros(np.shape(r), dtype=complex)
        for c in self.coeffs[::-1]:
            acc = acc * r + c
        lead = r ** self.power if self.power != 0 else 1.0
        return np.exp(-self.lam * r) * lead * acc

    def derivative(self):
        c = self.coeffs
        n = len(c)
        k = np.arange(n)
        out = np.zeros(n + 1, dtype=complex)
        out[:n] += (self.power + k) * c  # r**(power + k - 1)
        out[1:] -= self.lam * c
        return RadialFunction(out, self.lam, self.power - 1)

    def over_r(self, times=1):
        return RadialFunction(self.coeffs, self.lam, self.power - times)

    def times_r(self, times=1):
        return RadialFunction(self.coeffs, self.lam, self.power + times)

    def _aligned(self, other):
        if not np.isclose(self.lam, other.lam, rtol=1e-14, atol=0.0):
            raise InvalidArgumentError("cannot combine radial functions with different decay rates")
        shift = other.power - self.power
        ishift = int(round(shift))
        if abs(shift - ishift) > _POWER_TOL:
            raise InvalidArgumentError("powers differ by a non-integer amount")
        base = min(self.power, other.power)
        a = _pad(self.coeffs, int(round(self.power - base)))
        b = _pad(other.coeffs, int(round(other.power - base)))
        size = max(len(a), len(b))
        a = np.concatenate([a, np.zeros(size - len(a))])
        b = np.concatenate([b, np.zeros(size - len(b))])
        return a, b, base

    def __add__(self, other):
        a, b, base = self._aligned(other)
        return RadialFunction(a + b, self.lam, base)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scalar):
        return RadialFunction(self.coeffs * scalar, self.lam, self.power)

    __rmul__ = __mul__

    def __neg__(self):
        return (-1.0) * self

    def trimmed(self, tol=0.0):
        """Drop leading (lowest-power) coefficients with |c| <= tol."""
        c = self.coeffs
        k = 0
        while k < len(c) - 1 and abs(c[k]) <= tol:
            k += 1
        return RadialFunction(c[k:], self.lam, self.power + k)


def _pad(c, n):
    return np.concatenate([np.zeros(n, dtype=complex), c]) if n else c
