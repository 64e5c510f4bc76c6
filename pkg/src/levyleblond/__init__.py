"""Equivalent form of the Levy-Leblond equation: nilpotent matrices, the
eps-regularized Hamiltonian, Coulomb bound states and numerical oracles."""

__version__ = "0.1.0"

from .params import FINE_STRUCTURE, PhysParams, QuantumNumbers, admissible_states  # noqa: E402
from .errors import LevyLeblondError  # noqa: E402

__all__ = ["FINE_STRUCTURE", "LevyLeblondError", "PhysParams", "QuantumNumbers",
           "admissible_states", "__version__"]
