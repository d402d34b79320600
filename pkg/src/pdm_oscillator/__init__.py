"""Quantum and classical oscillator with position-dependent mass
m(x) = m0 / (1 + gamma x)^2: exact spectrum, supersymmetric structure,
coherent states and independent numeric oracles."""
from .core import (Convention, Coordinate, Grid, ModelParams, SpectrumResult, WaveFn,
                   default_grid, integrate)
from .errors import (BoundStateError, DomainError, GridError, NormalizabilityError,
                     RegimeError)

__version__ = "0.1.0"

__all__ = [
    "BoundStateError", "Convention", "Coordinate", "DomainError", "Grid", "GridError",
    "ModelParams", "NormalizabilityError", "RegimeError", "SpectrumResult", "WaveFn",
    "default_grid", "integrate",
]
