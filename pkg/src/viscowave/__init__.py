"""1D viscoelastic wave propagation engine.

Laplace-domain material laws with machine-checkable certificates, a
high-order FEM + trapezoidal convolution quadrature marcher, an
independent Crank-Nicolson semigroup integrator for the classical models,
frequency-domain coercivity probes, and a configuration-driven scenario
runner.
"""

from .material import (Certificate, CoupledModel, MaterialRegion, ModelKind,
                       certificate_of, eval_transfer,
                       fractional_power_bound_check, verify_hypotheses)
from .fem1d import Mesh1D, assemble, build_mesh
from .cq import CQScheme, WeightSequence, convolve_step, weights
from .signals import BoundarySignals, PulseTrain, Window, ZeroSignal
from .config import SimulationConfig, load_config, parse_config
from . import laplace_probe, scenarios, semigroup, timestepper

__version__ = "0.1.0"

__all__ = [
    "Certificate", "CoupledModel", "MaterialRegion", "ModelKind",
    "certificate_of", "eval_transfer", "fractional_power_bound_check",
    "verify_hypotheses", "Mesh1D", "assemble", "build_mesh", "CQScheme",
    "WeightSequence", "convolve_step", "weights", "BoundarySignals",
    "PulseTrain", "Window", "ZeroSignal", "SimulationConfig", "load_config",
    "parse_config", "laplace_probe", "scenarios", "semigroup", "timestepper",
]
