from .integrator import cfl_number, periodic_conditioner, rk4_advance, rk4_step
from .rhs import check_diffusion_stability, nonlinear_term, rhs
from .state import SCHEMES, Conditioned, Conditioner, FluidParams, SimulationState

__all__ = [
    "FluidParams",
    "SimulationState",
    "Conditioned",
    "Conditioner",
    "SCHEMES",
    "nonlinear_term",
    "rhs",
    "check_diffusion_stability",
    "rk4_advance",
    "rk4_step",
    "periodic_conditioner",
    "cfl_number",
]
