from fourier_ib.scenarios.base import ScenarioSetup
from fourier_ib.scenarios.cavity import CavityParams, build_cavity
from fourier_ib.scenarios.cylinder import CylinderParams, build_cylinder, cylinder_state
from fourier_ib.scenarios.dipole import (
    DipoleParams,
    build_dipole,
    dipole_domain_length,
    dipole_grid,
    dipole_initial_vorticity,
    monopole,
)
from fourier_ib.scenarios.registry import SCENARIOS, build_scenario, scenario_params
from fourier_ib.scenarios.taylor_green import TaylorGreenParams, build_taylor_green, taylor_green_vorticity

__all__ = [
    "SCENARIOS",
    "CavityParams",
    "CylinderParams",
    "DipoleParams",
    "ScenarioSetup",
    "TaylorGreenParams",
    "build_cavity",
    "build_cylinder",
    "build_dipole",
    "build_scenario",
    "build_taylor_green",
    "cylinder_state",
    "dipole_domain_length",
    "dipole_grid",
    "dipole_initial_vorticity",
    "monopole",
    "scenario_params",
    "taylor_green_vorticity",
]
