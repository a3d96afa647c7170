"""Central-upwind and A-WENO schemes with adaptive artificial anti-diffusion
for the 1-D and 2-D Euler equations."""

from .euler import (ConservedState, EigenPair, GasModel, InterfaceAverage,
                    PrimitiveState, conserved_from_primitive, eigensystem_x,
                    eigensystem_y, interface_average, physical_flux_x,
                    physical_flux_y, primitive_from_conserved, sound_speed)
from .grid import BoundaryCondition, GridSpec, Side
from .solver import (Discretization, RunState, SchemeConfig, march,
                     ssprk3_step)

__version__ = "0.1.0"
