"""Periodic A(1)_n soliton cellular automaton.

Crystal transport, the KKR bijection to rigged configurations, action-angle
variables with their tori and periods, and the tropical theta reconstruction.
"""

from .angle import (
    AngleVariable,
    apply_slide,
    apply_time,
    decompose_level_set,
    direct_scattering,
    dynamical_period,
    f_matrices,
    inverse_scattering,
    omega_count,
    period_table,
)
from .automaton import (
    evolve,
    evolve_power,
    format_path,
    parse_path,
    simulated_period,
    soliton_content,
)
from .content import SolitonContent
from .kernels import BACKEND
from .rigged import RiggedConfiguration, enumerate_riggings, kkr_backward, kkr_forward
from .tableau import Tableau, combinatorial_R
from .tropical import ThetaData, tau_path, theta_path

__version__ = "0.1.0"

__all__ = [
    "AngleVariable", "BACKEND", "RiggedConfiguration", "SolitonContent", "Tableau", "ThetaData",
    "apply_slide", "apply_time", "combinatorial_R", "decompose_level_set", "direct_scattering",
    "dynamical_period", "enumerate_riggings", "evolve", "evolve_power", "f_matrices", "format_path",
    "inverse_scattering", "kkr_backward", "kkr_forward", "omega_count", "parse_path", "period_table",
    "simulated_period", "soliton_content", "tau_path", "theta_path",
]
