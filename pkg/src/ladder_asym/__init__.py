"""Generalized Cantor ladders and the asymptotics of int_0^1 exp(lam C(t)) dt."""

__version__ = "0.1.0"

from .asymptotics import (
    PeriodicProfile,
    extract_profile,
    first_term_remainder,
    fluctuation_by_series,
    fourier_coefficient,
    profile_value,
    tilde_phi_regular,
)
from .errors import *  # noqa: F401,F403
from .expansion import (
    AtomSum,
    ExpansionState,
    ExpansionTerm,
    critical_point,
    eval_expansion,
    exponent_sequence,
    general_expansion,
    reduce_atoms,
    simple_expansion_m2,
)
from .integral import DEFAULT_CONFIG, EvalConfig, enclose_E, eval_E_negative, eval_scaled_E
from .interval import IntervalValue
from .ladder import Ladder, c_enclosure, mirror, moments, new_ladder
from .specfun import gamma_complex, zeta_complex
