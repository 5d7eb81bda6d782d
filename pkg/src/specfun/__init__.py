from src.specfun.complex_value import (
    as_complex,
    complex_log,
    complex_power,
    distance_mod_2pi_i,
    is_nonpositive_integer,
)
from src.specfun.gamma import gamma, log_gamma, log_sin_pi
from src.specfun.hurwitz import hurwitz_zeta, hurwitz_zeta0, hurwitz_zeta_ds0
from src.specfun.qgamma import (
    QDeformParams,
    log_jackson_q_gamma,
    pochhammer_tail_bound,
    q_gamma,
    q_gamma_value,
    q_pochhammer,
)

__all__ = [
    "QDeformParams",
    "as_complex",
    "complex_log",
    "complex_power",
    "distance_mod_2pi_i",
    "gamma",
    "hurwitz_zeta",
    "hurwitz_zeta0",
    "hurwitz_zeta_ds0",
    "is_nonpositive_integer",
    "log_gamma",
    "log_jackson_q_gamma",
    "log_sin_pi",
    "pochhammer_tail_bound",
    "q_gamma",
    "q_gamma_value",
    "q_pochhammer",
]
