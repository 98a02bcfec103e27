"""Exact coefficient-extraction kernel and identity verification harness.

Truncated formal Laurent series over exact rationals with a formal residue
operator, sparse multivariate series, brute-force combinatorial oracles and
a registry of verified identities.
"""

__version__ = "0.1.0"

from .numeric import (
    binom_general,
    binom_int,
    binom_primed,
    factorial,
    mobius,
    multinomial_general,
    necklace_rank,
)
from .series import (
    LaurentSeries,
    SeriesError,
    WindowError,
    binom_pow,
    exp_series,
    geom_sum_finite,
    log_series,
    make,
)
from .mseries import MPoly, MSeries, ratfun_equal

__all__ = [
    "__version__",
    "factorial",
    "binom_int",
    "binom_general",
    "binom_primed",
    "multinomial_general",
    "mobius",
    "necklace_rank",
    "LaurentSeries",
    "SeriesError",
    "WindowError",
    "make",
    "binom_pow",
    "exp_series",
    "log_series",
    "geom_sum_finite",
    "MPoly",
    "MSeries",
    "ratfun_equal",
]
