"""Exact verification toolkit for the R-matrix shuffle algebra and its W-series.

All arithmetic is exact: rational functions live in Q(q, q̄^{1/n}, spectral
variables) and are normalized with FLINT.  ``wshuffle.suites.run`` drives the
checks; ``wshuffle.cli`` is the command-line front end.
"""
from .ratfun import Field, RatFun, parse_ratfun, var
from .report import VerificationReport, Witness
from .suites import Config, ConfigError, run, suite_names

__all__ = [
    "Config",
    "ConfigError",
    "Field",
    "RatFun",
    "VerificationReport",
    "Witness",
    "parse_ratfun",
    "run",
    "suite_names",
    "var",
]

__version__ = "0.1.0"
