"""Isolated circular orders on free products of cyclic groups and left orders
on their central extensions, with certified ping-pong geometry."""
from .certarith import Comparison, Inconclusive, PrecisionPolicy
from .circular import OrderHandle, check_axioms, eval_c, linear_part, random_quadruples
from .cover import CoverDatum, CoverLift, cover_for_a, gap_orbit_check, search_valid_d, trivial_cover
from .kernel import BACKEND
from .leftorder import HatWord, LeftOrderHandle, cofinal_bounds, hat_compare, project_order
from .pingpong import ConfigurationError, GeometryParams, PingPongConfig, build_configuration
from .realization import FiniteOrderTable, realize, roundtrip
from .words import E, GroupSpec, H, Word

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Comparison", "ConfigurationError", "CoverDatum", "CoverLift", "E", "FiniteOrderTable",
    "GeometryParams", "GroupSpec", "H", "HatWord", "Inconclusive", "LeftOrderHandle", "OrderHandle",
    "PingPongConfig", "PrecisionPolicy", "Word", "build_configuration", "check_axioms", "cofinal_bounds",
    "cover_for_a", "eval_c", "gap_orbit_check", "hat_compare", "linear_part", "project_order",
    "random_quadruples", "realize", "roundtrip", "search_valid_d", "trivial_cover",
]
