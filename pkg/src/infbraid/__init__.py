"""Exact computations with infinitesimal 2-braidings on semi-free dg-modules.

The package builds semi-free cdgas and their polyvector algebras, solves for
2-shifted Poisson structures, and checks the infinitesimal 2-braiding they
induce on finitely generated semi-free dg-modules, all over the rationals.
"""

from .algebra import Cdga, GradedAlgebra, GradedPoly, Generator, check_square_zero
from .braiding import Bivector, t_double, t_single, t_transformation, xi_double, xi_single
from .dgmod import DgMod, ModMap, check_module, compose, hom_diff, identity, tensor_module
from .geometry import PolyvectorAlgebra, mc_check, polyvec_basis, schouten
from .lie import (LieNSpec, build_ce, heis_spec, sl2_spec, solve_lie_invariance,
                  solve_string_poisson, strict_rep_module, trivial_module)
from .parser import format_poly, parse_poly

__all__ = [
    "Bivector", "Cdga", "DgMod", "GradedAlgebra", "GradedPoly", "Generator", "LieNSpec",
    "ModMap", "PolyvectorAlgebra", "build_ce", "check_module", "check_square_zero",
    "compose", "format_poly", "heis_spec", "hom_diff", "identity", "mc_check",
    "parse_poly", "polyvec_basis", "schouten", "sl2_spec", "solve_lie_invariance",
    "solve_string_poisson", "strict_rep_module", "t_double", "t_single",
    "t_transformation", "tensor_module", "trivial_module", "xi_double", "xi_single",
]
