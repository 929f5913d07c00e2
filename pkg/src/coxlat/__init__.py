"""coxlat: exact computations for unramified classical groups.

Root data with twisted Frobenius, Weyl and extended affine Weyl groups,
Newton/Kottwitz invariants, rational conjugacy classes of unramified tori,
apartment fixed points with valuation bound tables, positive-root filtrations
for the twisted cross section, and truncated isocrystal arithmetic.  Every
headline number is computed by at least two independent routes; the ``report``
CLI subcommand runs the whole battery.
"""

from .lattice import FiniteAbelianGroup, AbelianMap, smith_normal_form, coinvariants
from .rootdata import GroupType, RootDatum, build_root_datum
from .weyl import WeylElt, generate_weyl_group, special_coxeter, is_twisted_coxeter
from .affine import ExtAffineElt, NewtonPoint, newton_point, is_basic, coxeter_lift

__all__ = [
    "FiniteAbelianGroup",
    "AbelianMap",
    "smith_normal_form",
    "coinvariants",
    "GroupType",
    "RootDatum",
    "build_root_datum",
    "WeylElt",
    "generate_weyl_group",
    "special_coxeter",
    "is_twisted_coxeter",
    "ExtAffineElt",
    "NewtonPoint",
    "newton_point",
    "is_basic",
    "coxeter_lift",
]

__version__ = "0.1.0"
