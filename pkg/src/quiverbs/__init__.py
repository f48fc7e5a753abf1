"""Bernstein-Sato polynomials of quiver semi-invariants by the slice method."""

from .bfactor import Factor, FactorProduct, RootMultiset, canonicalize, expand, monic_expand, roots
from .candecomp import canonical_search, decompose, positive_roots, type_d_decompose
from .classical import FormulaId, closed_form, euler_factor
from .errors import QuiverBSError
from .homext import Rep, fitting_decompose, hom_ext
from .linform import LinForm, Relations
from .oracle import bfunction_oracle, build_cV, bvalue, bvalue_multi, verify_ideal_power
from .qfile import QuiverFile, parse, parse_text
from .quiver import Arrow, Quiver, dual_root, euler_form, root_of_weight, weight_of_root
from .slicer import Derivation, SliceState, locally_semisimple, run, run_multi

__all__ = [
    "Arrow", "Derivation", "Factor", "FactorProduct", "FormulaId", "LinForm", "Quiver", "QuiverBSError",
    "QuiverFile", "Relations", "Rep", "RootMultiset", "SliceState", "bfunction_oracle", "build_cV",
    "bvalue", "bvalue_multi", "canonical_search", "canonicalize", "closed_form", "decompose",
    "dual_root", "euler_factor", "euler_form", "expand", "fitting_decompose", "hom_ext",
    "locally_semisimple", "monic_expand", "parse", "parse_text", "positive_roots", "root_of_weight",
    "roots", "run", "run_multi", "type_d_decompose", "verify_ideal_power", "weight_of_root",
]

__version__ = "0.1.0"
