"""Computations around the non-split Cartan modular curves X_ns(p) and X_ns+(p)."""
from ._accel import backend
from .counting import bundled_records, count_points_moduli, count_points_trace, load_newform_records
from .ellcurve import WeierstrassCurve, point_count, supersingular_inventory
from .finite_algebra import GF, FiniteField, Polynomial
from .gl2 import CartanContext, FrobeniusClass, Mat2, build_cartan, count_fixed_cosets
from .invariants import curve_invariants, genus_ns, genus_ns_plus

__version__ = "0.1.0"

__all__ = [
    "backend",
    "bundled_records",
    "count_points_moduli",
    "count_points_trace",
    "load_newform_records",
    "WeierstrassCurve",
    "point_count",
    "supersingular_inventory",
    "GF",
    "FiniteField",
    "Polynomial",
    "CartanContext",
    "FrobeniusClass",
    "Mat2",
    "build_cartan",
    "count_fixed_cosets",
    "curve_invariants",
    "genus_ns",
    "genus_ns_plus",
]
