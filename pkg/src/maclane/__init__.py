"""Exact arithmetic for inductive valuations on K[x].

Augmentation chains over computable valued fields, Newton polygons with exact
lower hulls, stability probing of continuous families, and the defect and
ramification/inertia bookkeeping of chained augmentations.
"""

from .valuegroup import (GroupElement, INF, Subgroup, compare, elem,
                         smallest_multiple_in, subgroup_join)
from .groundfield import (FpTField, QpField, QtRank2Field,
                          field_from_descriptor, lift_precision)
from .polyval import (ExpansionTerm, Poly, SupportError, Valuation,
                      phi_expand)
from .newton import (Component, NewtonPolygon, component, is_one_sided,
                     lower_hull, polygon, polygon_add, principal, render)
from .keypoly import (TangentDirection, augment, divides_initial, is_minimal,
                      key_check, tangent_direction)
from .limits import (ContinuousFamily, StabilityReport, limit_augment,
                     probe_stability)
from .defect import (AugmentationReport, DefectReport, defect_formula,
                     defect_of_step, efd_sum_check, inertia_of_step)
from . import scenarios

__version__ = "0.1.0"

__all__ = [
    "GroupElement", "INF", "Subgroup", "compare", "elem",
    "smallest_multiple_in", "subgroup_join",
    "QpField", "FpTField", "QtRank2Field", "field_from_descriptor",
    "lift_precision",
    "Poly", "Valuation", "ExpansionTerm", "SupportError", "phi_expand",
    "NewtonPolygon", "Component", "lower_hull", "polygon", "component",
    "principal", "polygon_add", "is_one_sided", "render",
    "TangentDirection", "is_minimal", "divides_initial", "tangent_direction",
    "augment", "key_check",
    "ContinuousFamily", "StabilityReport", "probe_stability", "limit_augment",
    "AugmentationReport", "DefectReport", "defect_of_step", "inertia_of_step",
    "defect_formula", "efd_sum_check",
    "scenarios",
]
