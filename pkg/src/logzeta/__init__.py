"""Exact computation of motivic zeta functions from combinatorial models.

Subpackages by layer: ``intlin`` (integer linear algebra), ``cones``
(polyhedral cones and complexes), ``monoids`` (sharp fs monoids), ``mring``
(symbolic Grothendieck ring), ``series`` (rational generating functions),
``zeta`` (sncd and fan-model pipelines), ``newton`` (Newton polyhedron
pipeline), ``cli`` (command line).
"""

from .mring import LaurentPoly, MClass, MCoeff
from .series import ZSeries, cone_series, equal, format_poles
from .zeta import (
    FanModel,
    SncdComponent,
    SncdData,
    dl_zeta,
    fan_poincare,
    fan_poles,
    nearby_fibre,
    sncd_poincare,
    sncd_to_fanmodel,
    transport_subdivide,
    validate_model,
)
from .newton import (
    NewtonInput,
    face_report,
    newton_poles,
    newton_polyhedron,
    newton_to_fanmodel,
    newton_zeta,
    newton_zeta_local,
    nondegeneracy_probe,
)

__all__ = [
    "LaurentPoly",
    "MClass",
    "MCoeff",
    "ZSeries",
    "cone_series",
    "equal",
    "format_poles",
    "FanModel",
    "SncdComponent",
    "SncdData",
    "dl_zeta",
    "fan_poincare",
    "fan_poles",
    "nearby_fibre",
    "sncd_poincare",
    "sncd_to_fanmodel",
    "transport_subdivide",
    "validate_model",
    "NewtonInput",
    "face_report",
    "newton_poles",
    "newton_polyhedron",
    "newton_to_fanmodel",
    "newton_zeta",
    "newton_zeta_local",
    "nondegeneracy_probe",
]

__version__ = "0.1.0"
