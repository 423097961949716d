"""Chart-level curvature engine and verification suite for normal metric
contact pairs.

The package computes Riemann, Ricci, star-Ricci, Weyl and the two Bochner
tensors of a metric contact pair given in closed-form chart coordinates,
and verifies the defining identities of the structure on built-in model
manifolds and user-supplied manifold files.
"""

from . import bochner, catalog, cli, contactpair, exprlang, jets, report, riemann
from .bochner import CurvatureContext, bochner_pair, conformal_invariance_check
from .contactpair import (
    ContactPairManifold,
    InvalidStructureError,
    check_contact_pair,
    exterior_derivative,
    foliation_projectors,
    lemma_suite,
    nijenhuis,
    star_ricci,
    star_scalar,
    synthesize_phi,
    validate_structure,
)
from .jets import Jet2
from .report import Report
from .riemann import (
    Chart,
    MetricField,
    MetricError,
    OneForm,
    TensorValue,
    VectorField,
    christoffel,
    conformal_rescale,
    covariant_derivative,
    lie_bracket,
    metric_jet,
    orthonormal_frame,
    ricci,
    scalar,
    weyl,
)

__version__ = "0.1.0"

__all__ = [
    "CurvatureContext", "Chart", "ContactPairManifold", "InvalidStructureError",
    "Jet2", "MetricError", "MetricField", "OneForm", "Report", "TensorValue",
    "VectorField", "bochner", "bochner_pair", "catalog", "check_contact_pair",
    "christoffel", "cli", "conformal_invariance_check", "conformal_rescale",
    "contactpair", "covariant_derivative", "exprlang", "exterior_derivative",
    "foliation_projectors", "jets", "lemma_suite", "lie_bracket", "metric_jet",
    "nijenhuis", "orthonormal_frame", "ricci", "riemann", "scalar",
    "star_ricci", "star_scalar", "synthesize_phi", "validate_structure", "weyl",
]
# "riemann" in __all__ names the submodule; the (0,4) curvature function
# stays at contactcurv.riemann.riemann to avoid shadowing it.
