"""Exact fixed-point data toolkit for Hamiltonian circle actions in dimension 6."""

from .core import (FixedPoint, FixedPointData, IsotropyEdge, WeightProfile, build, from_json,
                   from_moments, normalize, profile, reverse, to_json, translate, weights_of)
from .checks import CheckResult, VerificationReport, verify_all
from .invariants import (basis_coefficients, chern_classes, chern_numbers, equivariant_basis,
                         invariants_report, localize, ring_structure)
from .catalog import make_cp3, make_grass, make_v5, make_v22
from .classifier import enumerate_data, graph_type, match_family

__version__ = "0.1.0"
