"""Exact symbolic workbench for generalized symmetric metric connections on para-Sasaki-like manifolds."""

from .algebra import ALPHA, BETA, ONE, ZERO, LinearSystem, Poly, RationalFunction, Solution, parse_poly, solve_exact
from .errors import ConsistencyError, JacobiError, ManifoldParseError, StructureError
from .frames import (
    ApapRStructure,
    FrameAlgebra,
    MetricFrame,
    TensorField,
    associated_metric,
    lie_bracket,
    validate_apapr,
)
from .connections import (
    ConnectionCoefficients,
    curvature,
    gsm_connection,
    gsm_torsion_closed_form,
    levi_civita,
    reconstruct_connection_from_torsion,
    ricci,
    scalar_curvature,
)
from .classify import is_para_sasaki_like, solve_einstein_like, solve_soliton
from .manifold_io import format_manifold, load_manifold, parse_manifold
from .report import Report, emit_report
from .workbench import Workbench, crosscheck_report

__version__ = "0.1.0"
