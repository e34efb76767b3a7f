"""Exact Bockstein-obstruction toolkit for transversal Z rotations in CSS codes."""
from .bockstein import (
    BocksteinReport,
    LiftResult,
    PhaseVector,
    bockstein_defect,
    is_cycle,
    lift_once,
    lift_preserving_pairing,
    lift_to_level,
    logical_rotation_program,
)
from .catalog import catalog_get
from .chain_lift import ChainLiftResult, relift_analysis, residual_matrix, solve_chain_lift
from .codefile import load_code, parse_code_file
from .css_model import (
    CssCode,
    LogicalBasis,
    classes_equal,
    divisibility_report,
    homology_structure,
    logical_bases,
    max_commutativity_level,
    validate,
    x_generators_independent,
)
from .ring_linalg import ResidueMatrix, ResidueVector

__version__ = "0.1.0"
