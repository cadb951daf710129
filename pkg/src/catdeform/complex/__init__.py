"""The deformation complex of a tensor category."""
from .cochains import MAX_DEGREE, Cochain, CochainSpace, cochain_from_json, load_cochain, save_cochain
from .coboundary import TensorComplex, cobound, coboundary_matrix, cohomology, is_closed
from .deform import (
    DeformationCandidate,
    deformation_to_json,
    deformed_F,
    extend_to_order,
    load_deformation,
    obstruction,
    obstruction_report,
    pentagon_residual,
    save_deformation,
)
