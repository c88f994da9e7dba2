"""Plane quartics, the Macaulay resultant, and branch quartics of degree-2 del Pezzo surfaces."""

from .branch import (
    BranchResult,
    CubicNet,
    branch_quartic,
    cubic_net_through_7,
    jacobian_sextic,
    quartic_from_dp_config,
)
from .curves import (
    DoubleCoverRecord,
    Fingerprint,
    QuarticCurve,
    QuarticVerdict,
    count_points_mod_p,
    double_cover_from_quartic,
    equivalence_fingerprint,
    fermat_quartic,
    good_reduction_verdict,
    klein_quartic,
    primitive_discriminant,
    quartic_discriminant,
    reduced_discriminant,
    singular_points_mod_p,
)
from .macaulay import MacaulayData, macaulay_matrix, macaulay_resultant, macaulay_resultant_data

__all__ = [
    "BranchResult",
    "CubicNet",
    "DoubleCoverRecord",
    "Fingerprint",
    "MacaulayData",
    "QuarticCurve",
    "QuarticVerdict",
    "branch_quartic",
    "count_points_mod_p",
    "cubic_net_through_7",
    "double_cover_from_quartic",
    "equivalence_fingerprint",
    "fermat_quartic",
    "good_reduction_verdict",
    "jacobian_sextic",
    "klein_quartic",
    "macaulay_matrix",
    "macaulay_resultant",
    "macaulay_resultant_data",
    "primitive_discriminant",
    "quartic_discriminant",
    "quartic_from_dp_config",
    "reduced_discriminant",
    "singular_points_mod_p",
]
