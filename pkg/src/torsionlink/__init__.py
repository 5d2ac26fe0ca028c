"""Torsion linking forms of 3-manifolds from Heegaard gluing matrices."""

from .errors import (
    DimensionMismatch,
    GenusMismatch,
    NotAntiSymplectic,
    NotCoprime,
    NotRationalHomologySphere,
    NotSymplectic,
    OddDimension,
    OracleMismatch,
    SearchCapExceeded,
    SingularMatrix,
    TooLarge,
    TorsionLinkError,
)
from .exactalg import (
    IntMatrix,
    QmodZ,
    RatMatrix,
    SNFResult,
    det,
    mat_mul,
    qmodz_add,
    rat_inverse,
    smith_normal_form,
)
from .heegaard import (
    Gluing,
    LensParams,
    block_sum,
    compose_gluings,
    lens_gluing,
    random_gluing,
    swap_gluing,
    validate_gluing,
)
from .isometry import isometric, lens_homotopy_equivalent
from .linking import (
    FiniteAbelianGroup,
    HomologyPresentation,
    LinkingForm,
    evaluate,
    homology,
    is_rational_homology_sphere,
    linking_form,
    orthogonal_sum,
)

__all__ = [
    "DimensionMismatch",
    "FiniteAbelianGroup",
    "GenusMismatch",
    "Gluing",
    "HomologyPresentation",
    "IntMatrix",
    "LensParams",
    "LinkingForm",
    "NotAntiSymplectic",
    "NotCoprime",
    "NotRationalHomologySphere",
    "NotSymplectic",
    "OddDimension",
    "OracleMismatch",
    "QmodZ",
    "RatMatrix",
    "SNFResult",
    "SearchCapExceeded",
    "SingularMatrix",
    "TooLarge",
    "TorsionLinkError",
    "block_sum",
    "compose_gluings",
    "det",
    "evaluate",
    "homology",
    "is_rational_homology_sphere",
    "isometric",
    "lens_gluing",
    "lens_homotopy_equivalent",
    "linking_form",
    "mat_mul",
    "orthogonal_sum",
    "qmodz_add",
    "random_gluing",
    "rat_inverse",
    "smith_normal_form",
    "swap_gluing",
    "validate_gluing",
]

__version__ = "0.1.0"
