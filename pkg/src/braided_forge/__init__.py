"""Exact computations with braided vector spaces and braided bialgebras."""
from .braided_space import (
    BasedSpace,
    Braiding,
    braiding_from_diagonal,
    braiding_from_matrix,
    braiding_from_yd,
    permutation_lift,
)
from .cotensor import build_cotensor_bialgebra
from .exactla import FieldSpec, Matrix, QQ
from .graded import TruncatedGradedBialgebra
from .hopf import (
    GroupTable,
    bosonize,
    group_algebra,
    relative_typeone,
    typeone_smash_check,
    yd_from_group,
    yd_to_bimodule,
)
from .tensor import build_tensor_bialgebra
from .typeone import equivalence_probe, magnum_check, typeone_truncation

__version__ = "0.1.0"

__all__ = [
    "BasedSpace",
    "Braiding",
    "FieldSpec",
    "GroupTable",
    "Matrix",
    "QQ",
    "TruncatedGradedBialgebra",
    "bosonize",
    "braiding_from_diagonal",
    "braiding_from_matrix",
    "braiding_from_yd",
    "build_cotensor_bialgebra",
    "build_tensor_bialgebra",
    "equivalence_probe",
    "group_algebra",
    "magnum_check",
    "permutation_lift",
    "relative_typeone",
    "typeone_smash_check",
    "typeone_truncation",
    "yd_from_group",
    "yd_to_bimodule",
]
