"""Semi-invariants of acyclic quivers, Littlewood-Richardson invariants and their stretching."""

from qsi.errors import QSIError
from qsi.linalg import ExactMatrix, determinant, nullspace_basis, rank
from qsi.lr import lr_coefficient, sl_invariant_dim, stretched_invariant, stretched_lr, tensor_decompose
from qsi.partitions import Partition
from qsi.quiver import Arrow, DimensionVector, Quiver, Weight, load_quiver, ringel_form, sigma_beta
from qsi.reps import Representation, check_ext_descent, ext_dim, hom_dim
from qsi.semi_invariants import si_dim_cauchy, si_dim_eval_oracle, stretch_function

__version__ = "0.1.0"

__all__ = [
    "Arrow", "DimensionVector", "ExactMatrix", "Partition", "QSIError", "Quiver", "Representation",
    "Weight", "check_ext_descent", "determinant", "ext_dim", "hom_dim", "load_quiver",
    "lr_coefficient", "nullspace_basis", "rank", "ringel_form", "si_dim_cauchy",
    "si_dim_eval_oracle", "sigma_beta", "sl_invariant_dim", "stretch_function",
    "stretched_invariant", "stretched_lr", "tensor_decompose",
]
