"""Exact-arithmetic Euler forms, Serre transforms, Hochschild pairings and
the kernel-equality verdict over finite-dimensional quiver algebras."""

from .algebra import (
    Algebra,
    AlgebraStructureError,
    Arrow,
    CyclicQuiverError,
    Quiver,
    opposite,
    path_algebra,
    scalar_algebra,
    tensor,
)
from .complexes import ChainMap, Complex, PerfectComplex, as_complex, cone
from .derived import (
    K0Class,
    PairingMatrix,
    check_proper,
    check_smooth,
    dual,
    euler_matrix,
    euler_pairing,
    k0_class,
    kernel_left,
    kernel_right,
    serre,
)
from .hochschild import HHProfile, bar_oracle, hochschild, intersection_number
from .homalg import hom_complex, tensor_over
from .linalg import Matrix, RowBasis
from .modules import (
    Module,
    diagonal_bimodule,
    dual_bimodule,
    projective_module,
    regular_module,
    simple_modules,
)
from .motives import (
    Correspondence,
    HomSpaceModel,
    NCMotive,
    build_hom_model,
    chi_hom,
    compose,
    dualize,
    identity_correspondence,
    numerical_kernel,
    trace,
    verify_equivalence,
    vertex_cut_idempotent,
)
from .resolutions import (
    DEFAULT_CAP,
    ResolutionCapExceeded,
    projective_resolution,
    resolve_complex,
)

__version__ = "0.1.0"
