"""dgkernel: exact chain-complex and DG-category computations over Z.

Everything is dense arbitrary-precision integer linear algebra: Smith
normal form drives kernels, cokernels, and homology; bounded complexes
carry the Koszul-signed tensor and hom calculus; small DG-categories
carry coends, weighted colimits, and Cauchy-data verification.
"""

from .zlinalg import (
    FPAbGroup,
    IntMatrix,
    ShapeMismatch,
    SmithDecomposition,
    cokernel,
    element_equal,
    kernel_basis,
    smith_normal_form,
    solve,
)
from .complexes import (
    ChainMap,
    Complex,
    GradedGroups,
    GradedObject,
    Proto,
    adjunction_iso_LU,
    adjunction_iso_UR,
    boundariesquot_Zprime,
    canonical_presentation,
    chain_map_basis,
    compose,
    cycles_Z,
    d_hom,
    direct_sum_complexes,
    forget_U,
    functor_L,
    functor_R,
    hom_complex,
    homology_H,
    identity_map,
    make_complex,
    suspension,
    unit_complex,
)
from .monoidal import (
    TensorBasisIndex,
    decompose_LZ_tensor,
    symmetry,
    sten_iso,
    tensor,
    tensor_proto,
    verify_duality_LR,
)
from .cones import (
    ConeRecognitionData,
    DirectSumWitness,
    Protosplitting,
    coequalizer_protosplit_pair,
    cokernel_protosplit,
    cone_as_cokernel,
    cone_homotopy_iso,
    cylinder_factorization,
    direct_sum,
    idempotent_of,
    is_protosplitting,
    mapping_cone,
    mc1_iso_LU,
    recognize_cone,
    split_idempotent,
)
from .ell import (
    EllHom,
    EllModule,
    decode,
    ell_compose,
    ell_hom_rank,
    encode,
    yoneda_rank_check,
)
from .dgcat import (
    CauchyData,
    DGModule,
    DGModuleLeft,
    Elt,
    FiniteDGCategory,
    ModuleTransform,
    coend_tensor,
    g_retraction_from_cauchy,
    module_presentation,
    representable_cauchy_data,
    solve_cauchy_counit,
    verify_cauchy_data,
    verify_protosplit_quotient,
    weighted_colimit,
)
from .totals import (
    DGHomElement,
    DoubleComplex,
    dg_compose,
    dg_hom_differential,
    embed_i,
    tot_adjunction_check,
    tot_via_weighted_colimit,
    total_complex,
    weight_J,
)

__version__ = "0.1.0"
