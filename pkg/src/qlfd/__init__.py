"""Quiver representation spaces, semi-invariants, and linear free divisor
certification."""

from .arith import DEFAULT_PRIME, PrimeField, Rng, derive_seed
from .certify import (
    DEFAULT_SEED,
    CertifyError,
    CertifyOptions,
    LfdReport,
    certify,
    discriminant_degree,
    multiplicity_vector,
    squarefree_probe,
    verify_factorization,
)
from .fixtures import block_handles, builtin, builtin_names
from .qfile import parse, serialize
from .quiver import (
    Quiver,
    build_quiver,
    cartan_matrix,
    classify_underlying_graph,
    euler_form,
    euler_inverse,
    euler_matrix,
    in_out_degree,
    opposite_quiver,
    support_subquiver,
    tits_form,
)
from .repmatrix import (
    Representation,
    action_matrix,
    defect_matrix,
    discriminant_value,
    extension_middle_term,
    hom_ext_dims,
    random_representation,
)
from .roots import (
    SchurCertificate,
    brick_probe,
    highest_root,
    is_imaginary_root,
    is_real_root,
    orthogonal_roots,
    positive_roots,
    semigroup_basis,
)
from .semiinv import (
    BlockHandle,
    BlockRecipe,
    SchofieldHandle,
    degree_of,
    discriminant_weight,
    evaluate,
    root_from_weight,
    sample_generic_witness,
    verify_weight,
    weight_of_schofield,
    weight_support_type,
)

__version__ = "0.1.0"
