"""Exact-arithmetic lattices of Fermat hypersurfaces.

Constructs the primitive middle-homology lattices of Fermat hypersurfaces
with their intersection pairings and symmetry actions, the cyclotomic
hermitian eigenlattices and Hodge-character decompositions, and diagonal
GIT-stability tests for homogeneous forms, specializing to the cubic
fourfold and its special/nodal vector arrangements.
"""

from .exact_algebra import CyclotomicElement, GroupRingElement
from .fermat_homology import (
    MilnorModule,
    PrimitiveFermatLattice,
    build_milnor,
    build_primitive,
    monomial_pairing,
    rank_formula,
    resolution_check,
)
from .git_stability import (
    HomogeneousForm,
    cone_extend,
    exponent_points,
    is_semistable_diagonal,
    is_stable_diagonal,
)
from .hermitian_eigen import (
    HermitianLattice,
    chi_reduce,
    hermitian_gram,
    hermitian_signature,
)
from .hodge_characters import (
    HodgeCharacter,
    enumerate_characters,
    fermat_class_character,
    hodge_numbers,
    hodge_type,
)
from .lattice_core import (
    DiscriminantData,
    GlueSpec,
    IntegerLattice,
    discriminant,
    glue,
    is_even,
    radical_quotient,
    short_vectors,
    signature,
    smith_normal_form,
)
from .cubic_period import (
    CubicFourfoldLattice,
    bounded_box_vectors,
    build_cubic_lattices,
    eigenlattice,
    hyperplane_meets_eigenball,
    verify_remark_52,
)

__version__ = "0.1.0"

__all__ = [
    "CyclotomicElement", "GroupRingElement",
    "MilnorModule", "PrimitiveFermatLattice", "build_milnor",
    "build_primitive", "monomial_pairing", "rank_formula", "resolution_check",
    "HomogeneousForm", "cone_extend", "exponent_points",
    "is_semistable_diagonal", "is_stable_diagonal",
    "HermitianLattice", "chi_reduce", "hermitian_gram", "hermitian_signature",
    "HodgeCharacter", "enumerate_characters", "fermat_class_character",
    "hodge_numbers", "hodge_type",
    "DiscriminantData", "GlueSpec", "IntegerLattice", "discriminant", "glue",
    "is_even", "radical_quotient", "short_vectors", "signature",
    "smith_normal_form",
    "CubicFourfoldLattice", "bounded_box_vectors", "build_cubic_lattices",
    "eigenlattice", "hyperplane_meets_eigenball", "verify_remark_52",
]
