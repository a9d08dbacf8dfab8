"""Matrix groups, the Heisenberg-double bracket and the free flows."""

from rsvd.matgroup.bracket import (
    bracket_from_gradients,
    gradients,
    lie_basis,
    lie_project,
    master_hamiltonian,
    pairing,
    poisson_bracket,
    r_matrix,
)
from rsvd.matgroup.decompose import (
    decompose_bk,
    decompose_kb,
    dress_right,
    is_block_diagonal,
    observables,
)
from rsvd.matgroup.flows import (
    exact_F_flow,
    free_hamiltonian,
    integrate_Phi_flow,
    triple_vector_field,
)
from rsvd.matgroup.types import (
    GroupElement,
    LieAlgebraElement,
    MasterPoint,
    ObservableTriple,
    TripleTangent,
    involution,
    random_group_element,
)

__all__ = [
    "GroupElement",
    "LieAlgebraElement",
    "MasterPoint",
    "ObservableTriple",
    "TripleTangent",
    "bracket_from_gradients",
    "decompose_bk",
    "decompose_kb",
    "dress_right",
    "exact_F_flow",
    "free_hamiltonian",
    "gradients",
    "integrate_Phi_flow",
    "involution",
    "is_block_diagonal",
    "lie_basis",
    "lie_project",
    "master_hamiltonian",
    "observables",
    "pairing",
    "poisson_bracket",
    "r_matrix",
    "random_group_element",
    "triple_vector_field",
]
