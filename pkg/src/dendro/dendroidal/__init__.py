from .morphisms import (
    Factorization, MorphismError, TreeMorphism, automorphisms, contract, degeneracy,
    enumerate_tree_morphisms, external_face, external_faces, factorize, identity, inner_face,
    normalize_by_automorphism,
)
from .presheaves import (
    BoundError, DendroidalSet, NerveBackend, Representable, TruncatedPresheaf, check_functoriality,
    dendrex_to_morphism, is_normal, morphism_to_dendrex, representable,
)
from .horns import (
    HornError, HornProblem, all_faces, check_compatibility, elementary_faces,
    enumerate_horn_problems, horn_filler_counts, solve_inner_horn,
)
from .localization import Glued, iso_nerve, iso_nerve_elements, localize_truncated
from .homotopy import HomotopyError, check_homotopy, homotopy_failures
from .simplicial import SimplicialError, last_vertex, last_vertex_on_arrow, linear_order
