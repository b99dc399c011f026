"""Finite bicategories, their nerves, and principal bundles over finite spaces."""

from .bicategory import (FinBicategory, NormalLaxFunctor,
                         double_suspension, duskin_nerve, enumerate_icons, enumerate_normal_homs,
                         enumerate_normal_lax, locally_discrete, lp_2nerve, lp_bisimplicial,
                         nonstrict_bicategory, terminal_bicategory, validate_bicategory)
from .category import (FinCategory, Functor, LinearOrder, grothendieck_nerve, nerve_of_order,
                       nerve_simplicial, order_from_cover)
from .finspace import (ContinuousMap, EtaleSpace, FinSpace, minimal_open, pullback_etale,
                       stalk, validate_space)
from .homology import homology, normalized_chains, smith_normal_form
from .principal import (enumerate_augmentations, enumerate_lin2,
                        enumerate_normal_lax_from_order, grothendieck_construction,
                        is_locally_directed_cover, is_principal, is_principal_bundle,
                        is_principal_setale, is_principal_ssets)
from .simplicial import (TruncBiSSet, TruncSSet, check_lp_characterization,
                         check_simplicial_identities, coskeleton_level,
                         diagonal, is_discrete_isofibration, is_equivalence_of_categories,
                         is_k_coskeletal, is_simpson, is_tamsamani, segal_map,
                         validate_sheaf_on_sspace)

__all__ = [
    "ContinuousMap",
    "EtaleSpace",
    "FinBicategory",
    "FinCategory",
    "FinSpace",
    "Functor",
    "LinearOrder",
    "NormalLaxFunctor",
    "TruncBiSSet",
    "TruncSSet",
    "check_lp_characterization",
    "check_simplicial_identities",
    "coskeleton_level",
    "diagonal",
    "double_suspension",
    "duskin_nerve",
    "enumerate_augmentations",
    "enumerate_icons",
    "enumerate_lin2",
    "enumerate_normal_homs",
    "enumerate_normal_lax",
    "enumerate_normal_lax_from_order",
    "grothendieck_construction",
    "grothendieck_nerve",
    "homology",
    "is_discrete_isofibration",
    "is_equivalence_of_categories",
    "is_k_coskeletal",
    "is_locally_directed_cover",
    "is_principal",
    "is_principal_bundle",
    "is_principal_setale",
    "is_principal_ssets",
    "is_simpson",
    "is_tamsamani",
    "locally_discrete",
    "lp_2nerve",
    "lp_bisimplicial",
    "minimal_open",
    "nerve_of_order",
    "nerve_simplicial",
    "nonstrict_bicategory",
    "normalized_chains",
    "order_from_cover",
    "pullback_etale",
    "segal_map",
    "smith_normal_form",
    "stalk",
    "terminal_bicategory",
    "validate_bicategory",
    "validate_sheaf_on_sspace",
    "validate_space",
]

__version__ = "0.1.0"
