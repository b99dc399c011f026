"""Linear orders over finite spaces as simplicial sets, and cocycles into a
bicategory counted two ways.

    python3 demos/orders_and_augmentations.py
"""
from nervekit.bicategory import double_suspension, duskin_nerve
from nervekit.category import nerve_of_order
from nervekit.fixtures import order_corpus
from nervekit.principal import (augmentation_to_lax, enumerate_augmentations,
                                enumerate_normal_lax_from_order, is_nerve_of_linear_order,
                                is_principal_ssets)

B = double_suspension(2)
N = duskin_nerve(B, 3)

for name, L in sorted(order_corpus().items()):
    S = nerve_of_order(L, 3)
    augs = enumerate_augmentations(L, N)
    lax = enumerate_normal_lax_from_order(L, B)
    # every augmentation should come from exactly one normal lax functor
    back = {augmentation_to_lax(a) for a in augs}
    print(f"{name:22s} counts={list(S.counts())} principal={is_principal_ssets(S).ok} "
          f"linear={is_nerve_of_linear_order(S)} augs={len(augs)} lax={len(lax)} "
          f"bijective={back == set(lax)}")
