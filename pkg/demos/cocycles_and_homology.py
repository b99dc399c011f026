"""Walk through the Duskin nerve of the double suspension of Z/2.

Counts simplices level by level, compares with 2^(C(n+1,2)-n), then computes
the integral homology of the nerve of Z/2 and of the double suspension.

    python3 demos/cocycles_and_homology.py
"""
from math import comb

from nervekit.bicategory import double_suspension, duskin_nerve, validate_bicategory
from nervekit.category import cyclic_group, nerve_simplicial
from nervekit.homology import homology_table, normalized_chains

B = validate_bicategory(double_suspension(2))
print(B)

Y = duskin_nerve(B, 4)
print("level  cells  2^(C(n+1,2)-n)")
for n, c in enumerate(Y.counts()):
    print(f"{n:5d}  {c:5d}  {2 ** (comb(n + 1, 2) - n):5d}")

# nondegenerate cells per level
print("normalized ranks:", normalized_chains(duskin_nerve(B, 3)).ranks)

# group homology of Z/2 read off its nerve
table = homology_table(nerve_simplicial(cyclic_group(2), 4), range(4))
for n in range(4):
    print(f"H_{n}(BZ/2) = {table[n]}")

table = homology_table(duskin_nerve(B, 3), range(3))
for n in range(3):
    print(f"H_{n}(double suspension) = {table[n]}")
