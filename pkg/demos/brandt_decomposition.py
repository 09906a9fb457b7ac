"""Semilattice decompositions of two inverse semigroups.

The five-element Brandt semigroup is not separative: its least semilattice
congruence is the universal one, and the single class is not cancellative.
A Clifford semigroup, by contrast, splits into its groups.
"""
from semicomm import audit_prop_1_2, brandt_b2, decompose_semilattice, strong_semilattice_of_groups
from semicomm.construct import cyclic_group
from semicomm.decompose import render_decomposition

B2 = brandt_b2()
print("B2 classes:", decompose_semilattice(B2).partition.classes())
print(audit_prop_1_2(B2))

# Z2 above Z3, connected by the trivial homomorphism
C = strong_semilattice_of_groups([cyclic_group(2), cyclic_group(3)], [[0, 0]])
print(f"\nClifford semigroup of order {C.order}:")
print(render_decomposition(decompose_semilattice(C)))
print(audit_prop_1_2(C))
