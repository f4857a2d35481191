"""Cohomology ring and Chern classes read off from fixed-point data alone."""

from hamsix import catalog
from hamsix.invariants import chern_classes, chern_numbers, equivariant_basis, ring_structure

families = {"1a": catalog.make_cp3(1, 1, 1), "1b": catalog.make_grass(1, 2),
            "2a": catalog.make_v5(), "2b": catalog.make_v22()}

print(f"{'family':8}{'ring':28}{'c(M)':22}{'(c1^3, c1c2, c3)'}")
for tag, data in families.items():
    ring = ring_structure(data)
    ch = chern_classes(data)
    c = f"1 + {ch.k1}x + {ch.k2}y + {ch.k3}xy"
    print(f"{tag:8}{ring.presentation():28}{c:22}{chern_numbers(data)}")

# Restrictions of the equivariant basis classes to each fixed point: the
# matrix is upper triangular with Lambda_i^- t^i on the diagonal.
basis = equivariant_basis(catalog.make_v5())
print("\nV_5 basis restrictions (row i = class, column j = point):")
for i in range(4):
    print("  " + "  ".join(f"{str(basis[i, j]):>8}" for j in range(4)))
