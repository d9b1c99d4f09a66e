"""The gluing square behind the three-point subset space.

Three constructions fit into a square: the product of a sphere with
itself maps to the triple symmetric power by doubling the first
coordinate, (u, v) -> {u, u, v}, and to the double symmetric power by
the quotient projection.  Gluing the two targets along these maps,
level by level, produces exactly the level sets of the three-point
subset space: taking supports of multisets is a bijection on every
level.  This pins the subset-space model to an independently
constructed colimit.
"""

from expk import (
    compare_pushout_with_subsets,
    diagonal_insertion,
    product,
    pushout,
    sphere,
    sym_power,
)

x = sphere(1, cap=4)
square = product(x, x)
sym3, proj3 = sym_power(x, 3)
sym2, proj2 = sym_power(x, 2)
alpha = diagonal_insertion(x, square=square, sym3=sym3)

print("doubling map commutes with faces and degeneracies:", alpha.commutes())
glued, into_sym3, into_sym2 = pushout(alpha, proj2)
print("glued level sizes:   ", glued.level_sizes)
print("glued Betti table:   ", glued.betti_table())

ok, detail = compare_pushout_with_subsets(x)
print("support comparison for the circle:", ok, "-", detail)

ok, detail = compare_pushout_with_subsets(sphere(2, cap=7))
print("support comparison for the 2-sphere:", ok, "-", detail)
