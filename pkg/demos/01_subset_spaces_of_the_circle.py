"""Subset spaces of the circle, from scratch.

The space of nonempty subsets of size at most k of a circle is modeled
level by level: level m of the model holds the at-most-k-element subsets
of the level-m simplices of the circle, with faces and degeneracies
acting elementwise.  The headline classical fact appears immediately:
for k = 3 the space is a 3-sphere.
"""

from expk import exp_subsets, sphere

circle = sphere(1, cap=4)
print("circle model levels:", circle.level_sizes)
print("circle Betti table:", circle.betti_table())
print()

two_point = exp_subsets(sphere(1, cap=3), 2)
print("subsets of size <= 2 (a Moebius band, so a homotopy circle):")
print("  levels:", two_point.level_sizes)
print("  Betti:", two_point.betti_table())
print()

three_point = exp_subsets(circle, 3)
print("subsets of size <= 3:")
print("  levels:", three_point.level_sizes)
print("  nondegenerate cells:", [three_point.nondeg_count(n) for n in range(5)])
print("  Betti:", three_point.betti_table(), " <- the table of a 3-sphere")
print()

four_point = exp_subsets(sphere(1, cap=5), 4)
print("subsets of size <= 4 (classically again a 3-sphere up to homotopy):")
print("  Betti:", four_point.betti_table())
