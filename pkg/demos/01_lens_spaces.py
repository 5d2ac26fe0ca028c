"""Lens spaces: gluing matrices, homology and the linking form.

L(p, q) has a genus-1 Heegaard splitting whose gluing matrix has
B = p and A = q, so H_1 = Z/p and the form on the generator is -q/p.
"""

from math import gcd

from torsionlink import homology, lens_gluing, linking_form

g = lens_gluing(7, 3)
print(g.matrix)              # (3 7; 1 2), s = 1 since 7 * 1 = 1 mod 3
print(homology(g).group)     # Z/7

f = linking_form(g)
print(f.gram[0][0])          # 4/7 == -3/7 mod 1

# the generator pairs with multiples of itself linearly
for k in range(7):
    print(k, f((1,), (k,)))

# a small table of self-linking values, -q/p mod 1
for p in range(2, 8):
    row = [str(linking_form(lens_gluing(p, q)).gram[0][0]) if gcd(p, q) == 1 else "."
           for q in range(1, p)]
    print(p, " ".join(row))
