"""Isometry of linking forms and the homotopy classification of lens spaces.

L(p, q1) and L(p, q2) are homotopy equivalent exactly when
q1 q2^{-1} or -q1 q2^{-1} is a square mod p.  Dropping the sign gives the
oriented statement, isometry of the forms themselves.
"""

from fractions import Fraction
from math import gcd

from torsionlink import LinkingForm, QmodZ, block_sum, isometric, lens_gluing, lens_homotopy_equivalent, linking_form
from torsionlink.isometry import lens_form

w = isometric(lens_form(7, 1), lens_form(7, 2))
print(w)                     # multiplication by 3: 9 * (-1/7) = -2/7 mod 1

print(isometric(lens_form(5, 1), lens_form(5, 2)))       # None: 2 is not a square mod 5
print(lens_homotopy_equivalent(5, 1, 4))                   # True through the sign

# homotopy classes of L(p, q), grouped
for p in (5, 7, 8, 12, 13):
    qs = [q for q in range(1, p) if gcd(p, q) == 1]
    classes = []
    for q in qs:
        for c in classes:
            if lens_homotopy_equivalent(p, c[0], q):
                c.append(q)
                break
        else:
            classes.append([q])
    print(p, classes)

# non-cyclic groups need a search.  On (Z/2)^2 the diagonal form and the
# hyperbolic one (x.x = 0 for every x) are not isometric
diag = linking_form(block_sum(lens_gluing(2, 1), lens_gluing(2, 1)))
half = QmodZ(Fraction(1, 2))
hyperbolic = LinkingForm(diag.group, ((QmodZ(0), half), (half, QmodZ(0))))
print(isometric(diag, diag))
print(isometric(diag, hyperbolic))

# orthogonal sums commute up to a swap of summands
f = linking_form(block_sum(lens_gluing(4, 1), lens_gluing(4, 3)))
g = linking_form(block_sum(lens_gluing(4, 3), lens_gluing(4, 1)))
print(f.group)
print(isometric(f, g))
