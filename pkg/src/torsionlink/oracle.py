"""Brute-force reference computations for cross-checking.

Nothing here goes through Smith normal form or the elimination routines of
:mod:`torsionlink.exactalg`; determinants are Leibniz sums, inverses are
adjugates, and cosets are found by flooring in the lattice basis.  Value
tables are integer numerators over the common denominator ``|det|``, held in
int64 arrays; every entry is reduced below ``|det| <= 5000`` before products
are taken, so nothing overflows.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .errors import OracleMismatch, SingularMatrix, TooLarge

COKERNEL_CAP = 5000
LINKING_CAP = 2000
ISOMETRY_CAP = 500
HOM_CAP = 200_000


def _as_lists(m):
    return [list(r) for r in (m.entries if hasattr(m, "entries") else m)]


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(m) -> int:
    a = _as_lists(m)
    total = 0
    for perm in itertools.permutations(range(len(a))):
        term = _perm_sign(perm)
        for i, j in enumerate(perm):
            term *= a[i][j]
            if not term:
                break
        total += term
    return total


def adjugate(m):
    a = _as_lists(m)
    n = len(a)

    def minor(i, j):
        return [[a[r][c] for c in range(n) if c != j] for r in range(n) if r != i]

    return [[(-1) ** (i + j) * leibniz_det(minor(j, i)) for j in range(n)] for i in range(n)]


class Cokernel:
    """Coset representatives of ``Z^n / M Z^n`` lying in the cell ``M [0,1)^n``."""

    def __init__(self, m, cap=COKERNEL_CAP):
        self.m = _as_lists(m)
        n = len(self.m)
        if any(len(r) != n for r in self.m):
            raise TooLarge("cokernel oracle needs a square matrix")
        self.n = n
        self.det = leibniz_det(self.m)
        if self.det == 0:
            raise SingularMatrix("matrix has determinant 0")
        if abs(self.det) > cap:
            raise TooLarge(f"|det| = {abs(self.det)} exceeds oracle cap {cap}")
        self.adj = adjugate(self.m)
        self.elements = self._enumerate()
        self.index = {x: i for i, x in enumerate(self.elements)}

    def reduce(self, v) -> tuple:
        """``v - M floor(M^-1 v)`` with ``M^-1 = adj / det``."""
        d = self.det
        x = [sum(c * vi for c, vi in zip(r, v)) // d for r in self.adj]
        return tuple(vi - sum(mr[k] * x[k] for k in range(self.n)) for vi, mr in zip(v, self.m))

    def _enumerate(self):
        zero = (0,) * self.n
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.n):
                    w = self.reduce([x + (k == i) for k, x in enumerate(v)])
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        if len(seen) != abs(self.det):
            raise OracleMismatch(f"enumerated {len(seen)} cosets, |det| = {abs(self.det)}")
        return sorted(seen)

    def equivalent(self, v, w) -> bool:
        diff = [a - b for a, b in zip(v, w)]
        return all(sum(c * x for c, x in zip(r, diff)) % self.det == 0 for r in self.adj)


def brute_cokernel(m, cap=COKERNEL_CAP) -> list:
    return Cokernel(m, cap).elements


class LinkingTable:
    """``-x^T B^-1 A y mod 1`` on all pairs of coset representatives of ``B^T``.

    ``numerators[i, j] / denominator`` is the value on ``elements[i]``,
    ``elements[j]``.  Construction re-evaluates the whole table on randomly
    shifted representatives ``x + B^T u`` and raises :class:`OracleMismatch`
    if anything moves.
    """

    def __init__(self, gluing, cap=LINKING_CAP, shifts=2, seed=0):
        b = gluing.B.tolist()
        a = gluing.A.tolist()
        g = len(b)
        bt = [[b[j][i] for j in range(g)] for i in range(g)]
        det_b = leibniz_det(b)
        if det_b == 0:
            raise SingularMatrix("det B = 0")
        if abs(det_b) > cap:
            raise TooLarge(f"|det B| = {abs(det_b)} exceeds oracle cap {cap}")
        self.coker = Cokernel(bt, cap)
        self.elements = self.coker.elements
        n = abs(det_b)
        self.denominator = n
        # -B^-1 A = -adj(B) A / det B; scale by |det B| to get integers.
        adj = adjugate(b)
        sign = -1 if det_b > 0 else 1
        scaled = [[sign * sum(adj[i][k] * a[k][j] for k in range(g)) for j in range(g)] for i in range(g)]
        self.scaled_matrix = [[x % n for x in r] for r in scaled]
        self._m = np.array(self.scaled_matrix, dtype=np.int64).reshape(g, g)
        reps = np.array(self.elements, dtype=object).reshape(len(self.elements), g)
        self.numerators = self._table(reps, reps)
        rng = np.random.default_rng(seed)
        bt_arr = np.array(bt, dtype=object).reshape(g, g)
        for _ in range(shifts):
            u = rng.integers(-3, 4, size=(len(self.elements), g)).astype(object)
            t = rng.integers(-3, 4, size=(len(self.elements), g)).astype(object)
            shifted = self._table(reps + u @ bt_arr.T, reps + t @ bt_arr.T)
            if not np.array_equal(shifted, self.numerators):
                raise OracleMismatch("linking value changed under a representative shift")

    def _table(self, xs, ys):
        n = self.denominator
        x = (xs % n).astype(np.int64)
        y = (ys % n).astype(np.int64)
        return ((x @ self._m) % n @ y.T) % n

    def value(self, x, y) -> Fraction:
        i = self.coker.index[self.coker.reduce(x)]
        j = self.coker.index[self.coker.reduce(y)]
        return Fraction(int(self.numerators[i, j]), self.denominator)

    __call__ = value


def brute_linking_form(gluing, cap=LINKING_CAP) -> LinkingTable:
    return LinkingTable(gluing, cap)


def brute_isometry(f1, f2, cap=ISOMETRY_CAP) -> bool:
    """Try every homomorphism ``G2 -> G1``; compare complete value tables."""
    d1 = f1.group.invariant_factors
    d2 = f2.group.invariant_factors
    order1 = int(np.prod(d1, dtype=object)) if d1 else 1
    order2 = int(np.prod(d2, dtype=object)) if d2 else 1
    if max(order1, order2) > cap:
        raise TooLarge(f"group order exceeds oracle cap {cap}")
    if order1 != order2:
        return False
    els1 = list(itertools.product(*(range(x) for x in d1)))
    els2 = list(itertools.product(*(range(x) for x in d2)))

    def table(form, d, els):
        out = {}
        for x in els:
            for y in els:
                s = sum(
                    form.gram[i][j].value * x[i] * y[j] for i in range(len(d)) for j in range(len(d))
                )
                out[x, y] = s - (s.numerator // s.denominator)
        return out

    t1 = table(f1, d1, els1)
    t2 = table(f2, d2, els2)
    choices = [
        [x for x in els1 if all((dj * xi) % di == 0 for xi, di in zip(x, d1))] for dj in d2
    ]
    count = 1
    for c in choices:
        count *= len(c)
    if count > HOM_CAP:
        raise TooLarge(f"{count} homomorphisms exceed oracle cap {HOM_CAP}")
    for imgs in itertools.product(*choices):
        image = {
            y: tuple(sum(img[i] * yj for img, yj in zip(imgs, y)) % di for i, di in enumerate(d1))
            for y in els2
        }
        if len(set(image.values())) != order1:
            continue
        if all(t1[image[x], image[y]] == t2[x, y] for x in els2 for y in els2):
            return True
    return False
