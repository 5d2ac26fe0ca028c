"""Isometry of linking forms.

A witness is an integer matrix ``W`` whose column ``j`` is the image of the
j-th generator under a group automorphism, chosen so that

    W^T G1 W = G2   (entrywise in Q/Z),

that is ``f1(Wx, Wy) = f2(x, y)``.  On cyclic groups ``Z/n`` every
automorphism is multiplication by a unit ``u`` and the condition reads
``u^2 a = b (mod n)`` for grams ``[a/n]`` and ``[b/n]``.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .errors import NotCoprime, SearchCapExceeded
from .exactalg import IntMatrix, hstack, smith_normal_form
from .heegaard import LensParams, lens_gluing
from .linking import LinkingForm, evaluate, linking_form

DEFAULT_CAP = 5000

__all__ = [
    "DEFAULT_CAP",
    "isometric",
    "cyclic_isometry",
    "enumerate_isometry",
    "transports",
    "lens_homotopy_equivalent",
]


def transports(w: IntMatrix, f1: LinkingForm, f2: LinkingForm) -> bool:
    """True when ``W^T G1 W == G2`` in Q/Z."""
    k = f2.group.rank
    cols = [w.col(j) for j in range(k)]
    return all(evaluate(f1, cols[i], cols[j]) == f2.gram[i][j] for i in range(k) for j in range(k))


def _is_automorphism(w: IntMatrix, d) -> bool:
    # W induces an endomorphism of Z^k / diag(d); it is onto iff coker [W | diag(d)] is trivial.
    k = len(d)
    for j in range(k):
        for i in range(k):
            if (d[j] * w[i, j]) % d[i]:
                return False
    snf = smith_normal_form(hstack(w, IntMatrix.diag(d)))
    return all(x == 1 for x in snf.diagonal())


def cyclic_isometry(f1: LinkingForm, f2: LinkingForm):
    """Least unit ``u`` with ``u^2 a = b (mod n)``, or ``None``."""
    (n,) = f1.group.invariant_factors
    a = (f1.gram[0][0].value * n).numerator
    b = (f2.gram[0][0].value * n).numerator
    for u in range(1, n):
        if gcd(u, n) == 1 and (u * u * a - b) % n == 0:
            return u
    return None


def _numerators(form: LinkingForm, e: int):
    return [[(x.value * e).numerator for x in r] for r in form.gram]


@lru_cache(maxsize=128)
def _candidates(form: LinkingForm):
    """Elements of ``form``'s group bucketed by order, then by self-pairing numerator."""
    grp = form.group
    d = grp.invariant_factors
    e = d[-1]
    g = _numerators(form, e)
    k = grp.rank
    buckets = {dj: {} for dj in set(d)}
    for x in grp.elements():
        order = grp.element_order(x)
        if order in buckets:
            val = sum(x[a] * g[a][b] * x[b] for a in range(k) for b in range(k)) % e
            buckets[order].setdefault(val, []).append(x)
    return e, g, buckets


def enumerate_isometry(f1: LinkingForm, f2: LinkingForm):
    """Backtracking search for a witness, generator by generator.

    Candidate images of generator ``j`` are the elements of exact order
    ``d_j`` whose pairings with themselves and with the images already placed
    reproduce row ``j`` of ``G2``.  Candidates are tried in lexicographic order.
    """
    d = f1.group.invariant_factors
    k = len(d)
    e, g1, buckets = _candidates(f1)
    g2 = _numerators(f2, e)

    def pair(x, y):
        return sum(x[a] * g1[a][b] * y[b] for a in range(k) for b in range(k)) % e

    images = []

    def extend(j):
        if j == k:
            w = IntMatrix([[images[c][r] for c in range(k)] for r in range(k)], shape=(k, k))
            return w if _is_automorphism(w, d) else None
        for x in buckets[d[j]].get(g2[j][j], ()):
            if any(pair(images[i], x) != g2[i][j] for i in range(j)):
                continue
            images.append(x)
            found = extend(j + 1)
            if found is not None:
                return found
            images.pop()
        return None

    return extend(0)


def isometric(f1: LinkingForm, f2: LinkingForm, cap: int = DEFAULT_CAP) -> IntMatrix | None:
    """Return a witness ``W`` with ``W^T G1 W = G2``, or ``None``.

    Cyclic groups are decided by the unit-square test regardless of ``cap``;
    other groups raise :class:`SearchCapExceeded` when their order exceeds it.
    """
    if f1.group != f2.group:
        return None
    k = f1.group.rank
    if k == 0:
        return IntMatrix.zeros(0)
    if k == 1:
        u = cyclic_isometry(f1, f2)
        return None if u is None else IntMatrix([[u]])
    if f1.group.order > cap:
        raise SearchCapExceeded(cap, f1.group.order)
    return enumerate_isometry(f1, f2)


def lens_form(p: int, q: int) -> LinkingForm:
    return linking_form(lens_gluing(LensParams(p, q)))


def lens_homotopy_equivalent(p: int, q1: int, q2: int) -> bool:
    """Homotopy classification of L(p, q1) and L(p, q2) through linking forms.

    A homotopy equivalence need not preserve orientation, and reversing the
    orientation of a lens space negates its linking form, so the test is
    whether the form of L(p, q1) is isometric to plus or minus that of
    L(p, q2).
    """
    for q in (q1, q2):
        if p < 1 or q < 1 or gcd(p, q) != 1:
            raise NotCoprime(f"p and q must be coprime, got p={p}, q={q}")
    f1, f2 = lens_form(p, q1), lens_form(p, q2)
    return isometric(f1, f2) is not None or isometric(f1, f2.negated()) is not None


def witness_to_json(w):
    if w is None:
        return None
    return [[str(x) for x in r] for r in w.entries]
