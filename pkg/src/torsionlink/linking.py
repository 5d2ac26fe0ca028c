"""First homology and torsion linking form of a Heegaard-glued 3-manifold.

With the gluing written in blocks ``[[A, B], [C, D]]``, the classes of the
a-curves generate ``H_1(M)`` and ``B^T`` presents it.  When ``det B != 0`` the
linking form on ``Z^g / B^T Z^g`` is

    (v, w) -> -v^T B^{-1} A w   (mod 1).

The form is reported twice: as the rational matrix ``-B^{-1} A`` acting on
a-coordinates, and as a Gram matrix on the Smith-normal-form generators of
the group, which is what makes forms from different gluings comparable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

from .errors import DimensionMismatch, NotRationalHomologySphere, TorsionLinkError
from .exactalg import (
    IntMatrix,
    QmodZ,
    RatMatrix,
    SNFResult,
    block_diag,
    det,
    rat_inverse,
    smith_normal_form,
    unimodular_inverse,
)
from .heegaard import Gluing

__all__ = [
    "FiniteAbelianGroup",
    "HomologyPresentation",
    "LinkingForm",
    "homology",
    "is_rational_homology_sphere",
    "linking_form",
    "evaluate",
    "orthogonal_sum",
    "form_to_json",
    "form_from_json",
]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ... | d_k`` and every ``d_i >= 2``."""

    invariant_factors: tuple = ()

    def __post_init__(self):
        d = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", d)
        if any(x < 2 for x in d):
            raise TorsionLinkError(f"invariant factors must be >= 2, got {d}")
        if any(b % a for a, b in zip(d, d[1:])):
            raise TorsionLinkError(f"invariant factors must form a divisibility chain, got {d}")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def reduce(self, v) -> tuple:
        if len(v) != self.rank:
            raise DimensionMismatch(f"expected {self.rank} coordinates, got {len(v)}")
        return tuple(x % d for x, d in zip(v, self.invariant_factors))

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def element_order(self, v) -> int:
        n = 1
        for x, d in zip(v, self.invariant_factors):
            n = _lcm(n, d // gcd(x, d))
        return n

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class HomologyPresentation:
    """Cokernel of an integer presentation matrix, normalized by Smith form.

    ``generator_map`` is ``U`` from ``U P V = D``: it sends a-coordinates to
    Smith coordinates.  Column ``i`` of ``generators`` holds the a-coordinates
    of the i-th torsion generator.  Smith indices with ``d = 1`` are dropped;
    zero diagonal entries (and missing rows) count toward ``free_rank``.
    """

    group: FiniteAbelianGroup
    free_rank: int
    presentation: IntMatrix
    generator_map: IntMatrix
    generators: IntMatrix
    torsion_indices: tuple
    snf: SNFResult = field(repr=False, compare=False)

    def to_group(self, v) -> tuple:
        """Reduce an a-coordinate vector to its torsion coordinates."""
        u = self.generator_map.apply(list(v))
        return self.group.reduce([u[i] for i in self.torsion_indices])


def present(presentation: IntMatrix) -> HomologyPresentation:
    """Smith-normalize the abelian group ``Z^n / P Z^m``."""
    snf = smith_normal_form(presentation)
    n = presentation.rows
    diag = [snf.D[i, i] if i < presentation.cols else 0 for i in range(n)]
    torsion = tuple(i for i, d in enumerate(diag) if d > 1)
    free_rank = sum(1 for d in diag if d == 0)
    u_inv = unimodular_inverse(snf.U)
    gens = IntMatrix([[u_inv[r, i] for i in torsion] for r in range(n)], shape=(n, len(torsion)))
    return HomologyPresentation(
        group=FiniteAbelianGroup(tuple(diag[i] for i in torsion)),
        free_rank=free_rank,
        presentation=presentation,
        generator_map=snf.U,
        generators=gens,
        torsion_indices=torsion,
        snf=snf,
    )


def homology(g: Gluing) -> HomologyPresentation:
    """``H_1`` of the glued manifold, presented by ``B^T`` on the a-curves."""
    return present(g.B.T)


def is_rational_homology_sphere(g: Gluing) -> bool:
    return det(g.B) != 0


@dataclass(frozen=True)
class LinkingForm:
    """A Q/Z-valued bilinear form on a finite abelian group, by Gram matrix.

    ``gram[i][j]`` pairs the i-th and j-th Smith generators.  ``matrix`` and
    ``presentation`` are set when the form came from a presentation, and
    carry the a-coordinate description; they take no part in equality.
    """

    group: FiniteAbelianGroup
    gram: tuple
    matrix: RatMatrix | None = field(default=None, compare=False, repr=False)
    presentation: HomologyPresentation | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        gram = tuple(tuple(x if isinstance(x, QmodZ) else QmodZ(x) for x in r) for r in self.gram)
        object.__setattr__(self, "gram", gram)
        k = self.group.rank
        if len(gram) != k or any(len(r) != k for r in gram):
            raise DimensionMismatch(f"gram must be {k}x{k} for group {self.group}")
        d = self.group.invariant_factors
        for i in range(k):
            for j in range(k):
                if gram[i][j] != gram[j][i]:
                    raise TorsionLinkError(f"gram is not symmetric at ({i}, {j})")
                if d[i] * gram[i][j] or d[j] * gram[i][j]:
                    raise TorsionLinkError(
                        f"gram[{i}][{j}] = {gram[i][j]} is not killed by the generator orders"
                    )

    def __call__(self, v, w) -> QmodZ:
        return evaluate(self, v, w)

    def value_on_presentation(self, v, w) -> QmodZ:
        """The form on raw a-coordinates, ``v^T matrix w`` mod 1."""
        if self.matrix is None:
            raise TorsionLinkError("form carries no presentation-level matrix")
        mw = self.matrix.apply(list(w))
        return QmodZ(sum(Fraction(a) * b for a, b in zip(v, mw)))

    def negated(self) -> "LinkingForm":
        return LinkingForm(
            self.group,
            tuple(tuple(-x for x in r) for r in self.gram),
            matrix=None if self.matrix is None else -self.matrix,
            presentation=self.presentation,
        )

    def table(self):
        """Values on every pair of group elements, as a dict."""
        els = list(self.group.elements())
        return {(x, y): evaluate(self, x, y) for x in els for y in els}

    def __str__(self):
        return f"{self.group}: " + str([[str(x) for x in r] for r in self.gram])


def form_on_presentation(presentation: IntMatrix, matrix: RatMatrix) -> LinkingForm:
    """Restrict the bilinear form ``matrix`` (mod 1) to Smith generators of ``coker P``."""
    pres = present(presentation)
    if pres.free_rank:
        raise NotRationalHomologySphere("presentation has a free part")
    gens = [pres.generators.col(i) for i in range(pres.generators.cols)]
    images = [matrix.apply(list(u)) for u in gens]
    gram = tuple(
        tuple(QmodZ(sum(a * b for a, b in zip(ui, mu))) for mu in images) for ui in gens
    )
    return LinkingForm(pres.group, gram, matrix=matrix, presentation=pres)


def linking_form(g: Gluing) -> LinkingForm:
    """Linking form ``(v, w) -> -v^T B^{-1} A w`` on ``Z^g / B^T Z^g``.

    >>> from torsionlink.heegaard import lens_gluing
    >>> str(linking_form(lens_gluing(7, 1)))
    "Z/7: [['6/7']]"
    """
    if not is_rational_homology_sphere(g):
        raise NotRationalHomologySphere("det B = 0: the manifold is not a rational homology sphere")
    lam = -(rat_inverse(g.B) @ g.A)
    # B^{-1} A is symmetric because A B^T = B A^T.
    assert lam == lam.T, "B^-1 A is not symmetric; gluing invariant violated"
    return form_on_presentation(g.B.T, lam)


def evaluate(form: LinkingForm, v, w) -> QmodZ:
    k = form.group.rank
    if len(v) != k or len(w) != k:
        raise DimensionMismatch(f"vectors must have length {k}, got {len(v)} and {len(w)}")
    total = QmodZ(0)
    for i, vi in enumerate(v):
        if not vi:
            continue
        row = form.gram[i]
        for j, wj in enumerate(w):
            if wj:
                total = total + row[j] * (vi * wj)
    return total


def orthogonal_sum(f1: LinkingForm, f2: LinkingForm) -> LinkingForm:
    """``f1 + f2`` on ``G1 + G2``, renormalized to invariant factors."""
    d = f1.group.invariant_factors + f2.group.invariant_factors
    if not d:
        return LinkingForm(FiniteAbelianGroup(()), ())
    gram = block_diag(
        RatMatrix([[x.value for x in r] for r in f1.gram], shape=(f1.group.rank,) * 2),
        RatMatrix([[x.value for x in r] for r in f2.gram], shape=(f2.group.rank,) * 2),
    )
    return form_on_presentation(IntMatrix.diag(d), gram)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def group_to_json(pres: HomologyPresentation) -> dict:
    return {
        "invariant_factors": [str(d) for d in pres.group.invariant_factors],
        "free_rank": pres.free_rank,
    }


def form_to_json(form: LinkingForm) -> dict:
    return {
        "invariant_factors": [str(d) for d in form.group.invariant_factors],
        "gram": [[str(x) for x in r] for r in form.gram],
    }


def form_from_json(obj) -> LinkingForm:
    if not isinstance(obj, dict) or "invariant_factors" not in obj or "gram" not in obj:
        raise ValueError("form JSON needs 'invariant_factors' and 'gram'")
    try:
        factors = tuple(int(str(x)) for x in obj["invariant_factors"])
        gram = tuple(tuple(QmodZ.parse(str(x)) for x in r) for r in obj["gram"])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed form JSON: {exc}") from exc
    return LinkingForm(FiniteAbelianGroup(factors), gram)
