import itertools
from fractions import Fraction
from math import gcd

import pytest

from torsionlink.errors import NotCoprime, SearchCapExceeded
from torsionlink.exactalg import IntMatrix, QmodZ
from torsionlink.heegaard import block_sum, lens_gluing, random_gluing
from torsionlink.isometry import (
    cyclic_isometry,
    enumerate_isometry,
    isometric,
    lens_form,
    lens_homotopy_equivalent,
    transports,
)
from torsionlink.linking import FiniteAbelianGroup, LinkingForm, is_rational_homology_sphere, linking_form, orthogonal_sum
from torsionlink.oracle import brute_isometry


def unit_square_oracle(p, a, b):
    """Units u mod p with u^2 a = b (mod p), by exhaustive search."""
    return [u for u in range(1, p) if gcd(u, p) == 1 and (u * u * a - b) % p == 0]


def test_isometric_examples():
    f71, f72 = lens_form(7, 1), lens_form(7, 2)
    # grams [-1/7] and [-2/7]: u^2 (-1) = -2 (mod 7)
    assert unit_square_oracle(7, -1, -2) == [3, 4]
    assert isometric(f71, f72) == IntMatrix([[3]])
    assert unit_square_oracle(5, -1, -2) == []
    assert isometric(lens_form(5, 1), lens_form(5, 2)) is None
    f = linking_form(block_sum(lens_gluing(2, 1), lens_gluing(4, 1)))
    assert isometric(f, f) == IntMatrix.identity(2)


def test_different_groups_are_not_isometric():
    assert isometric(lens_form(6, 1), lens_form(7, 1)) is None
    f = linking_form(block_sum(lens_gluing(2, 1), lens_gluing(3, 1)))
    g = linking_form(block_sum(lens_gluing(2, 1), lens_gluing(2, 1)))
    assert isometric(f, g) is None


def test_witness_transports_gram():
    for p in range(2, 30):
        for q1, q2 in itertools.product(range(1, p), repeat=2):
            if gcd(p, q1) != 1 or gcd(p, q2) != 1:
                continue
            f1, f2 = lens_form(p, q1), lens_form(p, q2)
            w = isometric(f1, f2)
            if w is not None:
                assert transports(w, f1, f2)


def test_fast_path_matches_enumeration():
    for p in range(2, 101):
        qs = [q for q in range(1, p) if gcd(p, q) == 1]
        forms = {q: lens_form(p, q) for q in qs}
        for q1 in qs:
            for q2 in qs:
                fast = cyclic_isometry(forms[q1], forms[q2])
                slow = enumerate_isometry(forms[q1], forms[q2])
                assert (fast is None) == (slow is None), (p, q1, q2)
                if slow is not None:
                    assert slow == IntMatrix([[fast]])


def _noncyclic_forms():
    out = []
    parts = [lens_gluing(2, 1), lens_gluing(4, 1), lens_gluing(4, 3), lens_gluing(3, 1), lens_gluing(3, 2), lens_gluing(8, 3)]
    for a, b in itertools.combinations_with_replacement(parts, 2):
        out.append(linking_form(block_sum(a, b)))
    for seed in range(200):
        g = random_gluing(2 + seed % 2, 10, seed)
        if is_rational_homology_sphere(g):
            f = linking_form(g)
            if f.group.rank >= 2 and f.group.order <= 64:
                out.append(f)
    return out


def test_search_agrees_with_brute_force_on_noncyclic_groups():
    forms = _noncyclic_forms()
    assert len({f.group for f in forms}) >= 4
    checked = 0
    for f1, f2 in itertools.product(forms, repeat=2):
        if f1.group != f2.group:
            continue
        w = isometric(f1, f2)
        assert (w is not None) == brute_isometry(f1, f2)
        if w is not None:
            assert transports(w, f1, f2)
        checked += 1
    assert checked > 50


def test_reflexive_symmetric_transitive():
    forms = _noncyclic_forms()[:25] + [lens_form(7, q) for q in range(1, 7)]
    rel = {}
    for i, f in enumerate(forms):
        assert isometric(f, f) is not None
        for j, g in enumerate(forms):
            rel[i, j] = isometric(f, g) is not None
    n = len(forms)
    for i in range(n):
        for j in range(n):
            assert rel[i, j] == rel[j, i]
            for k in range(n):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k]


def test_search_cap():
    f = linking_form(block_sum(lens_gluing(8, 1), lens_gluing(8, 3)))
    with pytest.raises(SearchCapExceeded) as exc:
        isometric(f, f, cap=10)
    assert exc.value.cap == 10 and exc.value.order == 64
    # cyclic groups never hit the cap
    assert isometric(lens_form(97, 1), lens_form(97, 1), cap=10) is not None


def test_diagonal_versus_hyperbolic_on_klein_four():
    half = Fraction(1, 2)
    diag = orthogonal_sum(lens_form(2, 1), lens_form(2, 1))
    assert diag.gram == ((QmodZ(half), QmodZ(0)), (QmodZ(0), QmodZ(half)))
    hyper = LinkingForm(FiniteAbelianGroup((2, 2)), ((0, half), (half, 0)))
    # every element of the hyperbolic form pairs to 0 with itself, unlike (1, 0) in diag
    assert all(hyper(x, x) == QmodZ(0) for x in hyper.group.elements())
    assert isometric(diag, hyper) is None
    assert not brute_isometry(diag, hyper)
    assert isometric(hyper, hyper) is not None


def test_lens_homotopy_examples():
    assert lens_homotopy_equivalent(7, 1, 2)
    assert not lens_homotopy_equivalent(5, 1, 2)
    for p, q in [(9, 2), (11, 3), (12, 5)]:
        assert lens_homotopy_equivalent(p, q, q)
    with pytest.raises(NotCoprime):
        lens_homotopy_equivalent(4, 1, 2)


def test_orientation_reversal_matters_for_forms_only():
    # L(3,1) and L(3,2) are homotopy equivalent via an orientation-reversing map
    assert isometric(lens_form(3, 1), lens_form(3, 2)) is None
    assert lens_homotopy_equivalent(3, 1, 2)
    assert isometric(lens_form(3, 1), lens_form(3, 2).negated()) is not None
