"""Acceptance criteria.  Every check is exact; runtimes are wall-clock limits.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line
per criterion.
"""

import itertools
import random
import time
from fractions import Fraction
from math import gcd

import pytest

from torsionlink.crosscheck import check_nonsingular, check_oracle, check_presentation, check_shifts
from torsionlink.errors import NotAntiSymplectic
from torsionlink.exactalg import IntMatrix, QmodZ, det, rat_inverse
from torsionlink.heegaard import (
    block_sum,
    compose_gluings,
    is_symplectic,
    lens_gluing,
    random_gluing,
    swap_gluing,
    symplectic_form,
    validate_gluing,
)
from torsionlink.isometry import isometric, lens_form, lens_homotopy_equivalent
from torsionlink.linking import homology, is_rational_homology_sphere, linking_form
from torsionlink.oracle import brute_linking_form

CORPUS_SIZE = 200


def report(n, name, ok, detail=""):
    print(f"[criterion {n}] {'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    assert ok, f"criterion {n} failed: {name} {detail}"


@pytest.fixture(scope="module")
def corpus():
    """Gluings i = 0, 1, ...: genus 1 + i % 4, i % 21 twists, seed i; first 200 QHS ones."""
    drawn, qhs = [], []
    for i in itertools.count():
        g = random_gluing(1 + i % 4, i % 21, i)
        drawn.append(g)
        if is_rational_homology_sphere(g):
            qhs.append(g)
            if len(qhs) == CORPUS_SIZE:
                break
    return drawn, qhs


@pytest.fixture(scope="module")
def forms(corpus):
    return [linking_form(g) for g in corpus[1]]


def test_1_lens_golden_values():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for p in range(2, 51):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            f = linking_form(lens_gluing(p, q))
            count += 1
            if f.group.invariant_factors != (p,) or f.gram != ((QmodZ(Fraction(p - q, p)),),):
                bad.append((p, q))
            assert f.gram[0][0].value == Fraction(p - q, p)
    elapsed = time.perf_counter() - t0
    report(1, "lens golden suite, 1 <= q < p <= 50", not bad and elapsed < 1.0, f"{count} pairs, {elapsed:.3f}s, bad={bad[:5]}")


def test_2_symmetry(corpus):
    t0 = time.perf_counter()
    bad = 0
    genera = set()
    for g in corpus[1]:
        genera.add(g.genus)
        f = linking_form(g)
        lam = rat_inverse(g.B) @ g.A
        k = f.group.rank
        if lam != lam.T or any(f.gram[i][j] != f.gram[j][i] for i in range(k) for j in range(k)):
            bad += 1
    elapsed = time.perf_counter() - t0
    assert genera == {1, 2, 3, 4}
    report(2, "gram and B^-1 A exactly symmetric on 200 QHS gluings", bad == 0 and elapsed < 10.0, f"{elapsed:.2f}s")


def test_3_well_definedness(corpus, forms):
    for i, (g, f) in enumerate(zip(corpus[1], forms)):
        check_shifts(g, f, trials=50, seed=i)
    report(3, "50 representative shifts per instance leave values unchanged", True, f"{len(forms)} instances")


def test_4_presentation(corpus):
    n_qhs = 0
    for g in corpus[0]:
        pres = homology(g)
        check_presentation(g, pres)
        if det(g.B) != 0:
            n_qhs += 1
            assert pres.free_rank == 0 and pres.group.order == abs(det(g.B))
        else:
            assert pres.free_rank > 0
    report(4, "|H_1| = |det B|, U B^T V = D, unimodular transforms, divisibility", True, f"{len(corpus[0])} instances, {n_qhs} QHS")


def test_5_nonsingularity(forms):
    t0 = time.perf_counter()
    checked = sum(1 for f in forms if check_nonsingular(f, cap=10_000))
    elapsed = time.perf_counter() - t0
    assert checked > 0
    report(5, "linking form non-singular (|det B| <= 10^4)", elapsed < 60.0, f"{checked} checked, {elapsed:.2f}s")


def test_6_oracle_equivalence(corpus, forms):
    checked = 0
    for g, f in zip(corpus[1], forms):
        if f.group.order <= 2000:
            check_oracle(g, f, brute_linking_form(g))
            checked += 1
    assert checked > 0
    report(6, "Smith gram matches brute-force table (|det B| <= 2000)", True, f"{checked} instances")


def _unit_solution(p, q1, q2, signs):
    return any(
        (s * q2 * u * u - q1) % p == 0 for u in range(1, p) if gcd(u, p) == 1 for s in signs
    )


def test_7_lens_homotopy_classification():
    t0 = time.perf_counter()
    mismatch_class, mismatch_iso = [], []
    count = 0
    for p in range(2, 31):
        qs = [q for q in range(1, p) if gcd(p, q) == 1]
        for q1, q2 in itertools.product(qs, repeat=2):
            count += 1
            if lens_homotopy_equivalent(p, q1, q2) != _unit_solution(p, q1, q2, (1, -1)):
                mismatch_class.append((p, q1, q2))
            # oriented isometry of the forms -q1/p, -q2/p: u^2 q1 = q2, equivalently q2 u'^2 = q1
            oriented = isometric(lens_form(p, q1), lens_form(p, q2)) is not None
            if oriented != _unit_solution(p, q1, q2, (1,)):
                mismatch_iso.append((p, q1, q2))
    elapsed = time.perf_counter() - t0
    assert lens_homotopy_equivalent(7, 1, 2) and not lens_homotopy_equivalent(5, 1, 2)
    ok = not mismatch_class and not mismatch_iso and elapsed < 30.0
    report(
        7,
        "lens classification: +-q2 u^2 = q1 (homotopy), q2 u^2 = q1 (oriented isometry)",
        ok,
        f"{count} triples, {elapsed:.2f}s, mismatches={mismatch_class[:3]}{mismatch_iso[:3]}",
    )


def test_8_gluing_validation(corpus):
    j_cache = {}

    def anti(m):
        g = m.rows // 2
        j = j_cache.setdefault(g, symplectic_form(g))
        return m.T @ j @ m == -j

    produced = []
    produced += [lens_gluing(p, q) for p in range(1, 51) for q in range(1, 51) if gcd(p, q) == 1]
    produced += corpus[0]
    pieces = [swap_gluing(), lens_gluing(3, 1), lens_gluing(5, 2), random_gluing(2, 7, 3)]
    produced += [block_sum(a, b) for a in pieces for b in pieces]
    for i in range(60):
        g = random_gluing(1 + i % 3, 5, i)
        s = swap_gluing(g.genus).matrix @ random_gluing(g.genus, 9, 1000 + i).matrix
        assert is_symplectic(s)
        produced.append(compose_gluings(g, s))
    accepted = sum(1 for g in produced if anti(g.matrix) and validate_gluing(g.matrix) == g)

    rng = random.Random(8)
    rejected = perturbations = 0
    for i in range(200):
        m = random_gluing(1 + i % 4, 8, i).matrix.tolist()
        a, b = rng.randrange(len(m)), rng.randrange(len(m))
        m[a][b] += rng.choice([-3, -2, -1, 1, 2, 3])
        m = IntMatrix(m)
        if anti(m) or is_symplectic(m):
            continue
        perturbations += 1
        try:
            validate_gluing(m)
        except NotAntiSymplectic:
            rejected += 1
    identity_rejected = all(_rejects(IntMatrix.identity(2 * g)) for g in range(1, 5))
    ok = accepted == len(produced) and rejected == perturbations > 150 and identity_rejected
    report(8, "all constructed gluings validate; identity and perturbations rejected", ok,
           f"{accepted}/{len(produced)} accepted, {rejected}/{perturbations} perturbations rejected")


def _rejects(m):
    try:
        validate_gluing(m)
    except NotAntiSymplectic:
        return True
    return False
