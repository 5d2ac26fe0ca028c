"""Consistency checks tying the fast pipeline to its defining identities and
to the brute-force oracle.  Each check raises :class:`OracleMismatch` with a
description on failure and returns ``None`` on success.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import OracleMismatch
from .exactalg import det, is_smith_form, rat_inverse
from .heegaard import Gluing
from .linking import HomologyPresentation, LinkingForm, evaluate
from .oracle import LinkingTable

NONSINGULAR_CAP = 10_000


def _fail(msg):
    raise OracleMismatch(msg)


def check_presentation(g: Gluing, pres: HomologyPresentation) -> None:
    snf = pres.snf
    bt = g.B.T
    if snf.U @ bt @ snf.V != snf.D:
        _fail("U B^T V != D")
    if abs(det(snf.U)) != 1 or abs(det(snf.V)) != 1:
        _fail("Smith transforms are not unimodular")
    if not is_smith_form(snf.D):
        _fail("D is not in Smith normal form")
    d = det(g.B)
    if d and pres.group.order != abs(d):
        _fail(f"|H_1| = {pres.group.order} but |det B| = {abs(d)}")


def check_symmetry(g: Gluing, form: LinkingForm) -> None:
    lam = rat_inverse(g.B) @ g.A
    if lam != lam.T:
        _fail("B^-1 A is not symmetric")
    if g.A @ g.B.T != g.B @ g.A.T:
        _fail("A B^T != B A^T")
    k = form.group.rank
    if any(form.gram[i][j] != form.gram[j][i] for i in range(k) for j in range(k)):
        _fail("gram is not symmetric")


def check_shifts(g: Gluing, form: LinkingForm, trials: int = 50, seed: int = 0) -> None:
    """``(v + B^T u)`` and ``(w + B^T t)`` pair like ``v`` and ``w``."""
    rng = random.Random(seed)
    gg = g.genus
    bt = g.B.T
    for _ in range(trials):
        v = [rng.randint(-9, 9) for _ in range(gg)]
        w = [rng.randint(-9, 9) for _ in range(gg)]
        u = [rng.randint(-9, 9) for _ in range(gg)]
        t = [rng.randint(-9, 9) for _ in range(gg)]
        base = form.value_on_presentation(v, w)
        v2 = [a + b for a, b in zip(v, bt.apply(u))]
        w2 = [a + b for a, b in zip(w, bt.apply(t))]
        if form.value_on_presentation(v2, w) != base or form.value_on_presentation(v, w2) != base:
            _fail(f"value changed under representative shift at v={v}, w={w}")
        pres = form.presentation
        if pres is not None and evaluate(form, pres.to_group(v2), pres.to_group(w2)) != base:
            _fail(f"Smith-coordinate value disagrees with a-coordinate value at v={v}, w={w}")


def _gram_numerators(form: LinkingForm):
    d = form.group.invariant_factors
    e = d[-1] if d else 1
    g = np.array(
        [[int(x.value * e) for x in r] for r in form.gram], dtype=np.int64
    ).reshape(len(d), len(d))
    return g, e


def check_nonsingular(form: LinkingForm, cap: int = NONSINGULAR_CAP) -> bool:
    """Every nonzero element pairs nontrivially with some generator.

    Returns ``False`` (check skipped) when the group order exceeds ``cap``.
    """
    grp = form.group
    if grp.order > cap:
        return False
    if grp.rank == 0:
        return True
    g, e = _gram_numerators(form)
    els = np.array(list(grp.elements()), dtype=np.int64)
    pairing = (els @ g) % e
    dead = ~pairing.any(axis=1)
    dead[0] = False  # the zero element
    if dead.any():
        _fail(f"element {tuple(els[dead.argmax()])} pairs trivially with everything")
    return True


def check_oracle(g: Gluing, form: LinkingForm, table: LinkingTable) -> None:
    """The Smith-coordinate gram reproduces the oracle's full value table."""
    pres = form.presentation
    coords = [pres.to_group(x) for x in table.elements]
    if len(set(coords)) != len(coords) or len(coords) != form.group.order:
        _fail("basis change is not a bijection from cosets to the group")
    n = table.denominator
    gram, e = _gram_numerators(form)
    k = form.group.rank
    if k == 0:
        if table.numerators.any():
            _fail("trivial group with nonzero linking values")
        return
    s = np.array(coords, dtype=np.int64).reshape(len(coords), k)
    snf_vals = ((s @ gram) % e @ s.T) % e
    if not np.array_equal((snf_vals * (n // e)) % n, table.numerators):
        _fail("Smith gram disagrees with the oracle table")


def check_all(g: Gluing, form: LinkingForm | None, pres: HomologyPresentation, oracle_cap=2000):
    """Run every applicable check; return a dict of check name -> status."""
    status = {}
    check_presentation(g, pres)
    status["presentation"] = "pass"
    if form is None:
        return status
    check_symmetry(g, form)
    status["symmetry"] = "pass"
    check_shifts(g, form)
    status["shifts"] = "pass"
    status["nonsingular"] = "pass" if check_nonsingular(form) else "skipped"
    if form.group.order <= oracle_cap:
        check_oracle(g, form, LinkingTable(g, cap=oracle_cap))
        status["oracle"] = "pass"
    else:
        status["oracle"] = "skipped"
    return status
