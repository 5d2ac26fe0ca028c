"""Heegaard gluing matrices.

A gluing is the 2g x 2g integer matrix ``R = [[A, B], [C, D]]`` by which an
orientation-reversing surface diffeomorphism acts on ``H_1`` of the genus-g
surface, in a symplectic basis ``a_1..a_g, b_1..b_g`` whose a-curves bound
in the first handlebody.  Orientation reversal shows up homologically as

    R^T J R = -J,   J = [[0, I], [-I, 0]],

and every :class:`Gluing` is checked against it on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import GenusMismatch, NotAntiSymplectic, NotCoprime, NotSymplectic, OddDimension
from .exactalg import IntMatrix, block_diag, hstack, vstack

_LCG_MUL = 6364136223846793005
_LCG_INC = 1442695040888963407
_MASK64 = (1 << 64) - 1


def symplectic_form(genus: int) -> IntMatrix:
    """The intersection matrix ``[[0, I], [-I, 0]]`` of the genus-g surface."""
    g = genus
    return IntMatrix(
        [[1 if j == i + g else -1 if i == j + g else 0 for j in range(2 * g)] for i in range(2 * g)],
        shape=(2 * g, 2 * g),
    )


def _relation(m: IntMatrix) -> str:
    n = m.rows
    j = symplectic_form(n // 2)
    form = m.T @ j @ m
    if form == -j:
        return "anti-symplectic"
    if form == j:
        return "symplectic"
    return "neither"


def is_symplectic(m: IntMatrix) -> bool:
    return m.is_square and m.rows % 2 == 0 and _relation(m) == "symplectic"


@dataclass(frozen=True)
class Gluing:
    """A validated gluing matrix.  Blocks are views onto ``matrix``."""

    matrix: IntMatrix

    def __post_init__(self):
        m = self.matrix
        if not m.is_square or m.rows % 2:
            raise OddDimension(f"gluing matrix must be square of even size, got {m.rows}x{m.cols}")
        if m.rows == 0:
            raise OddDimension("genus must be positive")
        rel = _relation(m)
        if rel != "anti-symplectic":
            raise NotAntiSymplectic(f"R^T J R != -J (matrix is {rel})", relation=rel)

    @property
    def genus(self) -> int:
        return self.matrix.rows // 2

    def _block(self, r, c):
        g = self.genus
        return self.matrix.submatrix(r * g, (r + 1) * g, c * g, (c + 1) * g)

    @property
    def A(self) -> IntMatrix:
        return self._block(0, 0)

    @property
    def B(self) -> IntMatrix:
        return self._block(0, 1)

    @property
    def C(self) -> IntMatrix:
        return self._block(1, 0)

    @property
    def D(self) -> IntMatrix:
        return self._block(1, 1)

    @classmethod
    def from_blocks(cls, A, B, C, D) -> "Gluing":
        return cls(vstack(hstack(A, B), hstack(C, D)))


@dataclass(frozen=True)
class LensParams:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise NotCoprime(f"p and q must be positive, got p={self.p}, q={self.q}")
        if gcd(self.p, self.q) != 1:
            raise NotCoprime(f"p and q must be coprime, got p={self.p}, q={self.q}")


def validate_gluing(m: IntMatrix) -> Gluing:
    return Gluing(m)


def swap_gluing(genus: int = 1) -> Gluing:
    """``[[0, I], [I, 0]]``: exchanges a- and b-curves, giving S^3."""
    if genus < 1:
        raise OddDimension("genus must be positive")
    g = genus
    return Gluing(
        IntMatrix(
            [[1 if abs(i - j) == g else 0 for j in range(2 * g)] for i in range(2 * g)],
            shape=(2 * g, 2 * g),
        )
    )


def lens_gluing(p: int, q: int | None = None) -> Gluing:
    """Genus-1 gluing ``[[q, p], [s, r]]`` with ``qr - ps = -1`` for L(p, q).

    ``s`` is the least positive integer with ``ps = 1 (mod q)`` and
    ``r = (ps - 1) / q``, so ``r >= 0``.

    >>> lens_gluing(7, 1).matrix
    IntMatrix([[1, 7], [1, 6]])
    """
    params = p if isinstance(p, LensParams) else LensParams(p, q)
    p, q = params.p, params.q
    s = pow(p, -1, q) if q > 1 else 1
    r = (p * s - 1) // q
    assert q * r - p * s == -1
    return Gluing(IntMatrix([[q, p], [s, r]]))


def compose_gluings(g1: Gluing, s: IntMatrix) -> Gluing:
    """Precompose a gluing with a symplectic automorphism: ``R @ S``."""
    if s.shape != g1.matrix.shape:
        raise GenusMismatch(f"{s.rows}x{s.cols} matrix cannot act on a genus-{g1.genus} gluing")
    if not is_symplectic(s):
        raise NotSymplectic("S^T J S != J")
    return Gluing(g1.matrix @ s)


def block_sum(g1: Gluing, g2: Gluing) -> Gluing:
    """Gluing of the connected sum: each of A, B, C, D is block-diagonal."""
    return Gluing.from_blocks(
        block_diag(g1.A, g2.A),
        block_diag(g1.B, g2.B),
        block_diag(g1.C, g2.C),
        block_diag(g1.D, g2.D),
    )


# ---------------------------------------------------------------------------
# Random gluings from transvections
# ---------------------------------------------------------------------------


class LCG64:
    """64-bit linear congruential generator; draws use the high 32 bits."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next32(self) -> int:
        self.state = (self.state * _LCG_MUL + _LCG_INC) & _MASK64
        return self.state >> 32

    def below(self, n: int) -> int:
        return self.next32() % n


def transvection_vectors(genus: int) -> list[tuple[int, ...]]:
    """Twist alphabet: ``a_i``, then ``b_i``, then ``a_i + b_j`` row-major."""
    g = genus
    out = []
    for i in range(2 * g):
        out.append(tuple(int(k == i) for k in range(2 * g)))
    for i in range(g):
        for j in range(g):
            out.append(tuple(int(k == i or k == g + j) for k in range(2 * g)))
    return out


def transvection(v) -> IntMatrix:
    """Matrix of ``x -> x + <x, v> v`` where ``<x, y> = x^T J y``."""
    n = len(v)
    j = symplectic_form(n // 2)
    jv = j.apply(list(v))  # <x, v> = sum_k x_k (Jv)_k
    return IntMatrix(
        [[int(r == c) + v[r] * jv[c] for c in range(n)] for r in range(n)], shape=(n, n)
    )


def random_gluing(genus: int, num_twists: int, seed: int) -> Gluing:
    """Swap gluing composed with ``num_twists`` seeded random transvections."""
    if genus < 1:
        raise OddDimension("genus must be positive")
    rng = LCG64(seed)
    alphabet = [transvection(v) for v in transvection_vectors(genus)]
    r = swap_gluing(genus).matrix
    for _ in range(num_twists):
        r = r @ alphabet[rng.below(len(alphabet))]
    return Gluing(r)
