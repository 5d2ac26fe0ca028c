"""Exact integer and rational linear algebra.

Python's ``int`` is the arbitrary-precision integer and
:class:`fractions.Fraction` the reduced rational; nothing in this module
ever touches floating point.

>>> m = IntMatrix([[2, 4], [6, 8]])
>>> smith_normal_form(m).diagonal()
(2, 4)
>>> det(IntMatrix([[3, 7], [1, 2]]))
-1
>>> QmodZ(Fraction(3, 4)) + QmodZ(Fraction(1, 2))
QmodZ(1/4)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import DimensionMismatch, SingularMatrix, TorsionLinkError

__all__ = [
    "QmodZ",
    "IntMatrix",
    "RatMatrix",
    "SNFResult",
    "qmodz_add",
    "mat_mul",
    "rat_inverse",
    "det",
    "smith_normal_form",
    "block_diag",
    "matrix_to_json",
    "matrix_from_json",
]


# ---------------------------------------------------------------------------
# Q/Z
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True, init=False, repr=False)
class QmodZ:
    """An element of Q/Z, stored as its representative in [0, 1)."""

    value: Fraction

    def __init__(self, value=0):
        value = Fraction(value)
        object.__setattr__(self, "value", value - floor(value))

    @classmethod
    def parse(cls, text: str) -> "QmodZ":
        return cls(Fraction(text.strip()))

    def __add__(self, other):
        if not isinstance(other, QmodZ):
            return NotImplemented
        return QmodZ(self.value + other.value)

    def __sub__(self, other):
        if not isinstance(other, QmodZ):
            return NotImplemented
        return QmodZ(self.value - other.value)

    def __neg__(self):
        return QmodZ(-self.value)

    def __mul__(self, n):
        if isinstance(n, bool) or not isinstance(n, int):
            return NotImplemented
        return QmodZ(self.value * n)

    __rmul__ = __mul__

    def __bool__(self):
        return self.value != 0

    def order(self) -> int:
        return self.value.denominator

    def __str__(self):
        return f"{self.value.numerator}/{self.value.denominator}"

    def __repr__(self):
        return f"QmodZ({self})"


def qmodz_add(a: QmodZ, b: QmodZ) -> QmodZ:
    return a + b


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------


class _Matrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data=(), shape=None):
        entries = tuple(tuple(self._coerce(x) for x in row) for row in data)
        if shape is None:
            shape = (len(entries), len(entries[0]) if entries else 0)
        rows, cols = shape
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatch(f"ragged or mis-shaped matrix data for shape {shape}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    @staticmethod
    def _coerce(x):
        raise NotImplementedError

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], shape=(rows, cols))

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], shape=(n, n))

    @classmethod
    def diag(cls, values):
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], shape=(n, n))

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def tolist(self):
        return [list(r) for r in self.entries]

    @property
    def T(self):
        return type(self)(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            shape=(self.cols, self.rows),
        )

    def submatrix(self, r0, r1, c0, c1):
        return type(self)([r[c0:c1] for r in self.entries[r0:r1]], shape=(r1 - r0, c1 - c0))

    def is_zero(self):
        return all(x == 0 for r in self.entries for x in r)

    def is_diagonal(self):
        return all(
            self.entries[i][j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def apply(self, v):
        """Matrix-vector product with a plain sequence."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return [sum(a * b for a, b in zip(r, v)) for r in self.entries]

    def _result_type(self, other):
        if isinstance(self, RatMatrix) or isinstance(other, RatMatrix):
            return RatMatrix
        return IntMatrix

    def __matmul__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        ocols = other.col
        cols = [ocols(j) for j in range(other.cols)]
        data = [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries]
        return self._result_type(other)(data, shape=(self.rows, other.cols))

    def _elementwise(self, other, op):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")
        data = [[op(a, b) for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        return self._result_type(other)(data, shape=self.shape)

    def __add__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self._elementwise(other, lambda a, b: a + b)

    def __sub__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self._elementwise(other, lambda a, b: a - b)

    def __neg__(self):
        return type(self)([[-x for x in r] for r in self.entries], shape=self.shape)

    def scale(self, c):
        cls = RatMatrix if isinstance(c, Fraction) else type(self)
        return cls([[c * x for x in r] for r in self.entries], shape=self.shape)

    def __eq__(self, other):
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"{type(self).__name__}({self.tolist()!r})"

    def __str__(self):
        cells = [[str(x) for x in r] for r in self.entries]
        if not cells or not cells[0]:
            return f"[{self.rows}x{self.cols} empty]"
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


class IntMatrix(_Matrix):
    """Immutable dense matrix of Python integers."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, bool):
            raise TypeError("booleans are not matrix entries")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise TypeError(f"non-integer entry {x!r}")


class RatMatrix(_Matrix):
    """Immutable dense matrix of reduced fractions."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, bool):
            raise TypeError("booleans are not matrix entries")
        return Fraction(x)

    def is_integral(self):
        return all(x.denominator == 1 for r in self.entries for x in r)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise TypeError("matrix has non-integral entries")
        return IntMatrix(self.entries, shape=self.shape)


def mat_mul(a: _Matrix, b: _Matrix) -> _Matrix:
    return a @ b


def block_diag(*blocks: _Matrix) -> _Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    cls = RatMatrix if any(isinstance(b, RatMatrix) for b in blocks) else IntMatrix
    data = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                data[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return cls(data, shape=(rows, cols))


def hstack(*blocks: _Matrix) -> _Matrix:
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise DimensionMismatch("hstack needs equal row counts")
    cls = RatMatrix if any(isinstance(b, RatMatrix) for b in blocks) else IntMatrix
    data = [sum((list(b.row(i)) for b in blocks), []) for i in range(rows)]
    return cls(data, shape=(rows, sum(b.cols for b in blocks)))


def vstack(*blocks: _Matrix) -> _Matrix:
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise DimensionMismatch("vstack needs equal column counts")
    cls = RatMatrix if any(isinstance(b, RatMatrix) for b in blocks) else IntMatrix
    data = [list(r) for b in blocks for r in b.entries]
    return cls(data, shape=(sum(b.rows for b in blocks), cols))


# ---------------------------------------------------------------------------
# Determinant and inverse
# ---------------------------------------------------------------------------


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise DimensionMismatch(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rat_inverse(m: _Matrix) -> RatMatrix:
    """Exact inverse over the rationals by Gauss-Jordan elimination."""
    if not m.is_square:
        raise DimensionMismatch(f"inverse of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.entries)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix has determinant 0")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return RatMatrix([r[n:] for r in a], shape=(n, n))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    Only ``D`` is canonical; the transforms depend on the elimination order.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self):
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]


def _add_row(a, src, dst, c):
    # row[dst] += c * row[src]
    rs, rd = a[src], a[dst]
    for k in range(len(rd)):
        rd[k] += c * rs[k]


def _add_col(a, src, dst, c):
    for r in a:
        r[dst] += c * r[src]


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Smith normal form with unimodular transforms.

    Row/column elimination that always pivots on the entry of least absolute
    value in the remaining block; a pivot that fails to divide some remaining
    entry is repaired immediately by folding that row into the pivot row.
    """
    nr, nc = m.shape
    a = m.tolist()
    u = IntMatrix.identity(nr).tolist()
    v = IntMatrix.identity(nc).tolist()

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    x = a[i][j]
                    if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            if i != t:
                _swap_rows(a, i, t)
                _swap_rows(u, i, t)
            if j != t:
                _swap_cols(a, j, t)
                _swap_cols(v, j, t)
            p = a[t][t]

            clean = True
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    _add_row(a, t, i, -q)
                    _add_row(u, t, i, -q)
                if a[i][t]:
                    clean = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    _add_col(a, t, j, -q)
                    _add_col(v, t, j, -q)
                if a[t][j]:
                    clean = False
            if not clean:
                continue

            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            _add_row(a, bad, t, 1)
            _add_row(u, bad, t, 1)

        if t < nr and t < nc and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SNFResult(
        U=IntMatrix(u, shape=(nr, nr)),
        D=IntMatrix(a, shape=(nr, nc)),
        V=IntMatrix(v, shape=(nc, nc)),
    )


def is_smith_form(d: IntMatrix) -> bool:
    if not d.is_diagonal():
        return False
    diag = [d[i, i] for i in range(min(d.shape))]
    if any(x < 0 for x in diag):
        return False
    for x, y in zip(diag, diag[1:]):
        if x == 0 and y != 0:
            return False
        if x != 0 and y % x:
            return False
    return True


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    d = det(m)
    if abs(d) != 1:
        raise TorsionLinkError(f"matrix is not unimodular (det {d})")
    return rat_inverse(m).to_int()


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def matrix_to_json(m: IntMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[str(x) for x in r] for r in m.entries],
    }


def _parse_int(x):
    if isinstance(x, bool):
        raise ValueError("boolean matrix entry")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x.strip())
    raise ValueError(f"matrix entry {x!r} is not a decimal string")


def matrix_from_json(obj) -> IntMatrix:
    """Parse ``{"rows": n, "cols": m, "entries": [[...], ...]}``.

    Raises ``ValueError`` on any malformation.
    """
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ValueError("matrix JSON must be an object with an 'entries' field")
    entries = obj["entries"]
    if not isinstance(entries, list) or any(not isinstance(r, list) for r in entries):
        raise ValueError("'entries' must be a list of lists")
    rows = obj.get("rows", len(entries))
    cols = obj.get("cols", len(entries[0]) if entries else 0)
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise ValueError("'rows' and 'cols' must be nonnegative integers")
    data = [[_parse_int(x) for x in r] for r in entries]
    if len(data) != rows or any(len(r) != cols for r in data):
        raise ValueError(f"entries do not match declared shape {rows}x{cols}")
    return IntMatrix(data, shape=(rows, cols))
