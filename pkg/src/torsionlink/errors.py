"""Exception hierarchy.

Every error raised by the library derives from :class:`TorsionLinkError`,
which is itself a :class:`ValueError`.
"""


class TorsionLinkError(ValueError):
    pass


class DimensionMismatch(TorsionLinkError):
    pass


class SingularMatrix(TorsionLinkError):
    pass


class OddDimension(TorsionLinkError):
    pass


class NotAntiSymplectic(TorsionLinkError):
    """Raised when ``R^T J R != -J``.

    ``relation`` is ``"symplectic"`` when the matrix satisfies ``R^T J R = J``
    instead, and ``"neither"`` otherwise.
    """

    def __init__(self, message, relation="neither"):
        super().__init__(message)
        self.relation = relation


class NotSymplectic(TorsionLinkError):
    pass


class GenusMismatch(TorsionLinkError):
    pass


class NotCoprime(TorsionLinkError):
    pass


class NotRationalHomologySphere(TorsionLinkError):
    pass


class SearchCapExceeded(TorsionLinkError):
    def __init__(self, cap, order):
        super().__init__(f"group order {order} exceeds isometry search cap {cap}")
        self.cap = cap
        self.order = order


class TooLarge(TorsionLinkError):
    pass


class OracleMismatch(AssertionError):
    """An independent brute-force check disagreed with the fast path."""
