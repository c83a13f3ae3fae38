"""Riordan arrays in ordinary ``(g, f)`` and exponential ``[G, F]`` flavor.

Column ``l`` of an ordinary array has generating function ``g f^l``; column
``l`` of an exponential array has exponential generating function
``G F^l / l!``.  Entries are plain rationals in both cases.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import series as ps
from .errors import (
    DegenerateMatrix,
    FlavorMismatch,
    IndexOutOfRange,
    NotInvertible,
    OrderTooSmall,
    SequenceTooShort,
    ZeroConstantTerm,
)
from .series import Series

__all__ = [
    "Flavor",
    "RiordanArray",
    "TriangularMatrix",
    "NotRiordan",
    "identity",
    "pascal",
    "entry",
    "to_matrix",
    "multiply",
    "inverse",
    "apply",
    "from_matrix",
    "WEIGHTS",
    "weight_vector",
]

# Column weights w_l relating an array to a matrix it generates up to scaling:
# M(k, l) = w_l * entry(R, k, l).
WEIGHTS = {
    "1": lambda l: Fraction(1),
    "l!": lambda l: Fraction(math.factorial(l)),
    "1/l!": lambda l: Fraction(1, math.factorial(l)),
}


def weight_vector(weight: str, size: int) -> list[Fraction]:
    try:
        w = WEIGHTS[weight]
    except KeyError:
        raise ValueError(f"unknown weight {weight!r}; choose from {sorted(WEIGHTS)}") from None
    return [w(l) for l in range(size)]


class Flavor(enum.Enum):
    ORDINARY = "ordinary"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class TriangularMatrix:
    """Dense lower-triangular matrix; ``rows[k]`` holds entries ``0..k``."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        for k, r in enumerate(rows):
            if len(r) != k + 1:
                raise ValueError(f"row {k} must have {k + 1} entries, got {len(r)}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_function(cls, size: int, fn) -> TriangularMatrix:
        return cls(tuple(tuple(fn(k, l) for l in range(k + 1)) for k in range(size)))

    @classmethod
    def identity(cls, size: int) -> TriangularMatrix:
        return cls.from_function(size, lambda k, l: 1 if k == l else 0)

    @classmethod
    def diagonal(cls, values: Sequence) -> TriangularMatrix:
        return cls.from_function(len(values), lambda k, l: values[k] if k == l else 0)

    @property
    def size(self) -> int:
        return len(self.rows)

    def entry(self, k: int, l: int) -> Fraction:
        if l > k:
            return Fraction(0)
        return self.rows[k][l]

    def column(self, l: int) -> list[Fraction]:
        return [self.rows[k][l] for k in range(l, self.size)]

    def truncate(self, size: int) -> TriangularMatrix:
        return TriangularMatrix(self.rows[:size])

    def __matmul__(self, other):
        if isinstance(other, TriangularMatrix):
            n = min(self.size, other.size)
            return TriangularMatrix.from_function(
                n,
                lambda k, l: sum(
                    (self.rows[k][j] * other.rows[j][l] for j in range(l, k + 1)),
                    Fraction(0),
                ),
            )
        vec = list(other)
        n = min(self.size, len(vec))
        return [sum((self.rows[k][j] * vec[j] for j in range(k + 1)), Fraction(0)) for k in range(n)]

    def is_identity(self) -> bool:
        return all(x == (1 if k == l else 0) for k, r in enumerate(self.rows) for l, x in enumerate(r))

    def to_json(self) -> dict:
        return {"size": self.size, "rows": [[str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> TriangularMatrix:
        rows = tuple(tuple(ps.parse_rational(x) for x in r) for r in obj["rows"])
        if len(rows) != obj["size"]:
            raise ValueError("size field disagrees with row count")
        return cls(rows)


@dataclass(frozen=True)
class RiordanArray:
    g: Series
    f: Series
    flavor: Flavor = Flavor.ORDINARY

    def __post_init__(self):
        if self.g[0] == 0:
            raise ZeroConstantTerm("Riordan array needs g0 != 0")
        if self.f.order < 1 or self.f[0] != 0 or self.f[1] == 0:
            raise NotInvertible("Riordan array needs f0 = 0 and f1 != 0")

    @property
    def order(self) -> int:
        return min(self.g.order, self.f.order)

    @property
    def is_group_member(self) -> bool:
        return self.g[0] == 1 and self.f[1] == 1

    def column_series(self, l: int) -> Series:
        """Generating function of column ``l`` (ordinary: OGF; exponential: EGF)."""
        col = self.g * self.f**l
        if self.flavor is Flavor.EXPONENTIAL:
            col = col / math.factorial(l)
        return col

    def __eq__(self, other):
        if not isinstance(other, RiordanArray):
            return NotImplemented
        return self.flavor is other.flavor and self.g == other.g and self.f == other.f

    __hash__ = None

    def __matmul__(self, other):
        if isinstance(other, RiordanArray):
            return multiply(self, other)
        return apply(self, other)


def identity(order: int, flavor: Flavor = Flavor.ORDINARY) -> RiordanArray:
    return RiordanArray(ps.constant(1, order), ps.variable(order), flavor)


def pascal(order: int) -> RiordanArray:
    """``(1/(1-t), t/(1-t))``."""
    g = ps.geometric(order)
    return RiordanArray(g, g.shift(1), Flavor.ORDINARY)


def entry(R: RiordanArray, k: int, l: int) -> Fraction:
    if l < 0 or l > k:
        raise IndexOutOfRange(f"entry ({k}, {l}) is outside the lower triangle")
    if k > R.order:
        raise IndexOutOfRange(f"row {k} exceeds the series order {R.order}")
    c = (R.g * R.f**l)[k]
    if R.flavor is Flavor.EXPONENTIAL:
        c = c * math.factorial(k) / math.factorial(l)
    return c


def to_matrix(R: RiordanArray, N: int) -> TriangularMatrix:
    if N > R.order:
        raise OrderTooSmall(f"series order {R.order} is below requested size {N}")
    g, f = R.g.truncate(N), R.f.truncate(N)
    cols = []
    col = g
    for l in range(N + 1):
        cols.append(col)
        col = ps.mul(col, f)
    if R.flavor is Flavor.ORDINARY:
        return TriangularMatrix.from_function(N + 1, lambda k, l: cols[l][k])
    fact = [math.factorial(i) for i in range(N + 1)]
    return TriangularMatrix.from_function(N + 1, lambda k, l: cols[l][k] * fact[k] / fact[l])


def multiply(A: RiordanArray, B: RiordanArray) -> RiordanArray:
    """``(g, f)(h, k) = (g h(f), k(f))``; the same law holds for ``[G, F]``."""
    if A.flavor is not B.flavor:
        raise FlavorMismatch("cannot multiply ordinary and exponential Riordan arrays")
    return RiordanArray(A.g * ps.compose(B.g, A.f), ps.compose(B.f, A.f), A.flavor)


def inverse(R: RiordanArray) -> RiordanArray:
    fbar = ps.comp_inverse(R.f)
    return RiordanArray(ps.reciprocal(ps.compose(R.g, fbar)), fbar, R.flavor)


def apply(R: RiordanArray, seq: Sequence, N: int | None = None) -> list[Fraction]:
    """Matrix-vector product computed on the generating-function side.

    Ordinary: ``b(t) = g(t) a(f(t))`` with ``a`` the OGF of ``seq``.
    Exponential: ``B(t) = G(t) A(F(t))`` with EGFs; entries are returned as
    plain sequence values.
    """
    if N is None:
        N = R.order
    if N > R.order:
        raise OrderTooSmall(f"series order {R.order} is below requested size {N}")
    if len(seq) < N + 1:
        raise SequenceTooShort(f"need {N + 1} sequence terms, got {len(seq)}")
    a = Series(seq[: N + 1])
    g, f = R.g.truncate(N), R.f.truncate(N)
    if R.flavor is Flavor.ORDINARY:
        return list(g * ps.compose(a, f))
    b = g * ps.compose(ps.ogf_to_egf(a), f)
    return list(ps.egf_to_ogf(b))


@dataclass(frozen=True)
class NotRiordan:
    """Outcome of :func:`from_matrix` when some entry breaks the column law."""

    k: int
    l: int
    expected: Fraction
    actual: Fraction

    def __bool__(self):
        return False

    def __str__(self):
        return f"not a Riordan matrix: entry ({self.k}, {self.l}) is {self.actual}, expected {self.expected}"


def from_matrix(M: TriangularMatrix, flavor: Flavor = Flavor.ORDINARY, weight: str = "1") -> RiordanArray | NotRiordan:
    """Recover ``(g, f)`` from columns 0 and 1, then check every entry.

    With ``weight`` other than ``"1"`` the matrix is taken to be
    ``to_matrix(R) . diag(w)`` and column ``l`` is divided by ``w_l`` first.
    """
    if weight != "1":
        w = weight_vector(weight, M.size)
        M = TriangularMatrix.from_function(M.size, lambda k, l: M.rows[k][l] / w[l])
    if M.size < 2 or M.entry(0, 0) == 0 or M.entry(1, 1) == 0:
        raise DegenerateMatrix("need a matrix of size >= 2 with nonzero (0,0) and (1,1) entries")
    N = M.size - 1
    col0 = Series(M.entry(k, 0) for k in range(N + 1))
    col1 = Series(M.entry(k, 1) for k in range(N + 1))
    if flavor is Flavor.EXPONENTIAL:
        col0, col1 = ps.ogf_to_egf(col0), ps.ogf_to_egf(col1)
    g = col0
    f = col1 * ps.reciprocal(g)
    R = RiordanArray(g, f, flavor)
    expected = to_matrix(R, N)
    for k in range(N + 1):
        for l in range(k + 1):
            if expected.rows[k][l] != M.rows[k][l]:
                return NotRiordan(k, l, expected.rows[k][l], M.rows[k][l])
    return R
