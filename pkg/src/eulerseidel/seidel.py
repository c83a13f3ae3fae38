"""Generalized Euler-Seidel tables ``a_n^k = u(n,k) a_n^{k-1} + v(n,k) a_{n+1}^{k-1}``.

Row ``k = 0`` is the initial sequence and never evaluates ``u`` or ``v``, so
coefficients such as ``1/k`` are legal.  Cell ``(n, k)`` of a table of order
``N`` exists for ``n + k <= N``.

The path-weight coefficients ``C_n(k, l)`` (total weight of lattice paths from
cell ``(n, k)`` down to ``(n + l, 0)``) are available three ways:

* :func:`coeff_enum` sums over subsets of north steps,
* :func:`coeff_unit_vector` builds a table seeded with an indicator sequence,
* :func:`coeff_recurrence` runs a two-term recurrence for a dependence class.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import ClassMismatch, DivisionByZero, InsufficientData, ParseError
from .expr import Add, Const, Div, Expr, Neg, Sub, VarK, VarN, eval_expr, parse_expr, substitute
from .riordan import TriangularMatrix
from .series import parse_rational

__all__ = [
    "SeidelSpec",
    "SeidelTable",
    "DependenceClass",
    "parse_init",
    "sequence_from_list",
    "build_table",
    "final_sequence",
    "coeff_enum",
    "coeff_unit_vector",
    "coeff_recurrence",
    "coeff_triangle",
    "detect_class",
    "path_weights",
    "reconstruct_from_final",
    "associated_matrix",
    "transpose_spec",
    "parse_expr",
    "eval_expr",
]

Sequence_ = Callable[[int], Fraction]


# initial sequences -------------------------------------------------------------


class _ListSequence:
    def __init__(self, values):
        self.values = tuple(Fraction(v) for v in values)

    def __call__(self, n):
        if n >= len(self.values):
            raise InsufficientData(f"initial sequence has only {len(self.values)} terms, term {n} requested")
        return self.values[n]

    def __repr__(self):
        return f"sequence_from_list({list(map(str, self.values))})"


def sequence_from_list(values: Sequence) -> Sequence_:
    return _ListSequence(values)


def _ones(n):
    return Fraction(1)


def _factorial(n):
    return Fraction(math.factorial(n))


def indicator(position: int) -> Sequence_:
    return lambda n: Fraction(1 if n == position else 0)


def parse_init(text: str) -> Sequence_:
    """Initial-sequence spec: ``ones``, ``factorial``, ``"1,1,2,6"`` or an expression in ``n``."""
    s = text.strip()
    if s == "ones":
        return _ones
    if s == "factorial":
        return _factorial
    if "," in s:
        return sequence_from_list(parse_rational(p) for p in s.split(","))
    try:
        e = parse_expr(s, variables=("n",))
    except ParseError:
        if "k" in s:
            raise ParseError("initial-sequence expressions may only use n") from None
        raise
    return lambda n: e.evaluate(n, 0)


# tables ----------------------------------------------------------------------


@dataclass(frozen=True)
class SeidelSpec:
    u: Expr
    v: Expr
    init: Sequence_ = _ones

    @classmethod
    def parse(cls, u: str, v: str, init: str = "ones") -> SeidelSpec:
        return cls(parse_expr(u), parse_expr(v), parse_init(init))


@dataclass(frozen=True)
class SeidelTable:
    """``rows[k][n] = a_n^k`` for ``n + k <= N``."""

    N: int
    rows: tuple[tuple[Fraction, ...], ...]

    def cell(self, n: int, k: int) -> Fraction:
        if n < 0 or k < 0 or n + k > self.N:
            raise IndexError(f"cell (n={n}, k={k}) is outside a table of order {self.N}")
        return self.rows[k][n]

    def initial_sequence(self) -> list[Fraction]:
        return list(self.rows[0])

    def final_sequence(self) -> list[Fraction]:
        return [r[0] for r in self.rows]

    def transposed_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        """Rows of the transposed table: ``out[k][n] = a_k^n``."""
        return tuple(tuple(self.rows[n][k] for n in range(self.N - k + 1)) for k in range(self.N + 1))

    def to_json(self) -> dict:
        return {"N": self.N, "rows": [[str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> SeidelTable:
        rows = tuple(tuple(parse_rational(x) for x in r) for r in obj["rows"])
        N = obj["N"]
        if len(rows) != N + 1 or any(len(r) != N - k + 1 for k, r in enumerate(rows)):
            raise ValueError("row lengths do not match the table order")
        return cls(N, rows)


def build_table(spec: SeidelSpec, N: int) -> SeidelTable:
    u, v = spec.u, spec.v
    prev = tuple(Fraction(spec.init(n)) for n in range(N + 1))
    rows = [prev]
    for k in range(1, N + 1):
        cur = []
        for n in range(N - k + 1):
            cur.append(u.evaluate(n, k) * prev[n] + v.evaluate(n, k) * prev[n + 1])
        prev = tuple(cur)
        rows.append(prev)
    return SeidelTable(N, tuple(rows))


def final_sequence(table: SeidelTable) -> list[Fraction]:
    return table.final_sequence()


# path-weight coefficients ------------------------------------------------------


def coeff_enum(n: int, k: int, l: int, u: Expr, v: Expr) -> Fraction:
    """Subset enumeration of ``C_n(k, l)``.

    ``A`` is the set of rows (1..k) where the path steps north.  With ``A``
    listed in decreasing order as ``h_0 > h_1 > ...`` and its complement as
    ``m_0 > m_1 > ...``, the i-th north step happens at row ``h_i`` in column
    ``n + k - h_i - i`` and the j-th north-east step at row ``m_j`` in column
    ``n + j``.
    """
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got l={l}, k={k}")
    rows = range(k, 0, -1)
    total = Fraction(0)
    for A in itertools.combinations(rows, k - l):
        in_A = set(A)
        w = Fraction(1)
        for i, h in enumerate(A):
            w *= u.evaluate(n + k - h - i, h)
            if not w:
                break
        if w:
            for j, m in enumerate(r for r in rows if r not in in_A):
                w *= v.evaluate(n + j, m)
                if not w:
                    break
        total += w
    return total


def coeff_unit_vector(n: int, k: int, l: int, u: Expr, v: Expr) -> Fraction:
    """``C_n(k, l)`` read off a table whose initial sequence is the indicator of ``n + l``."""
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got l={l}, k={k}")
    N = n + k
    prev = [Fraction(1 if j == n + l else 0) for j in range(N + 1)]
    for kk in range(1, k + 1):
        prev = [u.evaluate(j, kk) * prev[j] + v.evaluate(j, kk) * prev[j + 1] for j in range(N - kk + 1)]
    return prev[n]


def path_weights(u: Expr, v: Expr, N: int) -> dict[int, list[list[Fraction]]]:
    """All ``C_n(k, l)`` with ``n + k <= N`` by first-step decomposition.

    ``C_n(k, 0) = u(n, k) C_n(k-1, 0)`` and
    ``C_n(k, l) = u(n, k) C_n(k-1, l) + v(n, k) C_{n+1}(k-1, l-1)``.
    Valid for arbitrary ``u(n, k)``, ``v(n, k)``.  Returns ``{n: triangle}``.
    """
    # layer[n] = row k of C_n, i.e. list over l of C_n(k, l)
    layer = {n: [Fraction(1)] for n in range(N + 1)}
    out = {n: [layer[n]] for n in range(N + 1)}
    for k in range(1, N + 1):
        new = {}
        for n in range(N - k + 1):
            uu, vv = u.evaluate(n, k), v.evaluate(n, k)
            own, nxt = layer[n], layer[n + 1]
            row = [uu * own[0]]
            for l in range(1, k):
                row.append(uu * own[l] + vv * nxt[l - 1])
            row.append(vv * nxt[k - 1])
            new[n] = row
            out[n].append(row)
        layer = new
    return out


class DependenceClass(enum.Enum):
    """Which lattice variables the coefficients depend on."""

    UN_VN = "u(n)v(n)"
    UK_VK = "u(k)v(k)"
    UK_VN = "u(k)v(n)"
    UNK_VK = "u(n,k)v(k)"

    @classmethod
    def parse(cls, text) -> DependenceClass:
        if isinstance(text, cls):
            return text
        for c in cls:
            if text in (c.value, c.name, c.name.lower()):
                return c
        raise ValueError(f"unknown dependence class {text!r}")


_PROBE_N = range(0, 6)
_PROBE_K = range(1, 7)


def _depends_on(e: Expr, var: str) -> bool:
    """Probe ``e`` on a small grid; True if changing ``var`` alone changes the value."""
    values = {}
    for n in _PROBE_N:
        for k in _PROBE_K:
            try:
                values[n, k] = e.evaluate(n, k)
            except DivisionByZero:
                pass
    groups = {}
    for (n, k), val in values.items():
        key = k if var == "n" else n
        groups.setdefault(key, set()).add(val)
    return any(len(s) > 1 for s in groups.values())


_ALLOWED = {
    # class: (u may depend on n, u may depend on k, v on n, v on k)
    DependenceClass.UN_VN: (True, False, True, False),
    DependenceClass.UK_VK: (False, True, False, True),
    DependenceClass.UK_VN: (False, True, True, False),
    DependenceClass.UNK_VK: (True, True, False, True),
}


def _class_violation(u: Expr, v: Expr, cls: DependenceClass) -> str | None:
    un, uk, vn, vk = _ALLOWED[cls]
    for name, e, var, allowed in (("u", u, "n", un), ("u", u, "k", uk), ("v", v, "n", vn), ("v", v, "k", vk)):
        if not allowed and _depends_on(e, var):
            return f"{name} depends on {var}, which class {cls.value} excludes"
    return None


def detect_class(u: Expr, v: Expr) -> DependenceClass:
    """First dependence class (in declaration order) that ``u``, ``v`` fit."""
    for cls in DependenceClass:
        if _class_violation(u, v, cls) is None:
            return cls
    raise ClassMismatch("u and v depend on both n and k in a way no recurrence class covers")


def coeff_triangle(n: int, K: int, u: Expr, v: Expr, dependence_class=None) -> list[list[Fraction]]:
    """Triangle ``C_n(k, l)``, ``0 <= l <= k <= K``, by the class recurrence.

    Base cases ``C_n(k, 0) = prod_{j=1..k} u(n, j)`` and
    ``C_n(k, k) = prod_{j=0..k-1} v(n+j, k-j)``; interior entries from

    * u(n)v(n):   ``C(k+1, l+1) = v(n+l) C(k, l) + u(n+l+1) C(k, l+1)``
    * u(k)v(k):   ``C(k+1, l+1) = v(k+1) C(k, l) + u(k+1) C(k, l+1)``
    * u(k)v(n):   ``C(k+1, l+1) = v(n+l) C(k, l) + u(k+1) C(k, l+1)``
    * u(n,k)v(k): ``C_n(k+1, l+1) = v(k+1) C_{n+1}(k, l) + u(n, k+1) C_n(k, l+1)``

    The last class needs the neighbouring column ``n+1`` because ``u`` varies
    with ``n``.
    """
    cls = detect_class(u, v) if dependence_class is None else DependenceClass.parse(dependence_class)
    problem = _class_violation(u, v, cls)
    if problem is not None:
        raise ClassMismatch(problem)

    if cls is DependenceClass.UNK_VK:
        return _triangle_unk_vk(n, K, u, v)

    # placeholders for the excluded variable; probing showed they do not matter
    if cls is DependenceClass.UN_VN:
        def u_at(col, row):
            return u.evaluate(col, 1)

        def v_at(col, row):
            return v.evaluate(col, 1)

        def step(C, k, l):
            return v_at(n + l, None) * C[k][l] + u_at(n + l + 1, None) * C[k][l + 1]
    elif cls is DependenceClass.UK_VK:
        def u_at(col, row):
            return u.evaluate(0, row)

        def v_at(col, row):
            return v.evaluate(0, row)

        def step(C, k, l):
            return v_at(None, k + 1) * C[k][l] + u_at(None, k + 1) * C[k][l + 1]
    else:  # UK_VN
        def u_at(col, row):
            return u.evaluate(0, row)

        def v_at(col, row):
            return v.evaluate(col, 1)

        def step(C, k, l):
            return v_at(n + l, None) * C[k][l] + u_at(None, k + 1) * C[k][l + 1]

    C = [[Fraction(1)]]
    for k in range(1, K + 1):
        row = [C[k - 1][0] * u_at(n, k)]
        for l in range(k - 1):
            row.append(step(C, k - 1, l))
        row.append(math.prod((v_at(n + j, k - j) for j in range(k)), start=Fraction(1)))
        C.append(row)
    return C


def _triangle_unk_vk(n, K, u, v):
    # layer[c] is row k of C_c for columns c = n .. n + K - k
    layer = {c: [Fraction(1)] for c in range(n, n + K + 1)}
    out = [layer[n]]
    for k in range(1, K + 1):
        vk = v.evaluate(0, k)
        new = {}
        for c in range(n, n + K - k + 1):
            uu = u.evaluate(c, k)
            own, nxt = layer[c], layer[c + 1]
            row = [uu * own[0]]
            for l in range(1, k):
                row.append(vk * nxt[l - 1] + uu * own[l])
            row.append(vk * nxt[k - 1])
            new[c] = row
        layer = new
        out.append(layer[n])
    return out


def coeff_recurrence(n: int, k: int, l: int, u: Expr, v: Expr, dependence_class=None) -> Fraction:
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got l={l}, k={k}")
    return coeff_triangle(n, k, u, v, dependence_class)[k][l]


# reconstruction and duality ----------------------------------------------------


def reconstruct_from_final(n: int, k: int, final: Sequence, u: Expr, v: Expr) -> Fraction:
    """Recover ``a_n^k`` from the final sequence ``a_0^k .. a_0^{k+n}``.

    Inverting the recurrence gives
    ``a_n^k = (a_{n-1}^{k+1} - u(n-1, k+1) a_{n-1}^k) / v(n-1, k+1)``, a table
    of the same shape running along columns.  Summing over paths from
    ``(n, k)`` back to column 0: the i-th "stay" step at column ``h_i`` lands in
    row ``r = k + n - h_i - i`` with weight ``-u(h_i - 1, r + 1) / v(h_i - 1, r + 1)``
    and the j-th "advance" step at column ``m_j`` has weight
    ``1 / v(m_j - 1, k + j + 1)``.
    """
    if len(final) < k + n + 1:
        raise InsufficientData(f"need final-sequence terms up to index {k + n}, got {len(final)}")
    cols = range(n, 0, -1)
    total = Fraction(0)
    for l in range(n + 1):
        a0 = Fraction(final[k + l])
        for A in itertools.combinations(cols, n - l):
            in_A = set(A)
            w = Fraction(1)
            for i, h in enumerate(A):
                r = k + n - h - i
                den = v.evaluate(h - 1, r + 1)
                if den == 0:
                    raise DivisionByZero(h - 1, r + 1, "v vanishes on the reconstruction path")
                w *= -u.evaluate(h - 1, r + 1) / den
            for j, m in enumerate(c for c in cols if c not in in_A):
                den = v.evaluate(m - 1, k + j + 1)
                if den == 0:
                    raise DivisionByZero(m - 1, k + j + 1, "v vanishes on the reconstruction path")
                w /= den
            total += w * a0
    return total


def associated_matrix(spec_or_u, v: Expr | None = None, N: int = 12) -> TriangularMatrix:
    """The matrix ``C_0`` carrying the initial column to the final column."""
    if isinstance(spec_or_u, SeidelSpec):
        u, v = spec_or_u.u, spec_or_u.v
    else:
        u = spec_or_u
    return TriangularMatrix(tuple(tuple(r) for r in path_weights(u, v, N)[0]))


def transpose_spec(spec: SeidelSpec, final: Sequence) -> SeidelSpec:
    """Spec whose table is the transpose ``b_n^k = a_k^n`` of ``spec``'s table.

    Its initial sequence is ``final`` and its coefficients are
    ``u'(n, k) = -u(k-1, n+1) / v(k-1, n+1)``, ``v'(n, k) = 1 / v(k-1, n+1)``.
    ``v`` must not vanish at any site the transposed table of order
    ``len(final) - 1`` touches.
    """
    N = len(final) - 1
    for kk in range(1, N + 1):
        for nn in range(N - kk + 1):
            if spec.v.evaluate(kk - 1, nn + 1) == 0:
                raise DivisionByZero(kk - 1, nn + 1, "v vanishes; the transpose table is undefined")
    n_sub = Sub(VarK(), Const(1))
    k_sub = Add(VarN(), Const(1))
    u_s = substitute(spec.u, n_sub, k_sub)
    v_s = substitute(spec.v, n_sub, k_sub)
    return SeidelSpec(Neg(Div(u_s, v_s)), Div(Const(1), v_s), sequence_from_list(final))
