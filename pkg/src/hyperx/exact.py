"""Exact scalars and matrices.

Entries are either :class:`fractions.Fraction` (the fast path) or
:class:`ExactScalar`, an element ``a + b*sqrt(d)`` of a real quadratic field.
A matrix may use at most one radicand.  Determinant and rank use
fraction-free (Bareiss) elimination; rational matrices are scaled to integer
rows first so the elimination runs on Python ints.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence, Union


class RadicandMismatch(ValueError):
    pass


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (s, f) with d == s*s*f and f squarefree."""
    s, f = 1, 1
    p = 2
    rest = d
    while p * p <= rest:
        while rest % (p * p) == 0:
            rest //= p * p
            s *= p
        if rest % p == 0:
            rest //= p
            f *= p
        p += 1
    return s, f * rest


class ExactScalar:
    """The real number ``a + b*sqrt(d)`` with rational ``a, b``.

    Pure rationals carry ``b == 0`` and ``d == 0``.  Radicands are stored
    squarefree; perfect squares fold into the rational part.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError("radicand must be nonnegative")
        if b == 0 or d == 0:
            b, d = Fraction(0), 0
        else:
            s, f = _squarefree_split(d)
            b *= s
            if f == 1:
                a, b, d = a + b, Fraction(0), 0
            else:
                d = f
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def sqrt(cls, d: int) -> "ExactScalar":
        return cls(0, 1, d)

    # -- coercion -------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactScalar(x)
        return NotImplemented

    def _joint_radicand(self, other: "ExactScalar") -> int:
        if self.d and other.d and self.d != other.d:
            raise RadicandMismatch(f"cannot mix sqrt({self.d}) and sqrt({other.d})")
        return self.d or other.d

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._joint_radicand(o)
        return ExactScalar(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._joint_radicand(o)
        return ExactScalar(self.a - o.a, self.b - o.b, d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._joint_radicand(o)
        return ExactScalar(
            self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return ExactScalar(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        self._joint_radicand(o)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    # -- order ----------------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 against b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else -sa

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.b == 0 and o.b == 0:
            return self.a == o.a
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare ExactScalar with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        if self.b == 0:
            return f"ExactScalar({self.a})"
        return f"ExactScalar({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


Number = Union[int, Fraction, ExactScalar]


def as_exact(x) -> Union[Fraction, ExactScalar]:
    """Normalize to Fraction when rational, else ExactScalar.  Floats are refused."""
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, ExactScalar):
        return x.a if x.b == 0 else x
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact number: {x!r}")


def radicand_of(x) -> int:
    return x.d if isinstance(x, ExactScalar) else 0


def sign(x) -> int:
    if isinstance(x, ExactScalar):
        return x.sign()
    return (x > 0) - (x < 0)


class ExactMatrix:
    """Immutable dense matrix of exact entries."""

    __slots__ = ("_rows", "nrows", "ncols", "radicand")

    def __init__(self, entries: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(as_exact(x) for x in row) for row in entries)
        if rows:
            widths = {len(r) for r in rows}
            if len(widths) != 1:
                raise ValueError("ragged matrix")
            width = widths.pop()
            if ncols is not None and ncols != width:
                raise ValueError("column count mismatch")
        else:
            width = ncols or 0
        rad = {radicand_of(x) for row in rows for x in row} - {0}
        if len(rad) > 1:
            raise RadicandMismatch(f"mixed radicands {sorted(rad)}")
        self._rows = rows
        self.nrows = len(rows)
        self.ncols = width
        self.radicand = rad.pop() if rad else 0

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "ExactMatrix":
        return cls([[0] * c for _ in range(r)], ncols=c)

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"ExactMatrix([{body}])"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self._rows), ncols=self.nrows) if self.nrows else ExactMatrix([], 0)

    T = property(transpose)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self._rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.transpose().rows
        return ExactMatrix(
            [[_dot(r, c) for c in cols] for r in self._rows], ncols=other.ncols
        )

    def apply(self, vec: Sequence) -> tuple:
        return tuple(_dot(r, vec) for r in self._rows)

    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "radicand": self.radicand,
            "entries": [[scalar_to_json(x) for x in row] for row in self._rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExactMatrix":
        d = int(data.get("radicand", 0))
        m = cls([[scalar_from_json(x, d) for x in row] for row in data["entries"]],
                ncols=data.get("cols"))
        if m.nrows != data.get("rows", m.nrows):
            raise ValueError("row count mismatch")
        return m


def scalar_to_json(x) -> list[int]:
    x = as_exact(x)
    if isinstance(x, ExactScalar):
        return [x.a.numerator, x.a.denominator, x.b.numerator, x.b.denominator]
    return [x.numerator, x.denominator, 0, 1]


def scalar_from_json(enc, radicand: int = 0):
    a = Fraction(enc[0], enc[1])
    b = Fraction(enc[2], enc[3]) if len(enc) > 2 else Fraction(0)
    if b and not radicand:
        raise ValueError("irrational entry without a radicand")
    return as_exact(ExactScalar(a, b, radicand) if b else a)


def _dot(u: Sequence, v: Sequence):
    total = 0
    for x, y in zip(u, v):
        if x and y:
            total = total + x * y
    return as_exact(total)


def _exact_div(x, y):
    if type(x) is int and type(y) is int:
        q, rem = divmod(x, y)
        if rem:
            raise ArithmeticError("inexact Bareiss division")
        return q
    return x / y


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], Fraction]:
    """Scale each rational row to integers; return rows and the product of scale factors."""
    out = []
    scale = Fraction(1)
    for row in rows:
        lcm = reduce(math.lcm, (x.denominator for x in row), 1)
        out.append([int(x * lcm) for x in row])
        scale *= lcm
    return out, scale


def _bareiss(a: list[list]) -> tuple[int, int, object]:
    """In-place fraction-free elimination.  Returns (rank, permutation sign, last pivot)."""
    m = len(a)
    n = len(a[0]) if m else 0
    prev = 1
    sgn = 1
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sgn = -sgn
        p = a[r][c]
        ar = a[r]
        for i in range(r + 1, m):
            ai = a[i]
            aic = ai[c]
            if aic:
                for j in range(c + 1, n):
                    ai[j] = _exact_div(p * ai[j] - aic * ar[j], prev)
            else:
                for j in range(c + 1, n):
                    ai[j] = _exact_div(p * ai[j], prev)
            ai[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r, sgn, prev


def _prepared(m: ExactMatrix) -> tuple[list[list], object]:
    if m.radicand == 0:
        rows, scale = _integer_rows(m.rows)
        return rows, scale
    return [list(r) for r in m.rows], Fraction(1)


def determinant(m: ExactMatrix):
    if not m.is_square:
        raise ValueError(f"determinant of non-square {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    rows, scale = _prepared(m)
    r, sgn, last = _bareiss(rows)
    if r < n:
        return Fraction(0)
    return as_exact(sgn * last / scale if m.radicand == 0 else sgn * last)


def rank(m: ExactMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows, _ = _prepared(m)
    return _bareiss(rows)[0]


def principal_minor_check(m: ExactMatrix, k: int) -> bool:
    """True iff every k-by-k principal submatrix has rank exactly k-1."""
    if not m.is_square:
        raise ValueError("principal minors need a square matrix")
    n = m.nrows
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    return all(rank(m.submatrix(I, I)) == k - 1 for I in combinations(range(n), k))


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over the field of the entries; returns (rows, pivot columns)."""
    a = [[as_exact(x) for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [as_exact(x * inv) for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [as_exact(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of {x : A x = 0}, one vector per free column."""
    if not rows:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    red, pivots = rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = as_exact(-row[f])
        basis.append(tuple(v))
    return basis


def inverse(m: ExactMatrix) -> ExactMatrix:
    if not m.is_square:
        raise ValueError("inverse of non-square matrix")
    n = m.nrows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return ExactMatrix([r[n:] for r in red])


def positive_scaling_between(a: ExactMatrix, b: ExactMatrix):
    """Find positive row factors r and column factors c with r_i * a_ij * c_j == b_ij.

    Returns ``(r, c)`` or ``None`` when no positive diagonal scaling exists.
    """
    if a.shape != b.shape:
        return None
    m, n = a.shape
    nz = [[j for j in range(n) if a[i, j]] for i in range(m)]
    for i in range(m):
        for j in range(n):
            if bool(a[i, j]) != bool(b[i, j]):
                return None
    rf: list = [None] * m
    cf: list = [None] * n
    cols_of = nz
    rows_of = [[i for i in range(m) if a[i, j]] for j in range(n)]
    for start in range(m):
        if rf[start] is not None:
            continue
        rf[start] = Fraction(1)
        stack = [("r", start)]
        while stack:
            kind, idx = stack.pop()
            if kind == "r":
                for j in cols_of[idx]:
                    if cf[j] is None:
                        cf[j] = as_exact(b[idx, j] / (a[idx, j] * rf[idx]))
                        stack.append(("c", j))
            else:
                for i in rows_of[idx]:
                    if rf[i] is None:
                        rf[i] = as_exact(b[i, idx] / (a[i, idx] * cf[idx]))
                        stack.append(("r", i))
    cf = [Fraction(1) if x is None else x for x in cf]
    if any(sign(x) <= 0 for x in rf + cf):
        return None
    for i in range(m):
        for j in cols_of[i]:
            if rf[i] * a[i, j] * cf[j] != b[i, j]:
                return None
    return rf, cf
