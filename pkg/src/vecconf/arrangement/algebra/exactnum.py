"""
Exact arithmetic substrate: rationals, dense rational matrices and univariate
polynomials with Sturm-sequence root isolation.

Every value here is immutable. Nothing in this module uses floating point.
"""
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from vecconf.arrangement.domain import (
    BoundaryRootError,
    DegeneratePolynomialError,
    DimensionError,
    ParameterError,
)

Rat = Fraction


def rat(value) -> Fraction:
    """Parse "p", "p/q" or an int/Fraction into a canonical Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, np.integer):
        return Fraction(int(value))
    if isinstance(value, bool) or isinstance(value, float):
        raise ParameterError(f"refusing non-exact value {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise ParameterError(f"invalid rational {value!r}: {e}") from None


def sign(value) -> int:
    return (value > 0) - (value < 0)


class Mat:
    """Dense rational matrix backed by an immutable numpy object array."""

    __slots__ = ("_a",)

    def __init__(self, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(row) for row in rows]
        width = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and width != cols:
            raise DimensionError(f"expected {cols} columns, got {width}")
        if any(len(row) != width for row in rows):
            raise DimensionError("ragged matrix rows")
        a = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                a[i, j] = rat(value)
        a.flags.writeable = False
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "Mat":
        m = cls.__new__(cls)
        a = np.array(a, dtype=object)
        a.flags.writeable = False
        m._a = a
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Mat":
        columns = [list(c) for c in columns]
        height = len(columns[0]) if columns else (rows or 0)
        return cls([[c[i] for c in columns] for i in range(height)], cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(self._a.flat)

    @property
    def array(self) -> np.ndarray:
        return self._a

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        return self._a[index]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return tuple(self._a[i, :])

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self._a[:, j])

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self._a[i, :]) for i in range(self.rows)]

    def select_columns(self, indices: Sequence[int]) -> "Mat":
        return Mat.from_columns([self.column(j) for j in indices], rows=self.rows)

    @property
    def T(self) -> "Mat":
        return Mat._wrap(self._a.T)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = np.empty((self.rows, other.cols), dtype=object)
        for i in range(self.rows):
            for j in range(other.cols):
                out[i, j] = sum((self._a[i, k] * other._a[k, j] for k in range(self.cols)), Fraction(0))
        return Mat._wrap(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self.tolist())
        return f"Mat({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return all(v == 0 for v in self._a.flat)


def lerp(a: Mat, b: Mat, t) -> Mat:
    """(1-t) a + t b"""
    if a.shape != b.shape:
        raise DimensionError(f"cannot interpolate {a.shape} and {b.shape}")
    t = rat(t)
    return Mat._wrap(a.array * (1 - t) + b.array * t)


def det(m: Mat) -> Fraction:
    """Bareiss fraction-free elimination; every division is exact."""
    if m.rows != m.cols:
        raise DimensionError(f"determinant of non-square {m.shape} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = m.tolist()
    sgn, prev = 1, Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sgn = -sgn
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) / prev
        prev = pivot
    return sgn * a[n - 1][n - 1]


def rref(m: Mat) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = m.tolist()
    n_rows, n_cols = m.rows, m.cols
    pivots: list[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if a[i_row][piv_c] != 0:
                break
        else:
            continue
        a[piv_r], a[i_row] = a[i_row], a[piv_r]
        fp = a[piv_r][piv_c]
        a[piv_r] = [v / fp for v in a[piv_r]]
        for i in range(n_rows):
            fr = a[i][piv_c]
            if i != piv_r and fr != 0:
                a[i] = [vi - fr * vp for vi, vp in zip(a[i], a[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
    return a, pivots


def rank(m: Mat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m: Mat) -> Mat:
    """Columns of the result form a basis of {x : m x = 0}."""
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            x[pc] = -reduced[row][f]
        basis.append(x)
    return Mat.from_columns(basis, rows=m.cols)


def solve(m: Mat, b: Sequence) -> list[Fraction]:
    """Unique solution of m x = b for square invertible m."""
    if m.rows != m.cols or len(b) != m.rows:
        raise DimensionError(f"cannot solve {m.shape} system against {len(b)} values")
    augmented = Mat([list(row) + [rat(v)] for row, v in zip(m.tolist(), b)], cols=m.cols + 1)
    reduced, pivots = rref(augmented)
    if pivots != list(range(m.cols)):
        raise DimensionError("singular system")
    return [reduced[i][m.cols] for i in range(m.cols)]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class UniPoly:
    """Univariate polynomial, coeffs[i] multiplies t**i; trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [rat(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def constant(cls, value) -> "UniPoly":
        return cls([value])

    @classmethod
    def linear(cls, a, b) -> "UniPoly":
        """a + b t"""
        return cls([a, b])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, v in enumerate(b):
            res[i] += v
        return UniPoly(res)

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        res = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                res[i + j] += a * b
        return UniPoly(res)

    __rmul__ = __mul__

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - other.degree, 0)
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            factor = rem[-1] / other.lead
            quot[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[i + shift] -= factor * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(quot), UniPoly(rem)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly(c / self.lead for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def interpolate(points: Sequence[tuple]) -> UniPoly:
    """Lagrange interpolation through (t, value) pairs with distinct t."""
    result = UniPoly()
    for i, (ti, vi) in enumerate(points):
        if vi == 0:
            continue
        basis = UniPoly.constant(1)
        denom = Fraction(1)
        for j, (tj, _) in enumerate(points):
            if j != i:
                basis = basis * UniPoly.linear(-tj, 1)
                denom *= ti - tj
        result = result + basis * (rat(vi) / denom)
    return result


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p]
    nxt = p.derivative()
    while not nxt.is_zero():
        seq.append(nxt)
        nxt = -(seq[-2] % seq[-1])
    return seq


def sign_changes(values: Iterable) -> int:
    nonzero = [sign(v) for v in values if v != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def count_roots(seq: list[UniPoly], lo, hi) -> int:
    """Distinct real roots of seq[0] in (lo, hi]."""
    return sign_changes(q(lo) for q in seq) - sign_changes(q(hi) for q in seq)


class RootInterval(NamedTuple):
    lo: Fraction
    hi: Fraction
    simple: bool


def _split_point(p: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    while p(mid) == 0:
        mid = (lo + mid) / 2
    return mid


def refine_root(p: UniPoly, lo: Fraction, hi: Fraction,
                seq: list[UniPoly] | None = None) -> tuple[Fraction, Fraction]:
    """Halve an isolating interval of p, keeping the half that holds the root."""
    seq = seq or sturm_sequence(p)
    mid = _split_point(p, lo, hi)
    if count_roots(seq, lo, mid) > 0:
        return lo, mid
    return mid, hi


def isolate_roots(p: UniPoly, lo, hi) -> list[RootInterval]:
    lo, hi = rat(lo), rat(hi)
    if lo >= hi:
        raise ParameterError(f"empty interval ({lo}, {hi})")
    if p.is_zero():
        raise DegeneratePolynomialError("cannot isolate roots of the zero polynomial")
    if p(lo) == 0 or p(hi) == 0:
        raise BoundaryRootError(f"{p} vanishes at an endpoint of ({lo}, {hi})")
    seq = sturm_sequence(p)
    found: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        c = count_roots(seq, a, b)
        if c == 0:
            continue
        if c == 1:
            found.append((a, b))
            continue
        m = _split_point(p, a, b)
        stack.extend([(m, b), (a, m)])
    found.sort()

    g = poly_gcd(p, p.derivative())
    g_seq = sturm_sequence(g) if g.degree > 0 else None
    return [RootInterval(a, b, g_seq is None or count_roots(g_seq, a, b) == 0) for a, b in found]


def sign_at_root(q: UniPoly, p: UniPoly, lo: Fraction, hi: Fraction) -> int:
    """Sign of q at the unique root of p isolated in (lo, hi); 0 if q vanishes there."""
    if q.is_zero():
        return 0
    g = poly_gcd(p, q)
    if g.degree > 0 and count_roots(sturm_sequence(g), lo, hi) > 0:
        return 0
    p_seq, q_seq = sturm_sequence(p), sturm_sequence(q)
    while q(lo) == 0 or q(hi) == 0 or count_roots(q_seq, lo, hi) > 0:
        lo, hi = refine_root(p, lo, hi, p_seq)
    return sign(q((lo + hi) / 2))
