from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from vecconf.arrangement.algebra.exactnum import rat
from vecconf.arrangement.domain import DimensionError

Monomial = tuple[int, int]


class BiPoly:
    """Sparse polynomial in x and y with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise DimensionError(f"negative exponent in monomial {(a, b)}")
            acc[(a, b)] = acc.get((a, b), Fraction(0)) + rat(c)
        self.terms: dict[Monomial, Fraction] = {m: c for m, c in acc.items() if c != 0}

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def from_matrix(cls, m, row_var: str = "x", col_var: str = "y") -> "BiPoly":
        """
        Polynomial with coefficient m[s][t] on the monomial row_var^s col_var^t

        Args:
            m: 2-d array-like of integers or rationals
            row_var (str): "x" or "y", the variable indexed by rows
            col_var (str): "x" or "y", the variable indexed by columns
        """
        if {row_var, col_var} != {"x", "y"}:
            raise DimensionError(f"row/column variables must be x and y, got {row_var!r}, {col_var!r}")
        terms = {}
        for s, row in enumerate(m):
            for t, c in enumerate(row):
                if c:
                    terms[(s, t) if row_var == "x" else (t, s)] = c
        return cls(terms)

    def to_matrix(self, rows: int, cols: int) -> np.ndarray:
        """Integer coefficient window [s][t] of x^s y^t; terms outside raise DimensionError."""
        out = np.zeros((rows, cols), dtype=object)
        for (a, b), c in self.terms.items():
            if a >= rows or b >= cols:
                raise DimensionError(f"term x^{a} y^{b} outside the {rows}x{cols} window")
            assert c.denominator == 1, f"non-integral coefficient {c} at x^{a} y^{b}"
            out[a, b] = int(c)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, a: int, b: int) -> Fraction:
        return self.terms.get((a, b), Fraction(0))

    @property
    def deg_x(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    def __add__(self, other) -> "BiPoly":
        other = _lift(other)
        return BiPoly(list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "BiPoly":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "BiPoly":
        return _lift(other) - self

    def __mul__(self, other) -> "BiPoly":
        other = _lift(other)
        acc: dict[Monomial, Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return BiPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiPoly":
        if k < 0:
            raise DimensionError("negative polynomial power")
        result, base = BiPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute(self, sx: "BiPoly", sy: "BiPoly") -> "BiPoly":
        """p(sx, sy), expanded."""
        x_pows: dict[int, BiPoly] = {0: BiPoly.const(1)}
        y_pows: dict[int, BiPoly] = {0: BiPoly.const(1)}
        for a in range(1, self.deg_x + 1):
            x_pows[a] = x_pows[a - 1] * sx
        for b in range(1, self.deg_y + 1):
            y_pows[b] = y_pows[b - 1] * sy
        result = BiPoly()
        for (a, b), c in self.terms.items():
            result = result + x_pows[a] * y_pows[b] * c
        return result

    def reflect(self, deg_x: int | None = None, deg_y: int | None = None) -> "BiPoly":
        """
        x^deg_x y^deg_y p(1/x, 1/y), reflecting only the variables whose degree is given

        Args:
            deg_x (int | None): reflect x within 0..deg_x
            deg_y (int | None): reflect y within 0..deg_y
        """
        if deg_x is not None and self.deg_x > deg_x:
            raise DimensionError(f"x-degree {self.deg_x} exceeds reflection degree {deg_x}")
        if deg_y is not None and self.deg_y > deg_y:
            raise DimensionError(f"y-degree {self.deg_y} exceeds reflection degree {deg_y}")
        return BiPoly({
            (a if deg_x is None else deg_x - a, b if deg_y is None else deg_y - b): c
            for (a, b), c in self.terms.items()
        })

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            try:
                other = _lift(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms, reverse=True):
            c = self.terms[(a, b)]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("x", a), ("y", b)) if e > 0
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"BiPoly({self.to_text()})"


def _lift(value) -> BiPoly:
    if isinstance(value, BiPoly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return BiPoly.const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


X = BiPoly.x()
Y = BiPoly.y()
ONE = BiPoly.const(1)
