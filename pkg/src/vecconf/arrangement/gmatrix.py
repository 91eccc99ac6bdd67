"""
g-matrices of pairs of configurations with the same (n, r).

The primary route is algebraic: invert the linear map T taking a skew-symmetric
g to the f-matrix difference it produces. The motion module provides the
geometric route and is checked against this one.
"""
from fractions import Fraction
from math import comb

import numpy as np

from vecconf.arrangement.algebra.exactnum import UniPoly
from vecconf.arrangement.algebra.poly2 import ONE, X, Y, BiPoly
from vecconf.arrangement.domain import DimensionError, InconsistentInputError, ParameterError, RelationReport
from vecconf.arrangement.faces import f_matrix, fstar_matrix_of_polynomial
from vecconf.arrangement.relations import make_report
from vecconf.arrangement.vectors import VectorConfig, contract, delete, gale_dual, gen_cocyclic, gen_cyclic
from vecconf.utils import parallel_map


def binom(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def small_shape(n: int, r: int) -> tuple[int, int]:
    return (r - 1) // 2 + 1, (n - r - 1) // 2 + 1


class GMatrix:
    """(r+1) x (n-r+1) integer matrix, entry (j, k) = g_{j,k}."""

    __slots__ = ("n", "r", "g")

    def __init__(self, n: int, r: int, g):
        if n < r or r < 1:
            raise DimensionError(f"need n >= r >= 1, got n={n}, r={r}")
        g = np.array(g, dtype=np.int64)
        if g.shape != (r + 1, n - r + 1):
            raise DimensionError(f"g-matrix of (n,r)={(n, r)} must be {r + 1}x{n - r + 1}, got {g.shape}")
        self.n, self.r, self.g = n, r, g

    @classmethod
    def zeros(cls, n: int, r: int) -> "GMatrix":
        return cls(n, r, np.zeros((r + 1, n - r + 1), dtype=np.int64))

    @classmethod
    def from_small(cls, n: int, r: int, small) -> "GMatrix":
        """Expand the small g-matrix through the skew-symmetries."""
        rows, cols = small_shape(n, r)
        small = np.array(small, dtype=np.int64).reshape(rows, cols)
        full = np.zeros((r + 1, n - r + 1), dtype=np.int64)
        m = n - r
        for j in range(rows):
            for k in range(cols):
                v = small[j, k]
                full[j, k] = v
                full[r - j, k] = -v
                full[j, m - k] = -v
                full[r - j, m - k] = v
        return cls(n, r, full)

    def small(self) -> np.ndarray:
        rows, cols = small_shape(self.n, self.r)
        return self.g[:rows, :cols].copy()

    def is_skew_symmetric(self) -> bool:
        r, m = self.r, self.n - self.r
        g = self.g
        return all(
            g[j, k] == -g[r - j, k] and g[j, k] == -g[j, m - k]
            for j in range(r + 1) for k in range(m + 1)
        )

    def to_poly(self) -> BiPoly:
        """g(x, y) = sum g_{j,k} x^j y^k"""
        return BiPoly.from_matrix(self.g)

    @classmethod
    def from_poly(cls, n: int, r: int, p: BiPoly) -> "GMatrix":
        return cls(n, r, p.to_matrix(r + 1, n - r + 1).astype(np.int64))

    def polynomial_skew_residuals(self) -> dict[str, BiPoly]:
        """
        g(x,y) minus each of -x^r g(1/x,y), -y^(n-r) g(x,1/y) and x^r y^(n-r) g(1/x,1/y);
        all three vanish exactly when the entrywise skew-symmetries hold
        """
        p, r, m = self.to_poly(), self.r, self.n - self.r
        return {
            "x": p + p.reflect(deg_x=r),
            "y": p + p.reflect(deg_y=m),
            "xy": p - p.reflect(deg_x=r, deg_y=m),
        }

    def transposed_dual(self) -> "GMatrix":
        """-g^T, the g-matrix of the Gale dual pair."""
        return GMatrix(self.n, self.n - self.r, -self.g.T)

    def __add__(self, other: "GMatrix") -> "GMatrix":
        self._same_shape(other)
        return GMatrix(self.n, self.r, self.g + other.g)

    def __sub__(self, other: "GMatrix") -> "GMatrix":
        self._same_shape(other)
        return GMatrix(self.n, self.r, self.g - other.g)

    def __neg__(self) -> "GMatrix":
        return GMatrix(self.n, self.r, -self.g)

    def _same_shape(self, other: "GMatrix") -> None:
        if (self.n, self.r) != (other.n, other.r):
            raise DimensionError(f"g-matrices of (n,r)={(self.n, self.r)} and {(other.n, other.r)}")

    def __eq__(self, other) -> bool:
        return (isinstance(other, GMatrix) and (self.n, self.r) == (other.n, other.r)
                and np.array_equal(self.g, other.g))

    def __repr__(self) -> str:
        return f"GMatrix(n={self.n}, r={self.r}, small={self.small().tolist()})"

    def to_dict(self) -> dict:
        return {"r": self.r, "n": self.n, "g": [[int(v) for v in row] for row in self.g]}

    @classmethod
    def from_dict(cls, data: dict) -> "GMatrix":
        return cls(data["n"], data["r"], data["g"])


def t_polynomial(g: GMatrix) -> BiPoly:
    """sum g_{j,k} (x+y)^j (1+x)^(r-j) y^k"""
    r = g.r
    p = BiPoly()
    for (j, k), v in np.ndenumerate(g.g):
        if v:
            p = p + (X + Y) ** j * (ONE + X) ** (r - j) * Y ** k * int(v)
    return p


def apply_T(g: GMatrix) -> np.ndarray:
    """f-matrix difference produced by g, shape (r, n+1)."""
    if not g.is_skew_symmetric():
        raise InconsistentInputError(f"{g!r} is not skew-symmetric")
    n, r = g.n, g.r
    delta = np.zeros((r, n + 1), dtype=np.int64)
    for s in range(r):
        for t in range(n + 1):
            delta[s, t] = sum(
                binom(j, t - k) * binom(r - j, s - j + t - k) * int(g.g[j, k])
                for j in range(r + 1) for k in range(n - r + 1)
            )
    expanded = t_polynomial(g).to_matrix(r, n + 1)
    assert np.array_equal(delta, expanded.astype(np.int64)), "coefficient and polynomial forms of T disagree"
    return delta


def _solve_column(p: UniPoly, r: int) -> list[Fraction]:
    # p(x) = sum_j g_j x^j (1+x)^(r-j); substituting x = z/(1-z) gives sum_j g_j z^j = sum_s p_s z^s (1-z)^(r-s)
    coeffs = list(p.coeffs) + [Fraction(0)] * (r + 1 - len(p.coeffs))
    return [sum((coeffs[s] * (-1) ** (j - s) * binom(r - s, j - s) for s in range(j + 1)), Fraction(0))
            for j in range(r + 1)]


def g_from_fmatrices(fV: np.ndarray, fW: np.ndarray) -> GMatrix:
    """The unique skew-symmetric g with apply_T(g) = fW - fV, solved column by column."""
    fV, fW = np.asarray(fV), np.asarray(fW)
    if fV.shape != fW.shape:
        raise DimensionError(f"f-matrices of shapes {fV.shape} and {fW.shape}")
    r, n = fV.shape[0], fV.shape[1] - 1
    delta = fW.astype(np.int64) - fV.astype(np.int64)
    g = [[Fraction(0)] * (n - r + 1) for _ in range(r + 1)]
    for t in range(n - r + 1):
        p = UniPoly([int(delta[s, t]) for s in range(r)])
        for j in range(r + 1):
            for k in range(t):
                if g[j][k] and binom(j, t - k):
                    shift = UniPoly([0] * (j - t + k) + [binom(j, t - k) * g[j][k]])
                    p = p - shift * _one_plus_x_power(r - j)
        for j, v in enumerate(_solve_column(p, r)):
            g[j][t] = v
    if any(v.denominator != 1 for row in g for v in row):
        raise InconsistentInputError("g-matrix is not integral; inputs are not f-matrices of configurations")
    result = GMatrix(n, r, [[int(v) for v in row] for row in g])
    if not result.is_skew_symmetric():
        raise InconsistentInputError(f"g-matrix {result.g.tolist()} violates the skew-symmetries")
    if not np.array_equal(apply_T(result), delta):
        raise InconsistentInputError("g-matrix does not reproduce the f-matrix difference")
    return result


def _one_plus_x_power(e: int) -> UniPoly:
    return UniPoly([binom(e, i) for i in range(e + 1)])


def g_of_pair(V: VectorConfig, W: VectorConfig) -> GMatrix:
    if (V.n, V.r) != (W.n, W.r):
        raise DimensionError(f"pair of different sizes {(V.n, V.r)} and {(W.n, W.r)}")
    return g_from_fmatrices(f_matrix(V), f_matrix(W))


def s_polynomial(g: GMatrix) -> BiPoly:
    """f*-polynomial difference: -sum g_{j,k} (x+y)^k (x+1)^(n-r-k) y^j"""
    m = g.n - g.r
    p = BiPoly()
    for (j, k), v in np.ndenumerate(g.g):
        if v:
            p = p - (X + Y) ** k * (X + ONE) ** (m - k) * Y ** j * int(v)
    return p


def apply_S(g: GMatrix) -> np.ndarray:
    """f*-matrix difference produced by g, shape (n+1, n+1)."""
    return fstar_matrix_of_polynomial(s_polynomial(g), g.n)


def g_closed_form_neighborly(n: int, r: int) -> np.ndarray:
    """Small g-matrix of any pair going from a coneighborly to a neighborly configuration."""
    if not n > r >= 1:
        raise ParameterError(f"need n > r >= 1, got n={n}, r={r}")
    rows, cols = small_shape(n, r)
    small = np.zeros((rows, cols), dtype=np.int64)
    for k in range(cols):
        cumulative = 0
        for j in range(rows):
            v = (binom(n - k - r + j, j) * binom(k + r - 1 - j, k)
                 - binom(n - k - r + j - 1, j - 1) * binom(k + r - j, k))
            assert v > 0, f"closed-form entry g_{j},{k} = {v} is not positive"
            cumulative += v
            assert cumulative == binom(n - k - r + j, j) * binom(k + r - 1 - j, k)
            small[j, k] = v
    return small


def mutation_increment(n: int, r: int, j: int, k: int) -> GMatrix:
    """g-matrix contribution of a single mutation of type (j, k)."""
    if not (0 <= j <= r and 0 <= k <= n - r):
        raise ParameterError(f"type {(j, k)} outside 0..{r} x 0..{n - r}")
    inc = GMatrix.zeros(n, r)
    if 2 * j == r or 2 * k == n - r:
        return inc
    g = inc.g
    g[j, k] += 1
    g[r - j, n - r - k] += 1
    g[r - j, k] -= 1
    g[j, n - r - k] -= 1
    return inc


def mutation_delta_f(n: int, r: int, j: int, k: int) -> np.ndarray:
    """f-matrix change across one type-(j, k) mutation, shape (r, n+1)."""
    p = ((Y ** k - Y ** (n - r - k))
         * ((X + ONE) ** (r - j) * (X + Y) ** j - (X + ONE) ** j * (X + Y) ** (r - j)))
    return p.to_matrix(r, n + 1).astype(np.int64)


def first_quadrant_nonnegative(g: GMatrix) -> bool:
    """Observational: every small g entry >= 0 (known for rank 3 only)."""
    return bool((g.small() >= 0).all())


def _minor_g(args: tuple[VectorConfig, VectorConfig, int, str]) -> np.ndarray:
    V, W, i, mode = args
    minor = contract if mode == "contract" else delete
    return g_of_pair(minor(V, i), minor(W, i)).g


def check_contraction_deletion(V: VectorConfig, W: VectorConfig, mode: str) -> RelationReport:
    """
    Sum of the g-matrices of the n minor pairs against the g-matrix of the pair

    contract: sum_i g_{j,k}(V/v_i -> W/w_i) = (r-j) g_{j,k} + (j+1) g_{j+1,k}
    delete:   sum_i g_{j,k}(V\\v_i -> W\\w_i) = (n-r-k) g_{j,k} + (k+1) g_{j,k+1}
    """
    if mode not in ("contract", "delete"):
        raise ParameterError(f"unknown mode {mode!r}")
    n, r = V.n, V.r
    if mode == "contract" and r < 2:
        raise ParameterError("contraction needs rank at least 2")
    if mode == "delete" and n < r + 1:
        raise ParameterError("deletion needs n >= r + 1")
    g = g_of_pair(V, W).g
    minors = parallel_map(_minor_g, [(V, W, i, mode) for i in range(1, n + 1)],
                          desc=f"{mode} minors")
    total = np.sum(minors, axis=0)
    witness = None
    if mode == "contract":
        cells = [(j, k) for j in range(r) for k in range(n - r + 1)]
        expected = {(j, k): (r - j) * g[j, k] + (j + 1) * g[j + 1, k] for j, k in cells}
    else:
        cells = [(j, k) for j in range(r + 1) for k in range(n - r)]
        expected = {(j, k): (n - r - k) * g[j, k] + (k + 1) * g[j, k + 1] for j, k in cells}
    for j, k in cells:
        if total[j, k] != expected[(j, k)]:
            witness = f"({j},{k}): minors sum to {total[j, k]}, expected {expected[(j, k)]}"
            break
    return make_report(mode, witness)


def check_gale_antisymmetry(V: VectorConfig, W: VectorConfig) -> RelationReport:
    """g_{j,k}(V -> W) = -g_{k,j}(V* -> W*)"""
    g = g_of_pair(V, W)
    g_dual = g_of_pair(gale_dual(V), gale_dual(W))
    witness = None
    if g.transposed_dual() != g_dual:
        j, k = map(int, np.argwhere(g.g != -g_dual.g.T)[0])
        witness = f"({j},{k}): {g.g[j, k]} vs dual {g_dual.g[k, j]}"
    return make_report("gale-antisymmetry", witness)


def check_skew(V: VectorConfig, W: VectorConfig) -> RelationReport:
    try:
        g = g_of_pair(V, W)
    except InconsistentInputError as e:
        return make_report("skew", str(e))
    witness = None if g.is_skew_symmetric() else f"{g.g.tolist()}"
    return make_report("skew", witness)


def check_g_polynomial_skew(V: VectorConfig, W: VectorConfig) -> RelationReport:
    """Skew-symmetries of g(V -> W) checked on the g-polynomial under x -> 1/x and y -> 1/y."""
    try:
        g = g_of_pair(V, W)
    except InconsistentInputError as e:
        return make_report("g-polynomial", str(e))
    witness = None
    for name, residual in g.polynomial_skew_residuals().items():
        if not residual.is_zero():
            witness = f"{name}-reflection residual {residual.to_text()}"
            break
    return make_report("g-polynomial", witness)


def check_closed_form(n: int, r: int) -> RelationReport:
    """Algebraic g(cocyclic -> cyclic) against the closed form."""
    g = g_of_pair(gen_cocyclic(n, r), gen_cyclic(n, r)).small()
    expected = g_closed_form_neighborly(n, r)
    witness = None
    if not np.array_equal(g, expected):
        j, k = map(int, np.argwhere(g != expected)[0])
        witness = f"({j},{k}): {g[j, k]} vs closed form {expected[j, k]}"
    return make_report("closed-form", witness)
