"""
Vector configurations in general position: construction, generators,
Gale duality, minors and the neighborliness predicates.

Columns are addressed 1..n in every public signature.
"""
import itertools
import json
import pathlib
from fractions import Fraction
from typing import Sequence

from loguru import logger

from vecconf.arrangement.algebra.exactnum import Mat, det, kernel_basis, rat
from vecconf.arrangement.domain import (
    BudgetExceededError,
    ConfigFormatError,
    DimensionError,
    EmptyDualError,
    GeneralPositionError,
    ParameterError,
)
from vecconf.config import SamplingConfig


class VectorConfig:
    """n vectors of R^r, stored as the columns of an r x n rational matrix."""

    __slots__ = ("vectors",)

    def __init__(self, vectors: Mat, validate: bool = True):
        if vectors.rows < 1:
            raise DimensionError("rank must be at least 1")
        if vectors.cols < vectors.rows:
            raise DimensionError(f"need n >= r, got r={vectors.rows}, n={vectors.cols}")
        self.vectors = vectors
        if validate:
            bad = first_dependent_subset(vectors)
            if bad is not None:
                raise GeneralPositionError(bad)

    @property
    def r(self) -> int:
        return self.vectors.rows

    @property
    def n(self) -> int:
        return self.vectors.cols

    @property
    def d(self) -> int:
        return self.r - 1

    def column(self, i: int) -> tuple[Fraction, ...]:
        """Vector v_i, 1-based."""
        _check_index(self, i)
        return self.vectors.column(i - 1)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return self.vectors.columns()

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "n": self.n,
            "vectors": [[str(v) for v in col] for col in self.columns()],
        }

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorConfig) and self.vectors == other.vectors

    def __hash__(self) -> int:
        return hash(self.vectors)

    def __repr__(self) -> str:
        cols = ", ".join("(" + ",".join(str(v) for v in c) + ")" for c in self.columns())
        return f"VectorConfig(r={self.r}, n={self.n}: {cols})"


def first_dependent_subset(vectors: Mat) -> tuple[int, ...] | None:
    """1-based indices of the first r-subset with vanishing determinant, if any."""
    r = vectors.rows
    for subset in itertools.combinations(range(vectors.cols), r):
        if det(vectors.select_columns(subset)) == 0:
            return tuple(i + 1 for i in subset)
    return None


def _check_index(V: VectorConfig, i: int) -> None:
    if not 1 <= i <= V.n:
        raise ParameterError(f"column index {i} outside 1..{V.n}")


def new_config(r: int, n: int, entries: Sequence[Sequence]) -> VectorConfig:
    """
    Validated configuration from n columns of length r

    Args:
        r (int): rank
        n (int): number of vectors
        entries: n columns, each a sequence of r rationals (or "p/q" strings)
    """
    if r < 1:
        raise DimensionError(f"rank must be at least 1, got {r}")
    if n < r:
        raise DimensionError(f"need n >= r, got r={r}, n={n}")
    if len(entries) != n or any(len(col) != r for col in entries):
        raise DimensionError(f"expected {n} columns of length {r}")
    return VectorConfig(Mat.from_columns(entries, rows=r))


def _moment_columns(n: int, r: int, params: Sequence | None) -> list[list[Fraction]]:
    ts = [rat(t) for t in params] if params is not None else [Fraction(i) for i in range(n)]
    if len(ts) != n:
        raise ParameterError(f"expected {n} parameters, got {len(ts)}")
    if any(a >= b for a, b in zip(ts, ts[1:])):
        raise ParameterError(f"parameters must be strictly increasing: {[str(t) for t in ts]}")
    return [[t ** e for e in range(r)] for t in ts]


def gen_cyclic(n: int, r: int, params: Sequence | None = None) -> VectorConfig:
    """Columns (1, t_i, ..., t_i^(r-1)); parameters default to 0, 1, ..., n-1."""
    return new_config(r, n, _moment_columns(n, r, params))


def gen_cocyclic(n: int, r: int, params: Sequence | None = None) -> VectorConfig:
    """Cyclic columns with v_i multiplied by (-1)^i."""
    cols = _moment_columns(n, r, params)
    return new_config(r, n, [[(-1) ** i * v for v in col] for i, col in enumerate(cols, start=1)])


def lift_points(points: Sequence[Sequence]) -> VectorConfig:
    """Pointed configuration (1, p) of a point set in R^d."""
    if not points:
        raise DimensionError("empty point set")
    d = len(points[0])
    return new_config(d + 1, len(points), [[1, *p] for p in points])


def gen_random(n: int, r: int, seed: int | None = None, pointed: bool = False) -> VectorConfig:
    """
    Seed-deterministic random configuration, resampled until in general position

    Pointed samples lift integer points of the box [-B, B]^(r-1), B = 100 n.
    Otherwise entries are p/q with |p| <= 10 n and 1 <= q <= 4.
    """
    if n < r or r < 1:
        raise DimensionError(f"need n >= r >= 1, got r={r}, n={n}")
    rng = SamplingConfig.rng(seed)
    for attempt in range(SamplingConfig.RESAMPLE_BUDGET):
        if pointed:
            box = SamplingConfig.POINT_BOX_FACTOR * n
            pts = rng.integers(-box, box + 1, size=(n, r - 1))
            cols = [[1, *(int(v) for v in p)] for p in pts]
        else:
            box = SamplingConfig.RATIONAL_BOX * n
            nums = rng.integers(-box, box + 1, size=(n, r))
            dens = rng.integers(1, SamplingConfig.MAX_DENOMINATOR + 1, size=(n, r))
            cols = [[Fraction(int(a), int(b)) for a, b in zip(ns, ds)] for ns, ds in zip(nums, dens)]
        try:
            return new_config(r, n, cols)
        except GeneralPositionError as e:
            logger.warning(f"random sample {attempt} not in general position ({e}), resampling")
    raise BudgetExceededError(
        f"no configuration in general position after {SamplingConfig.RESAMPLE_BUDGET} attempts")


def scale_columns(V: VectorConfig, factors: Sequence) -> VectorConfig:
    if len(factors) != V.n:
        raise DimensionError(f"expected {V.n} factors, got {len(factors)}")
    factors = [rat(c) for c in factors]
    if any(c == 0 for c in factors):
        raise ParameterError("scale factors must be nonzero")
    return VectorConfig(Mat.from_columns(
        [[c * v for v in col] for c, col in zip(factors, V.columns())], rows=V.r))


def transform(V: VectorConfig, A: Mat) -> VectorConfig:
    """A V for an invertible r x r matrix A."""
    if A.shape != (V.r, V.r) or det(A) == 0:
        raise DimensionError(f"transform must be an invertible {V.r}x{V.r} matrix")
    return VectorConfig(A @ V.vectors, validate=False)


def gale_dual(V: VectorConfig) -> VectorConfig:
    """Rank n-r configuration whose row space is the orthogonal complement of V's."""
    if V.n == V.r:
        raise EmptyDualError(f"n = r = {V.n}: the Gale dual has rank 0")
    return VectorConfig(kernel_basis(V.vectors).T)


def contract(V: VectorConfig, i: int) -> VectorConfig:
    """V/v_i, the remaining vectors in coordinates of a basis of v_i's orthogonal complement."""
    _check_index(V, i)
    if V.r < 2:
        raise ParameterError("contraction needs rank at least 2")
    basis = kernel_basis(Mat([V.column(i)]))
    rest = V.vectors.select_columns([c for c in range(V.n) if c != i - 1])
    return VectorConfig(basis.T @ rest)


def delete(V: VectorConfig, i: int) -> VectorConfig:
    _check_index(V, i)
    if V.n - 1 < V.r:
        raise DimensionError(f"deleting from n = r = {V.n} leaves fewer vectors than the rank")
    return VectorConfig(V.vectors.select_columns([c for c in range(V.n) if c != i - 1]), validate=False)


def is_extremal(V: VectorConfig, subset: Sequence[int]) -> bool:
    """Whether the vectors of subset lie on a linear hyperplane with all others strictly on one side."""
    from vecconf.arrangement.faces import dissection_patterns

    subset = set(subset)
    for i in subset:
        _check_index(V, i)
    if len(subset) >= V.r:
        return False
    g = tuple(0 if i in subset else 1 for i in range(1, V.n + 1))
    return g in dissection_patterns(V)


def is_pointed(V: VectorConfig) -> bool:
    return is_extremal(V, ())


def neighborliness_degree(V: VectorConfig) -> int:
    """Largest j with every subset of at most j vectors extremal; -1 when V is not pointed."""
    from vecconf.arrangement.faces import dissection_patterns

    patterns = set(dissection_patterns(V))
    if tuple([1] * V.n) not in patterns:
        return -1
    j = 0
    while j + 1 <= V.r - 1:
        for subset in itertools.combinations(range(V.n), j + 1):
            g = tuple(0 if i in subset else 1 for i in range(V.n))
            if g not in patterns:
                return j
        j += 1
    return j


def coneighborliness_degree(V: VectorConfig) -> int:
    """Largest k with f_{s,t} = 0 for every t <= k; -1 when V is pointed."""
    from vecconf.arrangement.faces import f_matrix

    f = f_matrix(V)
    k = -1
    while k + 1 <= V.n and not f[:, k + 1].any():
        k += 1
    return k


def j_neighborly(V: VectorConfig, j: int) -> bool:
    return neighborliness_degree(V) >= j


def k_coneighborly(V: VectorConfig, k: int) -> bool:
    return coneighborliness_degree(V) >= k


def is_neighborly(V: VectorConfig) -> bool:
    return j_neighborly(V, (V.r - 1) // 2)


def is_coneighborly(V: VectorConfig) -> bool:
    return k_coneighborly(V, (V.n - V.r - 1) // 2)


def from_dict(data: dict, source: str = "<config>") -> VectorConfig:
    if not isinstance(data, dict):
        raise ConfigFormatError(source, "top level must be an object")
    for key in ("r", "n", "vectors"):
        if key not in data:
            raise ConfigFormatError(f"{source}: field {key!r}", "missing")
    r, n, cols = data["r"], data["n"], data["vectors"]
    if not isinstance(r, int) or not isinstance(n, int) or isinstance(r, bool) or isinstance(n, bool):
        raise ConfigFormatError(f"{source}: field 'r'/'n'", "must be integers")
    if not isinstance(cols, list) or len(cols) != n:
        raise ConfigFormatError(f"{source}: field 'vectors'", f"expected a list of {n} columns")
    entries = []
    for i, col in enumerate(cols):
        if not isinstance(col, list) or len(col) != r:
            raise ConfigFormatError(f"{source}: field 'vectors[{i}]'", f"expected {r} entries")
        row = []
        for k, value in enumerate(col):
            if isinstance(value, (bool, float)) or not isinstance(value, (int, str)):
                raise ConfigFormatError(f"{source}: field 'vectors[{i}][{k}]'",
                                        f"expected an integer or a \"p/q\" string, got {value!r}")
            try:
                row.append(rat(value))
            except ParameterError as e:
                raise ConfigFormatError(f"{source}: field 'vectors[{i}][{k}]'", str(e)) from None
        entries.append(row)
    return new_config(r, n, entries)


def from_json(text: str, source: str = "<string>") -> VectorConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigFormatError(f"{source}: line {e.lineno}, column {e.colno}", e.msg) from None
    return from_dict(data, source)


def to_json(V: VectorConfig) -> str:
    return json.dumps(V.to_dict(), sort_keys=True, indent=2)


def load_config(path: pathlib.Path | str) -> VectorConfig:
    path = pathlib.Path(path)
    with open(path, "r", encoding="utf-8") as f:
        return from_json(f.read(), source=str(path))
