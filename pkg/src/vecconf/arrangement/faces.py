"""
Dissection patterns (faces of the sphere arrangement) and dependency
patterns of a configuration, and their f- / f*-matrix histograms.
"""
import functools
import itertools
import math
from typing import Iterable, Sequence

import numpy as np
from loguru import logger

from vecconf.arrangement.algebra.exactnum import dot, kernel_basis, sign
from vecconf.arrangement.algebra.poly2 import BiPoly
from vecconf.arrangement.domain import BudgetExceededError, SignVector, sign_string
from vecconf.arrangement.vectors import VectorConfig, gale_dual
from vecconf.config import EnumConfig


def signature_of(V: VectorConfig, u: Sequence) -> SignVector:
    """(sgn <v_i, u>)_i"""
    return tuple(sign(dot(col, u)) for col in V.columns())


@functools.lru_cache(maxsize=512)
def _dissection_patterns(V: VectorConfig) -> tuple[SignVector, ...]:
    d = V.d
    found: set[SignVector] = set()
    for subset in itertools.combinations(range(V.n), d):
        # general position: the d vectors span a hyperplane, its normal is a vertex
        u = kernel_basis(V.vectors.select_columns(subset).T).column(0)
        for direction in (1, -1):
            vertex = list(signature_of(V, [direction * c for c in u]))
            for assignment in itertools.product((-1, 0, 1), repeat=d):
                for i, s in zip(subset, assignment):
                    vertex[i] = s
                found.add(tuple(vertex))
    logger.debug(f"{len(found)} dissection patterns from {2 * math.comb(V.n, d)} vertices")
    return tuple(sorted(found))


def dissection_patterns(V: VectorConfig) -> list[SignVector]:
    """Every face signature of the arrangement of V, sorted with - < 0 < +."""
    return list(_dissection_patterns(V))


def dependency_patterns(V: VectorConfig) -> list[SignVector]:
    """Sign vectors of the nontrivial linear dependencies of V; empty when n = r."""
    if V.n == V.r:
        return []
    return dissection_patterns(gale_dual(V))


def f_matrix_of_patterns(patterns: Iterable[SignVector], n: int, d: int) -> np.ndarray:
    f = np.zeros((d + 1, n + 1), dtype=np.int64)
    for F in patterns:
        s = F.count(0)
        assert s <= d, f"face {sign_string(F)} has {s} zeros in dimension {d}"
        f[s, F.count(-1)] += 1
    return f


def fstar_matrix_of_patterns(patterns: Iterable[SignVector], n: int) -> np.ndarray:
    fstar = np.zeros((n + 1, n + 1), dtype=np.int64)
    for F in patterns:
        fstar[n - F.count(0), F.count(-1)] += 1
    return fstar


def f_matrix(V: VectorConfig) -> np.ndarray:
    """(d+1) x (n+1) matrix, entry (s, t) counts faces with s zeros and t minus signs."""
    return f_matrix_of_patterns(_dissection_patterns(V), V.n, V.d)


def fstar_matrix(V: VectorConfig) -> np.ndarray:
    """(n+1) x (n+1) matrix, entry (s, t) counts dependencies with support s and t minus signs."""
    return fstar_matrix_of_patterns(dependency_patterns(V), V.n)


def conforms(F: SignVector, G: SignVector) -> bool:
    """F <= G: F_+ inside G_+ and F_- inside G_-."""
    return all(f == 0 or f == g for f, g in zip(F, G))


def farkas_complement_oracle(V: VectorConfig) -> list[SignVector]:
    """
    Dependency patterns computed independently of the Gale dual: the nonzero
    sign vectors that conform to no dissection pattern.
    """
    if V.n > EnumConfig.FARKAS_MAX_N:
        raise BudgetExceededError(
            f"3^{V.n} sign vectors exceed the oracle limit n <= {EnumConfig.FARKAS_MAX_N}")
    below: set[SignVector] = set()
    topes = [G for G in _dissection_patterns(V) if 0 not in G]
    for T in topes:
        for mask in itertools.product((False, True), repeat=V.n):
            below.add(tuple(0 if z else s for s, z in zip(T, mask)))
    return [F for F in itertools.product((-1, 0, 1), repeat=V.n) if any(F) and F not in below]


def f_polynomial(f: np.ndarray) -> BiPoly:
    """sum f_{s,t} x^s y^t"""
    return BiPoly.from_matrix(f)


def fstar_polynomial(fstar: np.ndarray) -> BiPoly:
    """sum f*_{s,t} x^(n-s) y^t, the exponent of x counting the zeros of a dependency."""
    n = fstar.shape[0] - 1
    return BiPoly({(n - s, t): int(fstar[s, t])
                   for s in range(n + 1) for t in range(n + 1) if fstar[s, t]})


def fstar_matrix_of_polynomial(p: BiPoly, n: int) -> np.ndarray:
    window = p.to_matrix(n + 1, n + 1)
    return np.array(window[::-1, :], dtype=np.int64)


def patterns_to_strings(patterns: Iterable[SignVector]) -> list[str]:
    return [sign_string(F) for F in patterns]


def matrix_to_dict(f: np.ndarray, **header) -> dict:
    return {**header, "rows": [[int(v) for v in row] for row in f]}
