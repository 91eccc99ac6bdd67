"""
Exact checks of the linear and polynomial identities satisfied by f- and
f*-matrices: antipodal symmetry, face totals, Dehn-Sommerville and the
f / f* transform.
"""
from math import comb

import numpy as np
from loguru import logger

from vecconf.arrangement.algebra.poly2 import ONE, X, Y, BiPoly
from vecconf.arrangement.domain import DimensionError, ParameterError, RelationReport
from vecconf.arrangement.faces import (
    dependency_patterns,
    f_matrix,
    f_polynomial,
    farkas_complement_oracle,
    fstar_matrix,
    fstar_polynomial,
)
from vecconf.arrangement.vectors import VectorConfig, gale_dual
from vecconf.config import EnumConfig

FMatrixLike = VectorConfig | np.ndarray


def make_report(name: str, witness: str | None) -> RelationReport:
    if witness is None:
        logger.debug(f"{name}: holds")
        return RelationReport(name, True)
    logger.error(f"{name}: violated, {witness}")
    return RelationReport(name, False, witness)


def _as_fmatrix(value: FMatrixLike) -> np.ndarray:
    if isinstance(value, VectorConfig):
        return f_matrix(value)
    return np.asarray(value)


def total_face_count(n: int, d: int, s: int) -> int:
    """Number of (d-s)-dimensional faces of any simple arrangement of n great spheres in S^d."""
    if not 0 <= s <= d:
        raise ParameterError(f"need 0 <= s <= d, got s={s}, d={d}")
    if n < d + 1:
        raise ParameterError(f"need n >= d + 1, got n={n}, d={d}")
    by_level = 2 * comb(n, s) * sum(comb(n - s - 1, i) for i in range(d - s + 1))
    by_support = sum((1 + (-1) ** i) * comb(n, d - i) * comb(d - i, s) for i in range(d + 1))
    assert by_level == by_support, f"face total forms disagree at n={n}, d={d}, s={s}"
    return by_level


def totals_polynomial(n: int, d: int) -> BiPoly:
    """f(x, 1), the same for every configuration: sum_i C(n,i) (1 + (-1)^(d-i)) (1+x)^i"""
    return sum(((1 + X) ** i * (comb(n, i) * (1 + (-1) ** (d - i))) for i in range(d + 1)), BiPoly())


def check_antipodal(value: FMatrixLike) -> RelationReport:
    f = _as_fmatrix(value)
    d, n = f.shape[0] - 1, f.shape[1] - 1
    witness = None
    for s in range(d + 1):
        for t in range(n + 1):
            mirror = n - s - t
            if (mirror < 0 and f[s, t] != 0) or (mirror >= 0 and f[s, t] != f[s, mirror]):
                witness = f"({s},{t})"
                break
        if witness:
            break
    return make_report("antipodal", witness)


def check_totals(value: FMatrixLike) -> RelationReport:
    f = _as_fmatrix(value)
    d, n = f.shape[0] - 1, f.shape[1] - 1
    expected = totals_polynomial(n, d)
    witness = None
    for s in range(d + 1):
        row = int(f[s].sum())
        if row != expected.coeff(s, 0) or row != total_face_count(n, d, s):
            witness = f"row {s}: sum {row}, expected {total_face_count(n, d, s)}"
            break
    return make_report("totals", witness)


def ds_residual_substitution(value: FMatrixLike) -> np.ndarray:
    """f(x,y) - (-1)^d f(-(x+y+1), y) as a (d+1) x (n+d+1) coefficient window."""
    f = _as_fmatrix(value)
    d, n = f.shape[0] - 1, f.shape[1] - 1
    p = f_polynomial(f)
    residual = p - p.substitute(-(X + Y + ONE), Y) * (-1) ** d
    return residual.to_matrix(d + 1, n + d + 1)


def ds_residual_coefficients(value: FMatrixLike) -> np.ndarray:
    """f_{s,t} - sum_{j,l} (-1)^(d-j) C(j,s) C(j-s,t-l) f_{j,l}, same window as the substitution form."""
    f = _as_fmatrix(value)
    d, n = f.shape[0] - 1, f.shape[1] - 1
    out = np.zeros((d + 1, n + d + 1), dtype=object)
    for s in range(d + 1):
        for t in range(n + d + 1):
            acc = 0
            for j in range(s, d + 1):
                for l in range(max(0, t - (j - s)), min(t, n) + 1):
                    acc += (-1) ** (d - j) * comb(j, s) * comb(j - s, t - l) * int(f[j, l])
            out[s, t] = (int(f[s, t]) if t <= n else 0) - acc
    return out


def _first_nonzero(m: np.ndarray) -> tuple[int, int] | None:
    nz = np.argwhere(m != 0)
    return (int(nz[0][0]), int(nz[0][1])) if len(nz) else None


def check_dehn_sommerville(value: FMatrixLike) -> RelationReport:
    """Checked as the polynomial substitution identity and coefficient-wise; both must agree."""
    by_sub = ds_residual_substitution(value)
    by_coef = ds_residual_coefficients(value)
    witness = None
    if not np.array_equal(by_sub, by_coef):
        s, t = _first_nonzero(by_sub - by_coef)
        witness = f"substitution and coefficient forms disagree at ({s},{t})"
    elif (first := _first_nonzero(by_sub)) is not None:
        witness = f"({first[0]},{first[1]}): residual {by_sub[first]}"
    return make_report("dehn-sommerville", witness)


def ds_residual_polytope(value: FMatrixLike) -> np.ndarray:
    """f(x,0) - (-1)^d f(-(x+1),0), coefficients of x^0..x^d; the face numbers of the 0-level."""
    f = _as_fmatrix(value)
    d = f.shape[0] - 1
    p = BiPoly.from_matrix(f[:, :1])
    residual = p - p.substitute(-(X + ONE), BiPoly()) * (-1) ** d
    return residual.to_matrix(d + 1, 1)[:, 0]


def check_polytope_dehn_sommerville(value: FMatrixLike) -> RelationReport:
    residual = ds_residual_polytope(value)
    nz = np.flatnonzero(residual != 0)
    witness = f"x^{nz[0]}: residual {residual[nz[0]]}" if len(nz) else None
    return make_report("polytope-dehn-sommerville", witness)


def ds_residual_sublevel(value: FMatrixLike, k: int) -> np.ndarray:
    """
    Dehn-Sommerville residuals of the (<= k)-sublevel, shape (d+1, k+1)

    Column t only involves f_{j,l} with l <= t, so the residual is computed from
    the columns 0..k alone.
    """
    f = _as_fmatrix(value)
    n = f.shape[1] - 1
    if not 0 <= k <= n:
        raise ParameterError(f"need 0 <= k <= n, got k={k}, n={n}")
    truncated = np.zeros_like(f)
    truncated[:, :k + 1] = f[:, :k + 1]
    return ds_residual_coefficients(truncated)[:, :k + 1]


def check_sublevel_dehn_sommerville(value: FMatrixLike, k: int) -> RelationReport:
    first = _first_nonzero(ds_residual_sublevel(value, k))
    witness = None if first is None else f"({first[0]},{first[1]})"
    return make_report(f"sublevel-dehn-sommerville[k={k}]", witness)


def f_fstar_transform(p: BiPoly, n: int, r: int, direction: str = "f->f*") -> BiPoly:
    """
    Convert an f-polynomial into the f*-polynomial of the same configuration, or back

    (x+y+1)^n - (-1)^r x^n - sum p_{s,t} (-x)^s (x+y)^t (x+1)^(n-s-t)

    computes f* from f; the reverse direction uses the Gale dual rank n-r in place of r.

    Args:
        p (BiPoly): f-polynomial (sum f_{s,t} x^s y^t) or f*-polynomial (sum f*_{s,t} x^(n-s) y^t)
        n (int): number of vectors
        r (int): rank of the configuration p belongs to
        direction (str): "f->f*" or "f*->f"
    """
    if direction == "f->f*":
        max_x, sign_rank = r - 1, r
    elif direction == "f*->f":
        max_x, sign_rank = n - r - 1, n - r
    else:
        raise ParameterError(f"unknown direction {direction!r}")
    if not p.is_zero() and (p.deg_x > max_x or p.total_degree > n):
        raise DimensionError(
            f"{p.to_text()} leaves the window deg_x <= {max_x}, total degree <= {n}")
    shifted = BiPoly()
    for (s, t), c in p.terms.items():
        shifted = shifted + (-X) ** s * (X + Y) ** t * (X + ONE) ** (n - s - t) * c
    return (X + Y + ONE) ** n - X ** n * (-1) ** sign_rank - shifted


def check_fstar_duality(V: VectorConfig) -> RelationReport:
    """Dependency patterns against the Farkas oracle, f* against f of the dual, and the transform."""
    f, fstar = f_matrix(V), fstar_matrix(V)
    witness = None
    if V.n <= EnumConfig.FARKAS_MAX_N and dependency_patterns(V) != farkas_complement_oracle(V):
        witness = "dependency patterns differ from the Farkas complement"
    elif V.n > V.r:
        fdual = f_matrix(gale_dual(V))
        for s in range(V.r + 1, V.n + 1):
            if not np.array_equal(fstar[s, :], fdual[V.n - s, :]):
                witness = f"f*_{s} differs from row {V.n - s} of the dual f-matrix"
                break
    if witness is None:
        fpoly, fstar_poly = f_polynomial(f), fstar_polynomial(fstar)
        if f_fstar_transform(fpoly, V.n, V.r, "f->f*") != fstar_poly:
            witness = "transformed f-polynomial differs from the f*-polynomial"
        elif f_fstar_transform(fstar_poly, V.n, V.r, "f*->f") != fpoly:
            witness = "f* -> f does not restore the f-polynomial"
    return make_report("fstar-duality", witness)


def check_pointed_duality(V: VectorConfig) -> RelationReport:
    """f_{0,0} = 1 exactly when f*_{n,0} = 0."""
    pointed = f_matrix(V)[0, 0] == 1
    no_positive_dependency = fstar_matrix(V)[V.n, 0] == 0
    witness = None
    if pointed != no_positive_dependency:
        witness = f"f_00 pointed={bool(pointed)} but f*_n0 zero={bool(no_positive_dependency)}"
    return make_report("pointed-duality", witness)
