"""
Generic straight-line motions between configurations: every r-subset whose
determinant changes sign along the way is a mutation, typed by the signature
of the small simplex it creates. Summing the per-mutation increments gives the
g-matrix of the pair, which must agree with the algebraic route.
"""
import itertools
from fractions import Fraction
from typing import Sequence

from loguru import logger

from vecconf.arrangement.algebra.exactnum import (
    Mat,
    UniPoly,
    count_roots,
    det,
    dot,
    interpolate,
    isolate_roots,
    lerp,
    poly_gcd,
    refine_root,
    sign,
    sign_at_root,
    solve,
    sturm_sequence,
)
from vecconf.arrangement.domain import (
    BudgetExceededError,
    DimensionError,
    GeneralPositionError,
    GenericityError,
    MotionPath,
    MutationEvent,
    RichPath,
)
from vecconf.arrangement.faces import f_matrix
from vecconf.arrangement.gmatrix import GMatrix, g_of_pair, mutation_increment
from vecconf.arrangement.vectors import VectorConfig, gen_random, lift_points
from vecconf.config import MotionConfig, SamplingConfig
from vecconf.utils import dumps_json, parallel_map


def interpolate_config(V: VectorConfig, W: VectorConfig, t) -> VectorConfig:
    """V(t) = (1-t) V + t W"""
    return VectorConfig(lerp(V.vectors, W.vectors, t))


def det_polynomial(V: VectorConfig, W: VectorConfig, subset: Sequence[int]) -> UniPoly:
    """det of the columns in subset (0-based) along V(t), degree <= r."""
    a, b = V.vectors.select_columns(subset), W.vectors.select_columns(subset)
    return interpolate([(t, det(lerp(a, b, t))) for t in range(V.r + 1)])


def _cofactor_vector(columns: Mat, i: int) -> list[Fraction]:
    """w with <x, w> = det of columns with column i replaced by x."""
    r = columns.rows
    cols = columns.columns()
    w = []
    for c in range(r):
        unit = tuple(Fraction(int(c == e)) for e in range(r))
        w.append(det(Mat.from_columns(cols[:i] + [unit] + cols[i + 1:], rows=r)))
    return w


def _subset_roots(args: tuple[VectorConfig, VectorConfig, tuple[int, ...]]):
    V, W, subset = args
    p = det_polynomial(V, W, subset)
    intervals = isolate_roots(p, 0, 1)
    for iv in intervals:
        if not iv.simple:
            raise GenericityError([_one_based(subset)],
                                  f"det of {list(_one_based(subset))} has a multiple root in ({iv.lo}, {iv.hi})")
    return subset, p, [(iv.lo, iv.hi) for iv in intervals]


def _one_based(subset: Sequence[int]) -> tuple[int, ...]:
    return tuple(i + 1 for i in subset)


def canonical_type(j: int, k: int, n: int, r: int) -> tuple[int, int]:
    """(j, k) and (r-j, n-r-k) describe the same mutation; keep the smaller."""
    return min((j, k), (r - j, n - r - k))


def classify_event(V: VectorConfig, W: VectorConfig, subset: Sequence[int],
                   interval: tuple[Fraction, Fraction], antipodal: bool = False) -> tuple[int, int]:
    """
    Type (j, k) of the simplex created by the mutation of subset (0-based) at the
    root of its determinant isolated in interval

    The vertices of the small simplex are the cofactor vectors w_i(t), i in subset,
    oriented towards w_{i0} at the root. On the subset the signature is then
    eps_i * sgn det after the root; off the subset it is the sign of <v_m, w_{i0}>
    at the root. antipodal=True classifies the opposite simplex instead.
    """
    n, r = V.n, V.r
    lo, hi = interval
    p = det_polynomial(V, W, subset)
    a, b = V.vectors, W.vectors
    i0 = subset[0]

    def frame(t):
        cols = lerp(a, b, t)
        sub = cols.select_columns(subset)
        return cols, [_cofactor_vector(sub, pos) for pos in range(r)]

    # <w_i, w_i0> has degree <= 2(r-1), <v_m, w_i0> degree <= r
    frames = [frame(t) for t in range(max(2 * r - 1, r + 1))]
    after = sign(p(hi))
    signs: dict[int, int] = {}
    for pos, i in enumerate(subset):
        if i == i0:
            eps = 1
        else:
            q = interpolate([(t, dot(w[pos], w[0])) for t, (_, w) in enumerate(frames)])
            eps = sign_at_root(q, p, lo, hi)
        if eps == 0:
            raise GenericityError([_one_based(subset)],
                                  f"simplex vertices of {list(_one_based(subset))} degenerate at the root")
        signs[i] = eps * after
    for m in range(n):
        if m in signs:
            continue
        q = interpolate([(t, dot(cols.column(m), w[0])) for t, (cols, w) in enumerate(frames[:r + 1])])
        s = sign_at_root(q, p, lo, hi)
        if s == 0:
            raise GenericityError([_one_based(subset)],
                                  f"vector {m + 1} lies on the degenerate hyperplane of {list(_one_based(subset))}")
        signs[m] = s
    if antipodal:
        signs = {m: -s for m, s in signs.items()}
    j = sum(1 for i in subset if signs[i] < 0)
    k = sum(1 for m in range(n) if m not in subset and signs[m] < 0)
    return j, k


def _separate(roots: list[tuple[tuple[int, ...], UniPoly, Fraction, Fraction]]):
    """Refine isolating intervals of different subsets until they are pairwise disjoint."""
    seqs = {}
    rounds = 0
    while True:
        roots.sort(key=lambda e: (e[2], e[3]))
        clash = next(((x, y) for x, y in zip(roots, roots[1:]) if x[3] > y[2]), None)
        if clash is None:
            logger.debug(f"root intervals separated after {rounds} refinement rounds")
            return roots
        (sa, pa, la, ha), (sb, pb, lb, hb) = clash
        g = poly_gcd(pa, pb)
        if g.degree > 0 and count_roots(sturm_sequence(g), max(la, lb), min(ha, hb)) > 0:
            raise GenericityError([_one_based(sa), _one_based(sb)],
                                  f"subsets {list(_one_based(sa))} and {list(_one_based(sb))} degenerate simultaneously")
        for idx, (s, p, lo, hi) in enumerate(roots):
            if (s, lo) in ((sa, la), (sb, lb)):
                seq = seqs.setdefault(s, sturm_sequence(p))
                roots[idx] = (s, p, *refine_root(p, lo, hi, seq))
        rounds += 1


def detect_mutations(V: VectorConfig, W: VectorConfig) -> MotionPath:
    """Mutations of the straight-line motion from V to W, in the order they occur."""
    if (V.n, V.r) != (W.n, W.r):
        raise DimensionError(f"motion between different sizes {(V.n, V.r)} and {(W.n, W.r)}")
    subsets = list(itertools.combinations(range(V.n), V.r))
    found = parallel_map(_subset_roots, [(V, W, s) for s in subsets], desc="Isolating roots")
    roots = [(s, p, lo, hi) for s, p, ivs in found for lo, hi in ivs]
    roots = _separate(roots)
    polys = [p for _, p, _ in found]

    events, samples = [], []
    for idx, (s, p, lo, hi) in enumerate(roots):
        nxt = roots[idx + 1][2] if idx + 1 < len(roots) else Fraction(1)
        sample = (hi + nxt) / 2
        assert all(q(sample) != 0 for q in polys), f"sample {sample} is not generic"
        j, k = classify_event(V, W, s, (lo, hi))
        flip = ("+" if p(lo) > 0 else "-") + ("+" if p(hi) > 0 else "-")
        events.append(MutationEvent(_one_based(s), (lo, hi), canonical_type(j, k, V.n, V.r), flip))
        samples.append(sample)
    logger.debug(f"{len(events)} mutations between configurations of (n,r)={(V.n, V.r)}")
    return MotionPath(V, W, events, samples)


def perturb(W: VectorConfig, seed: int | None = None,
            magnitude: Fraction = MotionConfig.PERTURB_MAGNITUDE) -> VectorConfig:
    """Nudge every entry by a seed-determined rational of absolute value <= magnitude."""
    magnitude = Fraction(magnitude)
    if magnitude == 0:
        return W
    rng = SamplingConfig.rng(seed)
    for attempt in range(MotionConfig.PERTURB_RETRIES):
        noise = rng.integers(-1000, 1001, size=W.vectors.shape)
        entries = [[v + Fraction(int(e), 1000) * magnitude for v, e in zip(row, noise_row)]
                   for row, noise_row in zip(W.vectors.tolist(), noise)]
        try:
            return VectorConfig(Mat(entries, cols=W.n))
        except GeneralPositionError as e:
            logger.warning(f"perturbation {attempt} left general position ({e}), retrying")
    raise BudgetExceededError(f"no perturbation in general position after {MotionConfig.PERTURB_RETRIES} attempts")


def generic_path(V: VectorConfig, W: VectorConfig, seed: int | None = None) -> MotionPath:
    """
    detect_mutations, perturbing the target when the straight line is not generic

    A perturbed target is only accepted if its f-matrix equals that of W; the
    returned path ends at the perturbed target.
    """
    try:
        return detect_mutations(V, W)
    except GenericityError as e:
        logger.warning(f"straight-line motion is not generic ({e}), perturbing the target")
        failure = e
    base = SamplingConfig.SEED if seed is None else seed
    f_target = f_matrix(W)
    for attempt in range(MotionConfig.PERTURB_RETRIES):
        nudged = perturb(W, base + attempt)
        if (f_matrix(nudged) != f_target).any():
            logger.warning(f"perturbation {attempt} changed the f-matrix of the target, retrying")
            continue
        try:
            return detect_mutations(V, nudged)
        except GenericityError as e:
            logger.warning(f"perturbation {attempt} still not generic ({e})")
            failure = e
    raise failure


def g_along(path: MotionPath) -> GMatrix:
    """Sum of the mutation increments of the events of a path."""
    n, r = path.start.n, path.start.r
    g = GMatrix.zeros(n, r)
    for event in path.events:
        g = g + mutation_increment(n, r, *event.type)
    return g


def g_from_motion(V: VectorConfig, W: VectorConfig, seed: int | None = None) -> GMatrix:
    """g along a generic motion, checked against the algebraic g."""
    g = g_along(generic_path(V, W, seed))
    algebraic = g_of_pair(V, W)
    assert g == algebraic, f"motion g {g.g.tolist()} differs from algebraic g {algebraic.g.tolist()}"
    return g


def motion_trace_json(path: MotionPath) -> str:
    return dumps_json([e.to_dict() for e in path.events])


def _noise(rng, scale: Fraction) -> Fraction:
    return Fraction(int(rng.integers(-1000, 1001)), 1000) * scale


def _crossing(flat: Sequence[Sequence], x: Sequence) -> tuple[list[Fraction], Fraction] | None:
    """Affine coordinates of the point where the vertical line through x meets aff(flat), and its height."""
    d = len(x)
    rows = [[q[c] for q in flat] + [-int(c == d - 1)] for c in range(d)]
    rows.append([1] * d + [0])
    try:
        sol = solve(Mat(rows, cols=d + 1), list(x) + [1])
    except DimensionError:
        return None
    return sol[:d], sol[d]


def _line_point(anchors: list[list[Fraction]], sigma: Sequence[int], d: int) -> list[Fraction]:
    """Point of aff(anchors, 0) with affine coordinates (1+m)/|sigma| on sigma and -1 elsewhere."""
    m = d - len(sigma)
    alpha = [Fraction(1 + m, len(sigma)) if i in sigma else Fraction(-1) for i in range(d)]
    x = [Fraction(0)] * d
    for i, a in enumerate(anchors):
        x = [xc + alpha[i] * ac for xc, ac in zip(x, a)]
    return x


def _in_region(alpha: Sequence[Fraction], sigma: Sequence[int]) -> bool:
    return all((a > 0) if i in sigma else (a < 0) for i, a in enumerate(alpha))


def trace_rich_path(n: int, r: int, seed: int | None = None) -> RichPath:
    """
    A motion of a pointed configuration whose mutations include every type
    (j, k) with 1 <= j <= (r-1)/2 and 0 <= k <= (n-r-1)/2

    Points a_i = 4n e_i (i < d) stay fixed together with a cluster of n-d points
    near the origin; the last point p walks along lines perpendicular to
    aff(a_1, ..., a_{d-1}, 0), one line per size of sigma. Crossing the hyperplanes
    aff(a_1, ..., a_{d-1}, q) for the cluster points q yields mutations of type
    j = d - |sigma| + 1 and every k.
    """
    if r < 3:
        return RichPath([gen_random(n, r, seed, pointed=True)], [], 0)
    d = r - 1
    rng = SamplingConfig.rng(seed)
    anchors = [[Fraction(4 * n if c == i else 0) for c in range(d)] for i in range(d - 1)]
    sigmas = [tuple(range(size)) for size in range(1, d + 1)]
    required = {(j, k) for j in range(1, (r - 1) // 2 + 1) for k in range((n - r - 1) // 2 + 1)}
    eps = MotionConfig.EPSILON
    for _ in range(MotionConfig.EPSILON_RETRIES):
        cluster = [[_noise(rng, eps) for _ in range(d)] for _ in range(n - d)]
        for attempt in range(MotionConfig.PERTURB_RETRIES):
            lines = []
            for sigma in sigmas:
                x = _line_point(anchors, sigma, d)
                lines.append([xc + _noise(rng, eps) if c < d - 1 else xc for c, xc in enumerate(x)])
            valid = all(
                (hit := _crossing(anchors + [q], x)) is not None and _in_region(hit[0], sigma)
                for x, sigma in zip(lines, sigmas) for q in cluster
            )
            if not valid:
                break
            try:
                path = _run_stages(anchors + cluster, lines, n, d)
            except (GenericityError, GeneralPositionError) as e:
                logger.warning(f"rich path attempt {attempt} not generic ({e}), moving the lines")
                continue
            covered = {e.type for e in path.events}
            assert required <= covered, f"mutation types {sorted(required - covered)} never occurred"
            logger.info(f"rich path for (n,r)={(n, r)}: {len(path.events)} mutations in {path.stage_count} stages")
            return path
        else:
            raise BudgetExceededError(f"no generic rich path after {MotionConfig.PERTURB_RETRIES} attempts")
        eps /= 2
        logger.warning(f"cluster too wide for the lines, halving its radius to {eps}")
    raise BudgetExceededError(f"no valid cluster radius after {MotionConfig.EPSILON_RETRIES} halvings")


def _run_stages(stationary: list[list[Fraction]], lines: list[list[Fraction]], n: int, d: int) -> RichPath:
    waypoints = []
    for x in lines:
        heights = [hit[1] for flat in itertools.combinations(stationary, d)
                   if (hit := _crossing(list(flat), x)) is not None]
        reach = max((abs(h) for h in heights), default=Fraction(0)) + 1
        waypoints.append(x[:-1] + [x[-1] - reach])
        waypoints.append(x[:-1] + [x[-1] + reach])
    stops = [lift_points(stationary + [w]) for w in waypoints]
    configs, events = [stops[0]], []
    for a, b in zip(stops, stops[1:]):
        path = detect_mutations(a, b)
        events.extend(path.events)
        configs.extend(interpolate_config(a, b, t) for t in path.samples)
    return RichPath(configs, events, len(lines))


def mutation_rich_path(n: int, r: int, seed: int | None = None) -> list[VectorConfig]:
    """Pointed configurations, consecutive ones differing by a single mutation."""
    return trace_rich_path(n, r, seed).configs
