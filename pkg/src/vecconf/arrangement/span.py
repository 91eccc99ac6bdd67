"""
Exact ranks of the spaces spanned by g-matrices, f-matrices and f*-matrices of
sampled configurations, against the dimensions predicted by the skew-symmetries.
"""
from typing import Sequence

import numpy as np
from loguru import logger

from vecconf.arrangement.algebra.exactnum import Mat, rank
from vecconf.arrangement.domain import ParameterError, SpanReport
from vecconf.arrangement.faces import f_matrix, fstar_matrix
from vecconf.arrangement.gmatrix import GMatrix, apply_S, g_from_fmatrices, mutation_increment
from vecconf.arrangement.motion import generic_path, interpolate_config, trace_rich_path
from vecconf.arrangement.vectors import VectorConfig, gen_cocyclic, gen_cyclic, gen_random
from vecconf.config import SamplingConfig
from vecconf.utils import parallel_map

MODES = ("general", "pointed")


def theoretical_dim(n: int, r: int, mode: str) -> int:
    if mode == "general":
        return ((r + 1) // 2) * ((n - r + 1) // 2)
    if mode == "pointed":
        return ((r - 1) // 2) * ((n - r + 1) // 2)
    raise ParameterError(f"unknown mode {mode!r}, expected one of {MODES}")


def flatten_small(g: GMatrix, mode: str) -> list[int]:
    """Small g-matrix as a flat vector; pointed mode drops the row j = 0."""
    small = g.small()
    if mode == "pointed":
        small = small[1:, :]
    return [int(v) for v in small.flat]


def greedy_basis(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subfamily, picked greedily in input order."""
    chosen: list[int] = []
    rows: list[list] = []
    for i, v in enumerate(vectors):
        candidate = rows + [list(v)]
        if rank(Mat(candidate)) > len(rows):
            rows = candidate
            chosen.append(i)
    return chosen


def _check_range(n: int, r: int, mode: str) -> None:
    theoretical_dim(n, r, mode)
    if not n > r >= 1:
        raise ParameterError(f"need n > r >= 1, got n={n}, r={r}")


def _motion_seeds(n: int, r: int, mode: str, seed: int) -> list[tuple[str, VectorConfig]]:
    """
    Start of a mutation sequence plus the configurations along it whose
    accumulated g-matrices are linearly independent
    """
    if mode == "general":
        path = generic_path(gen_cocyclic(n, r), gen_cyclic(n, r), seed)
        start = path.start
        configs = [interpolate_config(path.start, path.end, t) for t in path.samples]
        anchor = "cocyclic"
    else:
        rich = trace_rich_path(n, r, seed)
        path, start, configs, anchor = rich, rich.configs[0], rich.configs[1:], "rich-path[0]"
    acc = GMatrix.zeros(n, r)
    prefixes = []
    for event in path.events:
        acc = acc + mutation_increment(n, r, *event.type)
        prefixes.append(flatten_small(acc, mode))
    picked = greedy_basis(prefixes)
    label = "motion" if mode == "general" else "rich-path"
    logger.debug(f"{len(picked)} independent prefixes among {len(prefixes)} mutations")
    return [(anchor, start)] + [(f"{label}[{i + 1}]", configs[i]) for i in picked]


def sample_configs(n: int, r: int, mode: str, samples: int, seed: int | None = None) -> list[tuple[str, VectorConfig]]:
    """
    At most `samples` labelled configurations: the motion anchor and seeds first,
    then seeded random ones (pointed in pointed mode)
    """
    _check_range(n, r, mode)
    seed = SamplingConfig.SEED if seed is None else seed
    picked = _motion_seeds(n, r, mode, seed)[:samples]
    offset = 1
    while len(picked) < samples:
        picked.append((f"random[seed={seed + offset}]", gen_random(n, r, seed + offset, pointed=(mode == "pointed"))))
        offset += 1
    return picked


def _invariants(args: tuple[np.ndarray, np.ndarray, VectorConfig, bool]):
    f0, fstar0, V, with_fstar = args
    fV = f_matrix(V)
    g = g_from_fmatrices(f0, fV)
    if not with_fstar:
        return g, fV - f0, None
    dfstar = fstar_matrix(V) - fstar0
    assert np.array_equal(dfstar, apply_S(g)), "f*-difference differs from S(g)"
    return g, fV - f0, dfstar


def _span(n: int, r: int, mode: str, target: str, samples: int | None, seed: int | None) -> SpanReport:
    _check_range(n, r, mode)
    dim = theoretical_dim(n, r, mode)
    samples = dim + SamplingConfig.SPAN_EXTRA_SAMPLES if samples is None else samples
    labelled = sample_configs(n, r, mode, samples, seed)
    base = gen_cyclic(n, r)
    f0 = f_matrix(base)
    fstar0 = fstar_matrix(base) if target == "fstar" else None
    results = parallel_map(_invariants, [(f0, fstar0, V, target == "fstar") for _, V in labelled],
                           desc=f"Sampling (n,r)={(n, r)}")

    structure = all(g.is_skew_symmetric() for g, _, _ in results)
    if mode == "pointed":
        structure = structure and all(not g.g[0, :].any() for g, _, _ in results)
    g_vectors = [flatten_small(g, mode) for g, _, _ in results]
    if target == "g":
        vectors = g_vectors
    elif target == "f":
        vectors = [[int(v) for v in df.flat] for _, df, _ in results]
    else:
        vectors = [[int(v) for v in dfs.flat] for _, _, dfs in results]
    basis = greedy_basis(vectors)
    achieved = len(basis)
    g_rank = len(greedy_basis(g_vectors))
    assert achieved == g_rank, f"{target}-span rank {achieved} differs from g-span rank {g_rank}"
    if structure:
        assert achieved <= dim, f"rank {achieved} exceeds the dimension bound {dim}"
    report = SpanReport(
        n=n, r=r, mode=mode, target=target,
        samples_used=len(labelled),
        achieved_rank=achieved,
        theoretical_dim=dim,
        basis_seeds=[labelled[i][0] for i in basis],
        reached=achieved == dim,
        structure_holds=structure,
    )
    log = logger.info if report.reached and structure else logger.warning
    log(f"{target}-span (n,r)={(n, r)} {mode}: rank {achieved} of {dim} from {len(labelled)} samples")
    return report


def g_span_rank(n: int, r: int, mode: str = "general",
                samples: int | None = None, seed: int | None = None) -> SpanReport:
    """Rank of the small g-matrices g(cyclic -> V) over sampled V."""
    return _span(n, r, mode, "g", samples, seed)


def f_affine_span_rank(n: int, r: int, mode: str = "general",
                       samples: int | None = None, seed: int | None = None) -> SpanReport:
    """Rank of f(V) - f(cyclic) over sampled V."""
    return _span(n, r, mode, "f", samples, seed)


def fstar_affine_span_rank(n: int, r: int, samples: int | None = None, seed: int | None = None) -> SpanReport:
    """Rank of f*(V) - f*(cyclic) over sampled pointed V."""
    return _span(n, r, "pointed", "fstar", samples, seed)
