import json
from fractions import Fraction

import numpy as np
import pytest

from vecconf.arrangement.algebra.exactnum import UniPoly
from vecconf.arrangement.domain import GenericityError
from vecconf.arrangement.faces import f_matrix
from vecconf.arrangement.gmatrix import GMatrix, g_of_pair, mutation_delta_f
from vecconf.arrangement.motion import (
    canonical_type,
    classify_event,
    det_polynomial,
    detect_mutations,
    g_along,
    g_from_motion,
    generic_path,
    interpolate_config,
    motion_trace_json,
    mutation_rich_path,
    perturb,
    trace_rich_path,
)
from vecconf.arrangement.vectors import gen_random, is_pointed, new_config
from vecconf.config import MotionConfig


@pytest.fixture
def single_flip():
    V = new_config(2, 2, [[1, 0], [0, 1]])
    W = new_config(2, 2, [[1, 0], [1, -1]])
    return V, W


@pytest.fixture
def three_in_plane():
    V = new_config(2, 3, [[1, 0], [0, 1], [-1, -1]])
    W = new_config(2, 3, [[1, 0], [0, 1], [1, "9/10"]])
    return V, W


def test_det_polynomial(single_flip):
    assert det_polynomial(*single_flip, (0, 1)) == UniPoly([1, -2])


def test_interpolate_config_endpoints(three_in_plane):
    V, W = three_in_plane
    assert interpolate_config(V, W, 0) == V
    assert interpolate_config(V, W, 1) == W
    assert interpolate_config(V, W, Fraction(1, 4)).column(3) == (Fraction(-1, 2), Fraction(-21, 40))


def test_single_flip_event(single_flip):
    path = detect_mutations(*single_flip)
    (event,) = path.events
    assert event.subset == (1, 2)
    lo, hi = event.interval
    assert lo < Fraction(1, 2) < hi
    assert event.type == (1, 0)
    assert event.flip == "+-"
    assert path.samples == [(hi + 1) / 2]


def test_vector_through_origin_is_not_generic():
    V = new_config(2, 3, [[1, 0], [0, 1], [-1, -1]])
    W = new_config(2, 3, [[1, 0], [0, 1], [1, 1]])
    with pytest.raises(GenericityError) as info:
        detect_mutations(V, W)
    assert len(info.value.subsets) == 2


def test_two_events_in_order(three_in_plane):
    path = detect_mutations(*three_in_plane)
    assert [e.subset for e in path.events] == [(2, 3), (1, 3)]
    assert [e.type for e in path.events] == [(0, 0), (1, 0)]
    assert [e.flip for e in path.events] == ["+-", "-+"]
    first, second = path.events
    assert first.interval[0] < Fraction(1, 2) < first.interval[1]
    assert second.interval[0] < Fraction(10, 19) < second.interval[1]
    assert first.interval[1] <= second.interval[0]


def test_raw_type_canonicalises(three_in_plane):
    V, W = three_in_plane
    event = detect_mutations(V, W).events[0]
    j, k = classify_event(V, W, (1, 2), event.interval)
    assert canonical_type(j, k, 3, 2) == (0, 0)
    assert canonical_type(*classify_event(V, W, (1, 2), event.interval, antipodal=True), 3, 2) == (0, 0)


def test_canonical_type():
    assert canonical_type(2, 1, 3, 2) == (0, 0)
    assert canonical_type(1, 2, 7, 3) == (1, 2)
    assert canonical_type(2, 3, 7, 3) == (1, 1)


def test_g_from_motion_example(three_in_plane):
    assert g_from_motion(*three_in_plane) == GMatrix(3, 2, [[1, -1], [0, 0], [-1, 1]])
    assert g_along(detect_mutations(*three_in_plane)) == g_from_motion(*three_in_plane)


def test_trace_json(three_in_plane):
    trace = json.loads(motion_trace_json(detect_mutations(*three_in_plane)))
    assert [e["R"] for e in trace] == [[2, 3], [1, 3]]
    assert trace[0]["type"] == [0, 0]
    assert set(trace[0]) == {"R", "interval", "type", "flip"}
    assert all(isinstance(v, str) for v in trace[0]["interval"])


def test_perturb_is_small_and_deterministic():
    W = gen_random(5, 3, seed=7)
    a, b = perturb(W, seed=1), perturb(W, seed=1)
    assert a == b
    diff = np.array(a.vectors.array - W.vectors.array, dtype=object)
    assert all(abs(v) <= MotionConfig.PERTURB_MAGNITUDE for v in diff.flat)
    assert perturb(W, magnitude=0) is W


def test_generic_path_perturbs_degenerate_target(cocyclic5_3, cyclic5_3):
    path = generic_path(cocyclic5_3, cyclic5_3, seed=3)
    assert path.end != cyclic5_3
    assert np.array_equal(f_matrix(path.end), f_matrix(cyclic5_3))
    assert g_from_motion(cocyclic5_3, cyclic5_3, seed=3).small().tolist() == [[1], [2]]


@pytest.mark.parametrize("seed, n, r", [(1, 4, 2), (2, 5, 3), (3, 6, 3)])
def test_motion_agrees_with_algebra(seed, n, r):
    V, W = gen_random(n, r, seed=seed), gen_random(n, r, seed=seed + 100)
    assert g_from_motion(V, W, seed=seed) == g_of_pair(V, W)


def test_rich_path_covers_rank_three_types():
    path = trace_rich_path(6, 3, seed=5)
    assert len(path.configs) == len(path.events) + 1
    assert {(1, 0), (1, 1)} <= {e.type for e in path.events}
    assert path.stage_count == 2
    assert all(is_pointed(V) for V in path.configs)


def test_rich_path_for_low_rank_is_a_single_configuration():
    configs = mutation_rich_path(5, 2, seed=1)
    assert len(configs) == 1 and is_pointed(configs[0])


def _f_steps(path):
    """f-matrices at t = 0 and at the gap sample after each event."""
    configs = [path.start] + [interpolate_config(path.start, path.end, t) for t in path.samples]
    return [f_matrix(V) for V in configs]


@pytest.mark.parametrize("seed, n, r", [(1, 4, 2), (2, 5, 3), (3, 6, 3), (4, 6, 4)])
def test_each_event_changes_f_by_its_type(seed, n, r):
    path = generic_path(gen_random(n, r, seed=seed), gen_random(n, r, seed=seed + 100), seed=seed)
    steps = _f_steps(path)
    for event, before, after in zip(path.events, steps, steps[1:]):
        assert np.array_equal(after - before, mutation_delta_f(n, r, *event.type)), event


def test_f_is_constant_between_events(three_in_plane):
    path = detect_mutations(*three_in_plane)
    bounds = [e.interval for e in path.events]
    starts = [Fraction(0)] + [hi for _, hi in bounds]
    ends = [lo for lo, _ in bounds] + [Fraction(1)]
    for lo, hi in zip(starts, ends):
        quarter, three_quarters = lo + (hi - lo) / 4, lo + 3 * (hi - lo) / 4
        a = f_matrix(interpolate_config(path.start, path.end, quarter))
        b = f_matrix(interpolate_config(path.start, path.end, three_quarters))
        assert np.array_equal(a, b)


def test_rich_path_events_change_f_by_their_type():
    path = trace_rich_path(6, 3, seed=5)
    for event, before, after in zip(path.events, path.configs, path.configs[1:]):
        assert np.array_equal(f_matrix(after) - f_matrix(before), mutation_delta_f(6, 3, *event.type))


def test_motion_g_is_additive():
    A, B, C = (gen_random(5, 3, seed=s) for s in (61, 62, 63))
    assert g_from_motion(A, B, seed=1) + g_from_motion(B, C, seed=2) == g_from_motion(A, C, seed=3)
