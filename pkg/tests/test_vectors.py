from fractions import Fraction

import pytest

from vecconf.arrangement.algebra.exactnum import Mat
from vecconf.arrangement.domain import (
    ConfigFormatError,
    DimensionError,
    EmptyDualError,
    GeneralPositionError,
    ParameterError,
)
from vecconf.arrangement.vectors import (
    coneighborliness_degree,
    contract,
    delete,
    from_json,
    gale_dual,
    gen_cocyclic,
    gen_cyclic,
    gen_random,
    is_coneighborly,
    is_extremal,
    is_neighborly,
    is_pointed,
    lift_points,
    neighborliness_degree,
    new_config,
    scale_columns,
    to_json,
    transform,
)


def test_general_position_violation_names_subset():
    with pytest.raises(GeneralPositionError) as info:
        new_config(2, 3, [[1, 0], [2, 0], [0, 1]])
    assert info.value.subset == (1, 2)


def test_too_few_vectors():
    with pytest.raises(DimensionError):
        new_config(3, 2, [[1, 0, 0], [0, 1, 0]])


def test_columns_are_one_based(three_vectors):
    assert three_vectors.column(3) == (1, 1)
    assert (three_vectors.r, three_vectors.n, three_vectors.d) == (2, 3, 1)
    with pytest.raises(ParameterError):
        three_vectors.column(0)


def test_cyclic_and_cocyclic_columns():
    V = gen_cyclic(4, 3)
    assert V.columns() == [(1, 0, 0), (1, 1, 1), (1, 2, 4), (1, 3, 9)]
    W = gen_cocyclic(3, 2, (0, 1, 2))
    assert W.columns() == [(-1, 0), (1, 1), (-1, -2)]


def test_cyclic_rational_params():
    V = gen_cyclic(3, 2, ["-1/2", "0", "3"])
    assert V.column(1) == (1, Fraction(-1, 2))


@pytest.mark.parametrize("params", [(0, 2, 1), (0, 1)])
def test_cyclic_rejects_bad_params(params):
    with pytest.raises(ParameterError):
        gen_cyclic(3, 2, params)


def test_random_is_seed_deterministic():
    assert gen_random(6, 3, seed=5) == gen_random(6, 3, seed=5)
    assert gen_random(6, 3, seed=5) != gen_random(6, 3, seed=6)


def test_random_pointed_lifts_points():
    V = gen_random(7, 4, seed=1, pointed=True)
    assert all(col[0] == 1 for col in V.columns())
    assert is_pointed(V)


def test_lift_points():
    V = lift_points([[0, 0], [1, 0], [0, 1]])
    assert V.columns() == [(1, 0, 0), (1, 1, 0), (1, 0, 1)]


def test_gale_dual_is_orthogonal_complement():
    V = gen_cyclic(6, 3)
    D = gale_dual(V)
    assert (D.r, D.n) == (3, 6)
    assert (V.vectors @ D.vectors.T).is_zero()


def test_gale_dual_of_square_configuration():
    with pytest.raises(EmptyDualError):
        gale_dual(new_config(2, 2, [[1, 0], [0, 1]]))


def test_contract_and_delete_shapes():
    V = gen_cyclic(6, 3)
    C = contract(V, 2)
    assert (C.r, C.n) == (2, 5)
    Dl = delete(V, 6)
    assert (Dl.r, Dl.n) == (3, 5)
    assert Dl.column(5) == V.column(5)
    with pytest.raises(ParameterError):
        contract(V, 7)


def test_scale_and_transform():
    V = gen_cyclic(4, 2)
    S = scale_columns(V, [2, "1/3", 5, 1])
    assert S.column(2) == (Fraction(1, 3), Fraction(1, 3))
    with pytest.raises(ParameterError):
        scale_columns(V, [1, 0, 1, 1])
    with pytest.raises(DimensionError):
        transform(V, Mat([[1, 1], [1, 1]]))
    assert transform(V, Mat([[0, 1], [1, 0]])).column(2) == (1, 1)


def test_cyclic_is_pointed_and_neighborly():
    V = gen_cyclic(6, 3)
    assert is_pointed(V)
    assert is_neighborly(V)
    assert neighborliness_degree(V) >= 1
    assert is_extremal(V, (1, 2))
    assert not is_extremal(V, (1, 3))


def test_cocyclic_is_coneighborly_not_pointed(cocyclic5_3):
    assert not is_pointed(cocyclic5_3)
    assert neighborliness_degree(cocyclic5_3) == -1
    assert is_coneighborly(cocyclic5_3)


def test_json_round_trip(three_vectors):
    assert from_json(to_json(three_vectors)) == three_vectors


def test_json_syntax_error_has_line_and_column():
    with pytest.raises(ConfigFormatError) as info:
        from_json('{"r": 2,\n "n": 3,', source="bad.json")
    assert info.value.location.startswith("bad.json: line ")
    assert "column" in info.value.location


@pytest.mark.parametrize("text, location", [
    ('{"r": 2, "n": 2, "vectors": [["1", "0"], ["0", 1.5]]}', "field 'vectors[1][1]'"),
    ('{"r": 2, "n": 2, "vectors": [["1", "0"], ["0", "1/0"]]}', "field 'vectors[1][1]'"),
    ('{"r": 2, "n": 2, "vectors": [["1", "0"]]}', "field 'vectors'"),
    ('{"r": 2, "vectors": []}', "field 'n'"),
])
def test_json_field_diagnostics(text, location):
    with pytest.raises(ConfigFormatError) as info:
        from_json(text, source="cfg.json")
    assert location in info.value.location


def test_cocyclic_six_three_is_one_coneighborly():
    assert coneighborliness_degree(gen_cocyclic(6, 3)) >= 1


def test_singletons_of_cocyclic_are_not_extremal():
    V = gen_cocyclic(7, 3)
    assert not any(is_extremal(V, (i,)) for i in range(1, 8))


def test_singletons_of_cyclic_are_extremal():
    V = gen_cyclic(5, 3)
    assert all(is_extremal(V, (i,)) for i in range(1, 6))
