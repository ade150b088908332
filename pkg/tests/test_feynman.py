import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricgw.coefrings import NovikovSeries
from toricgw.feynman import (
    EdgeRule,
    WeightTable,
    edge_variables,
    free_energy,
    partition_function_graphsum,
    partition_function_vev,
    random_weight_table,
)
from toricgw.graphs import enumerate_graphs

A, B = Fraction(2), Fraction(3)
AB_TABLE = WeightTable(2, {(0, (1,), (1,)): A, (1, (1,), (1,)): B})


def test_zero_weights_give_one():
    z = partition_function_vev(WeightTable(3, {}), EdgeRule.plain(3), 3)
    assert z == NovikovSeries.one(edge_variables(3), 3)


def test_alternating_cycle_example():
    for z in (partition_function_vev(AB_TABLE, EdgeRule.plain(2), 4),
              partition_function_graphsum(AB_TABLE, EdgeRule.plain(2), 4)):
        assert z.terms == {((0, 0), 0): 1, ((1, 1), 0): A * B, ((2, 2), 0): (A * B) ** 2}


def test_unbalanced_table_gives_one():
    wt = WeightTable(2, {(0, (1,), ()): Fraction(5)})
    z = partition_function_vev(wt, EdgeRule.plain(2), 3)
    assert z == NovikovSeries.one(edge_variables(2), 3)


def test_connected_sum_example():
    f = partition_function_graphsum(AB_TABLE, EdgeRule.plain(2), 4, connected_only=True)
    assert f.coefficient((0, 0)) == 0
    assert f.coefficient((2, 2)) == (A * B) ** 2 / 2
    assert free_energy(partition_function_vev(AB_TABLE, EdgeRule.plain(2), 4)) == f


def test_free_energy_requires_unit_constant():
    assert free_energy(NovikovSeries.one(("t",), 3)).is_zero()
    with pytest.raises(ValueError):
        free_energy(NovikovSeries.zero(("t",), 3))


def test_edge_rule_signs():
    z = partition_function_graphsum(AB_TABLE, EdgeRule((-1, 1)), 4)
    assert z.coefficient((1, 1)) == -A * B
    assert z.coefficient((2, 2)) == (A * B) ** 2


def test_lambda_exponent_is_twice_genus_minus_two():
    wt = random_weight_table(3, 3, random.Random(1))
    f = partition_function_graphsum(wt, EdgeRule.plain(3), 3, connected_only=True)
    for (d, lam), _ in f.terms.items():
        allowed = {2 * g.genus - 2 for g, _ in enumerate_graphs(3, d, connected_only=True)}
        assert lam in allowed
    z = partition_function_vev(wt, EdgeRule.plain(3), 3)
    for (d, lam), _ in z.terms.items():
        if any(d):
            assert lam in {2 * g.genus - 2 for g, _ in enumerate_graphs(3, d)}


@given(st.integers(0, 10_000), st.sampled_from([2, 3]))
@settings(max_examples=8, deadline=None)
def test_duality_random_tables(seed, k):
    wt = random_weight_table(k, 2, random.Random(seed))
    er = EdgeRule(tuple(Fraction(random.Random(seed + 1).randint(1, 3)) for _ in range(k)))
    full = partition_function_graphsum(wt, er, 2)
    assert partition_function_vev(wt, er, 2) == full
    assert partition_function_graphsum(wt, er, 2, connected_only=True).exp() == full


def test_weighted_truncation_agrees():
    wt = random_weight_table(2, 3, random.Random(5))
    g = (1, 2)
    a = partition_function_vev(wt, EdgeRule.plain(2), 4, weights=g)
    b = partition_function_graphsum(wt, EdgeRule.plain(2), 4, weights=g)
    assert a == b
    assert all(a.degree_of(e) <= 4 for (e, _) in a.terms)


def test_empty_atom_rejected():
    with pytest.raises(ValueError):
        WeightTable(2, {(0, (), ()): 1})
