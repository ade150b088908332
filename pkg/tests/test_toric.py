import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricgw.coefrings import QCoefficient
from toricgw.feynman import EdgeRule, partition_function_vev
from toricgw.toric import (
    PRESET_NAMES,
    DegenerateTorusError,
    SurfaceError,
    ToricSurface,
    WeightRatios,
    derive_tau,
    edge_series_to_classes,
    gv_extract,
    localization_weights,
    preset,
    z_localization,
    z_product,
)

W = QCoefficient.w_power(1)
Y = (W - 1 / W) ** 2


def test_preset_data():
    p2 = preset("p2")
    assert p2.s == (1, 1, 1) and p2.class_map == ((1,), (1,), (1,))
    b1 = preset("b1")
    assert b1.s == (0, -1, 0, 1)
    assert b1.class_map[2] == b1.class_map[0]
    assert b1.class_map[3] == (1, 1)
    assert preset("b3").s == (-1,) * 6
    assert preset("p1xp1").class_map == ((1, 0), (0, 1), (1, 0), (0, 1))
    with pytest.raises(KeyError):
        preset("p3")


def test_gradings():
    assert preset("p2").grading == (1,)
    assert preset("b2").grading == (3, 1, 1)
    assert preset("b3").grading == (3, 1, 1, 1)
    for name in PRESET_NAMES:
        s = preset(name)
        assert all(g > 0 for g in s.edge_grading)
    # for b2 and b3 the grading is anticanonical: deg C_i = 2 + s_i
    for name in ("b2", "b3"):
        s = preset(name)
        assert s.edge_grading == tuple(2 + x for x in s.s)


def test_surface_validation():
    good = preset("p2").to_json()
    assert ToricSurface.from_json(json.dumps(good)) == preset("p2")
    bad = dict(good, s=[1, 1, -2])
    with pytest.raises(SurfaceError, match="s_i > -2"):
        ToricSurface.from_json(bad)
    with pytest.raises(SurfaceError, match="close up"):
        ToricSurface.from_json(dict(good, s=[1, 1, 0]))
    with pytest.raises(SurfaceError, match="missing"):
        ToricSurface.from_json({"k": 3})
    with pytest.raises(SurfaceError):
        ToricSurface.from_json(dict(good, class_map=[[1], [1]]))


def test_derive_tau_examples():
    assert derive_tau(preset("p2"), 2).tau == (2, -1, Fraction(1, 2))
    with pytest.raises(DegenerateTorusError, match="vertex 1"):
        derive_tau(preset("p2"), 1)
    c = Fraction(7, 3)
    assert derive_tau(preset("p1xp1"), c).tau == (c, -1 / c, c, -1 / c)


@given(st.sampled_from(PRESET_NAMES), st.fractions(-6, 6, max_denominator=5))
@settings(max_examples=80, deadline=None)
def test_tau_constraint(name, c):
    surf = preset(name)
    try:
        tau = derive_tau(surf, c)
    except DegenerateTorusError:
        return
    assert tau.satisfies(surf.s)
    assert all(t != 0 for t in tau.tau)


def test_product_examples():
    z = z_product(preset("p2"), 2)
    assert z.coefficient((0,)) == 1
    assert z.coefficient((1,)) == -3 / Y
    z = z_product(preset("p1xp1"), 1)
    assert z.coefficient((1, 0)) == 2 / Y
    assert z.coefficient((0, 1)) == 2 / Y


def test_product_poles_at_roots_of_unity_only():
    z = z_product(preset("p2"), 3)
    for c in z.terms.values():
        den = c.canonical().den
        # every denominator divides a product of (w^{2n} - 1)
        probe = QCoefficient.one()
        for n in range(1, 7):
            probe = probe * (W ** (2 * n) - 1) ** 2
        assert (probe * c).is_laurent_polynomial()
        assert den.degree() > 0 or c == 1


def test_localization_trivial_degree():
    surf = preset("p2")
    assert z_localization(surf, derive_tau(surf, 2), 0) == z_product(surf, 0)


def test_localization_rejects_incompatible_tau():
    with pytest.raises(ValueError):
        z_localization(preset("p2"), WeightRatios((Fraction(1),) * 3), 1)


@pytest.mark.parametrize("name,D", [("p2", 2), ("p1xp1", 2), ("b1", 2), ("b2", 2), ("b3", 1)])
def test_dual_pipelines(name, D):
    surf = preset(name)
    prod = z_product(surf, D)
    for c in (Fraction(2), Fraction(5, 3)):
        assert z_localization(surf, derive_tau(surf, c), D) == prod


def test_operator_pipeline_matches_for_p2():
    surf = preset("p2")
    tau = derive_tau(surf, 3)
    wt = localization_weights(surf, tau, 2)
    edge = partition_function_vev(wt, EdgeRule.signs(surf.s), 2, weights=surf.edge_grading, genus_grading=False)
    assert edge_series_to_classes(surf, edge) == z_product(surf, 2)


def test_gv_examples():
    table = gv_extract(preset("p2"), 3)
    assert table[((1,), 0)] == 3
    assert table[((2,), 0)] == -6
    assert table[((3,), 0)] == 27
    assert table[((3,), 1)] == -10
    table = gv_extract(preset("p1xp1"), 2)
    assert table[((1, 0), 0)] == -2 and table[((0, 1), 0)] == -2
    assert table[((1, 1), 0)] == -4
    assert all(any(cls) for cls, _ in table)


def test_gv_local_f1():
    table = gv_extract(preset("b1"), 3)
    assert table == {((0, 1), 0): 1, ((1, 0), 0): -2, ((1, 1), 0): 3, ((2, 1), 0): 5}


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_gv_integral(name):
    table = gv_extract(preset(name), 3)
    assert table and all(isinstance(n, int) for n in table.values())
