import itertools
import math

import pytest

from hecke_workbench.root_data import (
    CartanType, affine_diagram, build_root_system, diagram_automorphisms, dominant_representative,
    is_dominant, parse_cartan, weyl_orbit,
)

ALL_TYPES = ["A1", "A2", "A3", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "F4", "G2", "E6"]


def _orbit_size_of_regular(rs):
    # a strictly dominant coweight has a free W0-orbit
    return len(weyl_orbit(rs, (1,) * rs.rank))


@pytest.mark.parametrize("name", ALL_TYPES)
def test_weyl_order_matches_orbit_count(name):
    rs = build_root_system(parse_cartan(name))
    assert rs.weyl_order == _orbit_size_of_regular(rs)


@pytest.mark.parametrize("name, count", [
    ("A1", 1), ("A3", 6), ("B3", 9), ("C4", 16), ("D4", 12), ("G2", 6), ("F4", 24), ("E6", 36),
])
def test_positive_root_counts(name, count):
    assert len(build_root_system(parse_cartan(name)).positive_roots) == count


@pytest.mark.parametrize("name", ALL_TYPES)
def test_highest_root_is_dominant_and_root_data_consistent(name):
    rs = build_root_system(parse_cartan(name))
    a = rs.cartan_matrix
    theta = rs.highest_root
    assert all(sum(a[i][j] * theta[j] for j in range(rs.rank)) >= 0 for i in range(rs.rank))
    for beta in rs.positive_roots:
        assert all(x >= 0 for x in beta)
        for i in range(rs.rank):
            image = rs.reflect_root(i, beta)
            assert image in rs.positive_roots or tuple(-x for x in image) in rs.positive_roots


@pytest.mark.parametrize("name, order", [
    ("A1", 2), ("A3", 4), ("B3", 2), ("C3", 2), ("D4", 4), ("D5", 4), ("E6", 3), ("G2", 1), ("F4", 1),
])
def test_fundamental_group_order(name, order):
    assert build_root_system(parse_cartan(name)).fundamental_group_order == order


def test_invalid_cartan_types():
    for bad in ["B1", "C1", "D3", "E9", "G3", "X2", "A0", "A"]:
        with pytest.raises(ValueError):
            parse_cartan(bad)


@pytest.mark.parametrize("name", ["A2", "B3", "G2"])
def test_orbit_has_one_dominant_element(name):
    rs = build_root_system(parse_cartan(name))
    for c in itertools.product(range(-2, 3), repeat=rs.rank):
        orbit = weyl_orbit(rs, c)
        dominant = [x for x in orbit if is_dominant(rs, x)]
        assert dominant == [dominant_representative(rs, c)]
        assert rs.weyl_order % len(orbit) == 0


@pytest.mark.parametrize("name, m, comps", [
    ("A1", 2, [("s1",), ("s0",)]),
    ("C2", 3, [("s1",), ("s2",), ("s0",)]),
    ("C3", 3, [("s1", "s2"), ("s3",), ("s0",)]),
    ("G2", 2, [("s2", "s0"), ("s1",)]),
    ("B3", 2, [("s1", "s2", "s0"), ("s3",)]),
    ("D4", 1, None),
    ("A3", 1, None),
])
def test_affine_components(name, m, comps):
    dyn = affine_diagram(parse_cartan(name))
    assert dyn.m == m
    if comps is not None:
        assert [tuple(c) for c in dyn.components] == comps


@pytest.mark.parametrize("name, order", [("A1", 2), ("A2", 6), ("A3", 8), ("C3", 2), ("B3", 2),
                                         ("D4", 24), ("E6", 6), ("G2", 1), ("F4", 1)])
def test_diagram_automorphism_counts(name, order):
    assert len(diagram_automorphisms(affine_diagram(parse_cartan(name)))) == order


def test_params_validation():
    ct = CartanType("C", 2)
    assert affine_diagram(ct, (3, 2, 2)).params == {"s1": 3, "s2": 2, "s0": 2}
    with pytest.raises(ValueError, match="params"):
        affine_diagram(ct, (1, 2))
    with pytest.raises(ValueError):
        affine_diagram(ct, (0, 1, 1))
    with pytest.raises(ValueError, match="constant"):
        affine_diagram(parse_cartan("A2"), (1, 2, 1))


def test_diagram_automorphisms_respect_params():
    dyn = affine_diagram(parse_cartan("C2"), (1, 1, 2))
    assert len(diagram_automorphisms(dyn)) == 1


def test_weyl_order_formula_type_a():
    for n in range(1, 6):
        assert build_root_system(CartanType("A", n)).weyl_order == math.factorial(n + 1)
