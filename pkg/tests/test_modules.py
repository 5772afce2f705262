import dataclasses
import random

import pytest

from hecke_workbench.hecke import HeckeAlgebra, make_datum
from hecke_workbench.laurent import HalfLaurent, NotIntegralError
from hecke_workbench.modules import (
    GENERIC, HCharacter, b3_reflection_module, character_module, direct_sum,
    enumerate_characters_generic, enumerate_characters_mod_p, extends_to_extended,
    induce_character, is_discrete, is_simple_over_fraction_field, is_supersingular,
    reduce_mod_p, reflection_module, restriction_characters, verify_module_relations,
)

Q = HalfLaurent.q_power


def _matmul(a, b):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), HalfLaurent())
                       for j in range(len(b[0]))) for i in range(len(a)))


@pytest.fixture(scope="module")
def d4():
    return reflection_module(make_datum("D4", (1,), "ad"))


@pytest.fixture(scope="module")
def b3():
    return b3_reflection_module(make_datum("B3", (1, 2), "ad"))


def _character(datum, component_values):
    for chi in enumerate_characters_generic(datum):
        if chi.component_values() == tuple(component_values):
            return chi
    raise LookupError(component_values)


# characters ------------------------------------------------------------------


@pytest.mark.parametrize("name, params, m, nodes", [
    ("A1", (1, 1), 2, 2), ("A1", (1, 3), 2, 2), ("A2", None, 1, 3), ("B3", (1, 2), 2, 4),
    ("C2", (3, 2, 2), 3, 3), ("C3", (2, 3, 3), 3, 4), ("D4", None, 1, 5), ("G2", (1, 3), 2, 3),
])
def test_character_counts(name, params, m, nodes):
    datum = make_datum(name, params)
    generic = enumerate_characters_generic(datum)
    assert len(generic) == 2 ** m
    assert generic[0].is_trivial and generic[-1].is_special
    assert sum(c.is_trivial for c in generic) == 1 and sum(c.is_special for c in generic) == 1
    assert len(enumerate_characters_mod_p(datum, 3)) == 2 ** nodes


def test_mod_p_characters_of_a1():
    datum = make_datum("A1", (1, 1))
    chars = enumerate_characters_mod_p(datum, 5)
    flags = [is_supersingular(character_module(c)) for c in chars]
    assert len(chars) == 4 and sum(flags) == 2
    for chi, ss in zip(chars, flags):
        assert ss == (not chi.is_trivial and not chi.is_special)


def test_extension_criterion():
    a1 = make_datum("A1", (1, 1), "sc", "full")
    assert [extends_to_extended(c) for c in enumerate_characters_generic(a1)] == [True, False, False, True]
    b3 = make_datum("B3", (1, 2), "ad")
    assert len(b3.psi) == 2
    assert all(extends_to_extended(c) for c in enumerate_characters_generic(b3))
    c3 = make_datum("C3", (2, 3, 3), "ad")
    assert all(extends_to_extended(c) for c in enumerate_characters_generic(c3) if c.is_trivial or c.is_special)


def test_character_modules_satisfy_relations():
    for name, params in [("A1", (1, 2)), ("C2", (2, 1, 3)), ("G2", (1, 3)), ("B3", (1, 2))]:
        datum = make_datum(name, params)
        for chi in enumerate_characters_generic(datum):
            assert verify_module_relations(character_module(chi)) == (True, None)
        for chi in enumerate_characters_mod_p(datum, 2):
            ok, _ = verify_module_relations(character_module(chi))
            assert ok


# induced modules --------------------------------------------------------------


def test_induced_a1_module():
    datum = make_datum("A1", (2, 2), "ad")
    chi = _character(datum, (HalfLaurent.const(-1), Q(2)))
    m = induce_character(chi)
    assert m.rank == 2
    assert verify_module_relations(m) == (True, None)
    rest = restriction_characters(m)
    assert rest == [{"s1": -1, "s0": Q(2)}, {"s1": Q(2), "s0": -1}]
    assert is_simple_over_fraction_field(m)
    assert is_supersingular(reduce_mod_p(m, 3))
    with pytest.raises(ValueError, match="scalar extension"):
        induce_character(_character(datum, (Q(2), Q(2))))


def test_induced_c2_module():
    datum = make_datum("C2", (1, 1, 1), "ad")
    chi = _character(datum, (HalfLaurent.const(-1), HalfLaurent.const(-1), Q(1)))
    m = induce_character(chi)
    rest = restriction_characters(m)
    assert [tuple(r[s] for s in ("s1", "s2", "s0")) for r in rest] == [(-1, -1, Q(1)), (-1, Q(1), -1)]
    assert verify_module_relations(m) == (True, None)


def test_module_action_is_a_homomorphism():
    datum = make_datum("C2", (1, 1, 1), "ad")
    chi = _character(datum, (HalfLaurent.const(-1), Q(1), HalfLaurent.const(-1)))
    m = induce_character(chi)
    alg = HeckeAlgebra.for_datum(datum)
    ball = sorted(alg.W.enumerate_ball(3), key=alg.W.sort_key)
    rng = random.Random(2)
    for _ in range(30):
        a = alg.T(rng.choice(ball)) + alg.T(rng.choice(ball)) * Q(1)
        b = alg.T(rng.choice(ball))
        assert m.act(a * b) == _matmul(m.act(a), m.act(b))


def test_bernstein_action_by_products_matches_expansion():
    datum = make_datum("A1", (1, 1), "ad")
    m = induce_character(_character(datum, (HalfLaurent.const(-1), Q(1))))
    alg = HeckeAlgebra.for_datum(datum)
    for lam in range(-3, 4):
        assert m.act_E((lam,)) == m.act(alg.bernstein_E((lam,)))


# reflection modules -------------------------------------------------------------


def test_d4_reflection_module(d4):
    assert d4.rank == 5
    assert verify_module_relations(d4) == (True, None)
    red = reduce_mod_p(d4, 3)
    assert verify_module_relations(red) == (True, None)
    nodes = d4.datum.dyn.nodes
    for s in nodes:
        mat = red.gen_action[s]
        for i, t in enumerate(nodes):
            expected = [0] * 5
            expected[i] = 0 if s == t else 2
            assert list(mat[i]) == expected
    for g, mat in red.omega_action.items():
        for i, t in enumerate(nodes):
            j = nodes.index(g.inverse()(t))
            assert list(mat[i]) == [int(k == j) for k in range(5)]
    assert restriction_characters(red) == [
        {s: (0 if s == t else 2) for s in nodes} for t in nodes]


def test_d4_reflection_module_properties(d4):
    assert is_supersingular(reduce_mod_p(d4, 3))
    assert is_supersingular(reduce_mod_p(d4, 2))
    assert is_discrete(d4, (2, 3, 4, 9), 1e-6)
    assert is_simple_over_fraction_field(d4)


def test_b3_reflection_module(b3):
    assert b3.rank == 3
    assert verify_module_relations(b3) == (True, None)
    red = reduce_mod_p(b3, 5)
    longs = [lbl.removeprefix("e_") for lbl in b3.labels]
    assert restriction_characters(red) == [
        {s: (0 if s == t else 4) for s in b3.datum.dyn.nodes} for t in longs]
    assert is_supersingular(red)
    assert is_discrete(b3, (2, 3, 4, 9), 1e-6)
    assert is_simple_over_fraction_field(b3)


def test_reflection_module_preconditions():
    with pytest.raises(ValueError):
        reflection_module(make_datum("C2", (1, 1, 1)))
    with pytest.raises(ValueError):
        b3_reflection_module(make_datum("B3", (1, 1)))


def test_corrupted_matrix_is_detected(d4):
    s = d4.datum.dyn.nodes[0]
    mat = [list(row) for row in d4.gen_action[s]]
    mat[1][2] = mat[1][2] + 1
    bad = dataclasses.replace(d4, gen_action={**d4.gen_action, s: tuple(map(tuple, mat))})
    ok, name = verify_module_relations(bad)
    assert not ok and name is not None


def test_reduction_needs_integrality():
    datum = make_datum("A1", (1, 1))
    chi = HCharacter(datum, GENERIC, (("s1", Q(-1)), ("s0", Q(-1))))
    with pytest.raises(NotIntegralError):
        reduce_mod_p(character_module(chi), 3)


def test_reduction_of_trivial_and_special():
    datum = make_datum("C3", (1, 2, 2))
    chars = enumerate_characters_generic(datum)
    triv = reduce_mod_p(character_module(chars[0]), 3)
    spec = reduce_mod_p(character_module(chars[-1]), 3)
    assert all(v == ((0,),) for v in triv.gen_action.values())
    assert all(v == ((2,),) for v in spec.gen_action.values())
    assert not is_supersingular(triv) and not is_supersingular(spec)
    for chi in chars[1:-1]:
        assert is_supersingular(reduce_mod_p(character_module(chi), 3))


# discreteness and simplicity ----------------------------------------------------


@pytest.mark.parametrize("name, params", [("A1", (1, 3)), ("B4", (1, 2)), ("G2", (1, 1)), ("C2", (3, 2, 2))])
def test_exact_and_numeric_discreteness_agree(name, params):
    datum = make_datum(name, params)
    for chi in enumerate_characters_generic(datum):
        m = character_module(chi)
        assert is_discrete(m, method="exact") == is_discrete(m, method="numeric")


def test_discreteness_of_trivial_and_special():
    datum = make_datum("A1", (1, 1), "ad")
    chars = enumerate_characters_generic(datum)
    assert not is_discrete(character_module(chars[0]))
    assert is_discrete(character_module(chars[-1]))


def test_direct_sum_is_not_simple():
    datum = make_datum("A1", (1, 1))
    chars = enumerate_characters_generic(datum)
    m = direct_sum(character_module(chars[1]), character_module(chars[2]))
    assert verify_module_relations(m) == (True, None)
    assert not is_simple_over_fraction_field(m)
    assert is_simple_over_fraction_field(character_module(chars[0]))


def test_generator_products_have_unit_leading_coefficient():
    """z_mu z_nu contains E_{mu+nu} with a unit coefficient, so nilpotency on
    the Hilbert basis generators controls every dominant z."""
    for name in ("A2", "C2"):
        alg = HeckeAlgebra.for_datum(make_datum(name))
        gens = alg.W.dominant_monoid_generators
        for mu in gens:
            for nu in gens:
                top = tuple(a + b for a, b in zip(mu, nu))
                coeffs = alg.e_basis_expand(alg.central_z(mu) * alg.central_z(nu))
                lead = coeffs[top]
                assert lead.is_monomial() and abs(lead.monomial_parts()[1]) == 1
