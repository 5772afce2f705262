import pytest

from hecke_workbench.hecke import make_datum
from hecke_workbench.modules import is_simple_over_fraction_field, is_supersingular, reduce_mod_p, verify_module_relations
from hecke_workbench.tables import (
    TABLE_M2, TABLE_M3, condition_holds, discrete_nonspecial_census, induced_module_cases,
    reproduce_tables,
)


@pytest.fixture(scope="module")
def table_results():
    return reproduce_tables(7)


def test_every_table_row_reproduces(table_results):
    failures = [r.as_dict() for r in table_results if not r.passed]
    assert not failures
    assert len(table_results) == 120


@pytest.mark.parametrize("name, params, verdict", [
    ("A1", (1, 1), "N"), ("A1", (3, 3), "N"), ("A1", (1, 3), "Y"), ("B3", (1, 2), "N"),
    ("B4", (1, 2), "Y"), ("G2", (1, 3), "Y"), ("F4", (2, 1), "Y"), ("D4", None, "N"), ("A3", None, "N"),
])
def test_census_verdicts(name, params, verdict):
    assert discrete_nonspecial_census(make_datum(name, params), reduction_prime=None).verdict == verdict


def test_c2_322_extends_only_without_psi():
    plain = discrete_nonspecial_census(make_datum("C2", (3, 2, 2)), None)
    twisted = discrete_nonspecial_census(make_datum("C2", (3, 2, 2), "sc", "full"), None)
    assert plain.some_discrete_nonspecial_extends
    assert not twisted.some_discrete_nonspecial_extends


def test_census_columns_and_reduction():
    report = discrete_nonspecial_census(make_datum("C2", (2, 1, 3)), reduction_prime=2)
    assert report.tabulated
    assert len(report.rows) == 8
    for row in report.rows:
        assert row.ss_reduction == (not row.trivial and not row.special)
    assert not discrete_nonspecial_census(make_datum("C2", (5, 1, 1)), None).tabulated


def test_condition_language():
    assert condition_holds("none", 3, False)
    assert condition_holds("l=2 | l>=5 | psi=1", 2, False)
    assert not condition_holds("l=2 | l>=5 | psi=1", 4, False)
    assert condition_holds("l=2 | l>=5 | psi=1", 4, True)
    assert condition_holds("l>=6", 7, False)
    with pytest.raises(ValueError):
        condition_holds("l<3", 2, False)


def test_rank_dependent_row():
    row = next(r for r in TABLE_M2 if r.family == "B" and r.params == (1, 2))
    assert row.expected_for(3) == "N" and row.expected_for(5) == "Y"


def test_golden_tables_cover_the_families():
    assert {r.family for r in TABLE_M2} == {"A", "B", "F", "G"}
    assert len(TABLE_M3) == 11


def test_induced_cases_are_good_modules():
    count = 0
    for datum, chi, m in induced_module_cases(max_rank=4):
        count += 1
        assert m.rank == 2
        assert verify_module_relations(m) == (True, None)
        assert is_simple_over_fraction_field(m)
        assert is_supersingular(reduce_mod_p(m, 3))
    assert count > 0
