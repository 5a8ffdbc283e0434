import pytest
from hypothesis import given, strategies as st

from k3lat.errors import RangeError, TooLarge
from k3lat.numerology import (
    PlaneCurveSpec,
    blowup_very_ample,
    brill_noether_rho,
    euler_fibre_budget,
    greuel_bound,
    hirschowitz_vanishing,
    l_threshold_nonprim,
    l_threshold_prim,
    marked_wahl_conditions,
    marked_wahl_genus,
    p_arith,
    plane_genus,
    stack_dim,
    wahl_bound_check,
)


def test_arithmetic_genus_of_cover_classes():
    assert p_arith(11, 1) == 11
    assert p_arith(8, 2) == 29
    assert p_arith(8, 3) == 64
    assert p_arith(2, 5) == 26
    with pytest.raises(RangeError):
        p_arith(1, 2)
    with pytest.raises(RangeError):
        p_arith(5, 0)


def test_family_dimension_count():
    assert stack_dim(11, 1, 0) == 30
    assert stack_dim(8, 2, 29) == 19
    assert stack_dim(8, 2, 0) == 48


def test_brill_noether_number():
    assert brill_noether_rho(10, 2, 9) == 1
    assert brill_noether_rho(11, 1, 6) == -1
    assert brill_noether_rho(11, 2, 8) == -4


@given(st.integers(2, 40), st.integers(0, 40))
def test_rho_of_complete_linear_series_is_the_degree(g, d):
    assert brill_noether_rho(g, 0, d) == d


def test_primitive_threshold_cycles_with_period_six():
    expected = {11: 12, 12: 13, 13: 13, 14: 13, 15: 13, 16: 15,
                17: 12, 18: 13, 19: 13, 20: 13, 21: 13, 22: 15, 23: 12}
    for g, value in expected.items():
        found = l_threshold_prim(g)
        assert found.l_g == value, g
        if value == 12:
            assert "improved" in found.case_tag
    with pytest.raises(RangeError):
        l_threshold_prim(10)


def test_nonprimitive_threshold_table():
    rows = ((8, 2, 15), (8, 3, 16), (10, 2, 17), (14, 2, 15),
            (20, 2, 15), (16, 2, 17), (12, 3, 18), (14, 3, 15))
    for g, k, value in rows:
        assert l_threshold_nonprim(g, k).l_g == value, (g, k)
    with pytest.raises(RangeError):
        l_threshold_nonprim(7, 2)
    with pytest.raises(RangeError):
        l_threshold_nonprim(10, 1)


def test_nonprimitive_threshold_values_stay_in_range():
    for g in range(8, 40):
        for k in range(2, 6):
            assert l_threshold_nonprim(g, k).l_g in (15, 16, 17, 18)


def test_plane_curve_inequalities():
    assert greuel_bound(PlaneCurveSpec(10, 5, 0)) is True
    assert greuel_bound(PlaneCurveSpec(10, 0, 10)) is False
    assert hirschowitz_vanishing(5, (2, 2, 2)) is True
    assert hirschowitz_vanishing(4, (3, 3)) is False
    assert blowup_very_ample(5, 10) is True
    assert blowup_very_ample(4, 10) is False
    assert blowup_very_ample(3, 0) is False


def test_marked_wahl_window():
    good = marked_wahl_conditions(PlaneCurveSpec(24, 0, 10))
    assert good.overall and good.cond1 and good.cond2
    assert marked_wahl_conditions(PlaneCurveSpec(23, 0, 10)).overall is False
    assert marked_wahl_conditions(PlaneCurveSpec(24, 0, 9)).overall is False


def test_plane_genus_count():
    assert plane_genus(PlaneCurveSpec(10, 0, 10)) == 6
    assert plane_genus(PlaneCurveSpec(4, 3, 0)) == 0
    with pytest.raises(RangeError):
        plane_genus(PlaneCurveSpec(3, 0, 10))  # more nodes than the genus


def test_marked_degree_window_table():
    table = {0: (24, 223), 1: (24, 222), 5: (24, 218), 6: (25, 240),
             10: (27, 285), 15: (29, 333), 20: (30, 356)}
    previous = 0
    for l in range(0, 21):
        found = marked_wahl_genus(l)
        if l in table:
            assert (found.d_min, found.h) == table[l]
        assert found.d_min >= previous
        previous = found.d_min


def test_wahl_bound_check_cases():
    assert wahl_bound_check(24, 1, 2) is True
    assert wahl_bound_check(14, 1, 2) is False   # cover genus too small
    assert wahl_bound_check(24, 1, 10) is False  # too many nodes
    assert wahl_bound_check(8, 2, 5) is True
    assert wahl_bound_check(7, 2, 0) is False


def test_euler_budget():
    budget = euler_fibre_budget(10, 24)
    assert (budget.max_type_iii, budget.min_type_i2) == (4, 6)
    tight = euler_fibre_budget(12, 24)
    assert (tight.max_type_iii, tight.min_type_i2) == (0, 12)


@given(st.integers(0, 12), st.integers(0, 30))
def test_euler_budget_never_exceeds_the_total(count, total):
    if 2 * count > total:
        return
    budget = euler_fibre_budget(count, total)
    assert budget.max_type_iii + budget.min_type_i2 == count
    assert 2 * budget.min_type_i2 + 3 * budget.max_type_iii <= total
