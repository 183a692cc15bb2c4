import math

import pytest
from published_values import G_M3, S_M, value

from pascalis.conjectures import (
    campaign_cells,
    campaign_csv,
    campaign_report,
    compute_cell,
    fm3_closed_form,
    run_campaign,
    s_closed_form,
    s_prose,
)


@pytest.fixture(scope="module")
def small_campaign():
    return run_campaign(campaign_cells(6, 3, 4))


def test_cells_grid():
    cells = campaign_cells(4, 3, 4)
    assert cells == [(3, 2), (3, 3), (3, 4), (4, 2), (4, 3)]
    assert campaign_cells(2, 3) == []


@pytest.mark.parametrize("m", range(3, 10))
def test_closed_form_matches_published_table(m):
    assert fm3_closed_form(m) == value(G_M3[m]) ** m
    assert s_closed_form(m) == value(S_M[m])
    assert value(G_M3[m]) == math.factorial(m - 1) * value(S_M[m]) ** 2


@pytest.mark.parametrize("m", range(3, 10))
def test_prose_exponent_disagrees(m):
    assert s_prose(m) == s_closed_form(m) * math.factorial(m - 1)
    assert s_prose(m) != value(S_M[m])


def test_s4_spelled_out():
    assert s_closed_form(4) == 1620 == 6**2 * 3 * 15


def test_compute_cell_m3():
    cell = compute_cell(3, 3)
    assert cell.f_abs == 72**3 and cell.g == 72
    assert all(cell.checks.values())
    assert cell.extra["s"] == "6"
    assert cell.extra["s_closed_form_matches"] is True
    assert cell.extra["s_prose_variant_matches"] is False


def test_compute_cell_guard_skips():
    cell = compute_cell(7, 4, cap=2000)
    assert cell.skipped and cell.f_signed is None and not cell.checks


def test_chain_m3(small_campaign):
    by = {(c.m, c.n): c for c in small_campaign}
    assert [by[(3, n)].g for n in (2, 3, 4)] == [2, 72, 72 * 512000]
    assert by[(3, 3)].extra["h"] == str(6**2)
    assert by[(3, 4)].extra["h"] == str(80**3)
    for m in range(4, 7):
        assert by[(m, 3)].extra["h"] == str(value(S_M[m]) ** 2)


def test_report(small_campaign):
    rep = campaign_report(small_campaign)
    assert rep["status"] == "pass" and rep["failures"] == []
    (d,) = rep["discrepancies"]
    assert d["as_expected"]
    assert d["prose_variant_fails_for_m"] == [3, 4, 5, 6]
    assert all("seconds" not in c for c in rep["cells"])
    assert all("seconds" in c for c in campaign_report(small_campaign, timings=True)["cells"])
    cell = next(c for c in rep["cells"] if (c["m"], c["n"]) == (4, 3))
    assert cell["g_factorization"] == "2^5 * 3^9 * 5^2"


def test_failures_are_reported(small_campaign):
    import copy

    cells = copy.deepcopy(small_campaign)
    cells[0].checks["perfect_power"] = False
    rep = campaign_report(cells)
    assert rep["status"] == "fail"
    assert rep["failures"] == ["f(3,2): perfect_power"]


def test_parallel_equals_serial(small_campaign):
    par = run_campaign(campaign_cells(6, 3, 4), jobs=2)
    assert campaign_report(par) == campaign_report(small_campaign)


def test_csv(small_campaign):
    lines = campaign_csv(small_campaign).splitlines()
    assert lines[0] == "m,n,f_abs,g,h,h_integral"
    assert lines[1] == "3,2,8,2,,"
    assert lines[2] == "3,3,373248,72,36,true"
