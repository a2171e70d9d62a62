from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shifted_hulthen import golden
from shifted_hulthen.core import NATURAL, DimensionlessParams, PotentialParams, StateIndex, energy_from_epsilon
from shifted_hulthen.errors import ComplexRootError
from shifted_hulthen.potentials import ALL_SCHEMES, SCHEME1, ApproximationScheme, SchemeTag
from shifted_hulthen.spectrum import (
    StatusTag,
    energy,
    energy_approx1,
    energy_approx2,
    energy_approx3,
    energy_hulthen,
    energy_woods_saxon,
    epsilon_closed_form,
    hulthen_params,
    n_max,
    validity,
    woods_saxon_params,
)

T1 = dict(v0=5.0, v1=2.0, q=1.0)


def tp(alpha=0.025, q=1.0):
    return PotentialParams(5.0, 2.0, alpha=alpha, q=q)


@pytest.mark.parametrize(
    "fn, alpha, q, n, l, expected",
    [
        (energy_approx1, 0.025, 1.0, 0, 1, -3.117514261),
        (energy_approx1, 0.075, 1.0, 2, 1, -3.040735741),
        (energy_approx1, 0.025, 2.0, 3, 4, -2.830249678),
        (energy_approx2, 0.025, 1.0, 0, 1, -3.11753389),
        (energy_approx2, 0.025, -2.0, 0, 1, -3.017282372),
        (energy_approx2, 0.075, 1.0, 3, 4, -3.021196724),
        (energy_approx3, 0.025, 1.0, 0, 1, -3.117462178),
        (energy_approx3, 0.025, 2.0, 0, 4, -3.067471695),
    ],
)
def test_printed_energies(fn, alpha, q, n, l, expected):
    assert fn(tp(alpha, q), NATURAL, StateIndex(n, l)).energy == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("q", [1.0, 2.0, -2.0])
def test_s_wave_schemes_coincide(n, q):
    s = StateIndex(n, 0)
    e1 = energy_approx1(tp(q=q), NATURAL, s).energy
    assert energy_approx2(tp(q=q), NATURAL, s).energy == e1
    assert energy_approx3(tp(q=q), NATURAL, s).energy == e1


def test_only_the_printed_scheme2_reading_reproduces_table1():
    cells = [c for c in golden.load_table(1) if c.scheme == 2 and c.l > 0]
    for reading, expect_match in (("printed", True), ("corrected", False)):
        worst = max(
            abs(energy_approx2(tp(c.alpha), NATURAL, StateIndex(c.n, c.l), reading).energy - c.value)
            for c in cells
        )
        assert (worst <= 1e-6) is expect_match


def test_eps_closed_form_is_s_wave_hulthen_bracket():
    z = 2 * 5.0 / 0.05**2
    for n in range(5):
        eps = epsilon_closed_form(DimensionlessParams(0.0, z, 0.0), 1.0, n)
        assert eps == pytest.approx(((n + 1) ** 2 - z) ** 2 / (4 * (n + 1) ** 2), rel=1e-14)


def test_eps_closed_form_threshold():
    assert epsilon_closed_form(DimensionlessParams(0.0, 4.0, 0.0), 1.0, 1) == 0.0


def test_eps_closed_form_complex():
    with pytest.raises(ComplexRootError):
        epsilon_closed_form(DimensionlessParams(-10.0, 0.0, 0.0), 1.0, 0)


def test_hulthen_ground_state_value():
    res = energy_hulthen(SCHEME1, 5.0, 0.05, NATURAL, StateIndex(0, 0))
    assert res.energy == pytest.approx(-(0.05**2 / 8) * 3999**2, rel=1e-14)
    assert res.energy == pytest.approx(-4997.5003125, rel=1e-14)
    assert res.is_bound


def test_hulthen_threshold_state():
    # (n+1)^2 = 2 mu V0 / (hbar alpha)^2 with n = 1, alpha = 0.5, V0 = 0.5
    res = energy_hulthen(SCHEME1, 0.5, 0.5, NATURAL, StateIndex(1, 0))
    assert res.energy == 0.0
    assert res.status.tag is StatusTag.UNBOUND


@pytest.mark.parametrize("scheme", ALL_SCHEMES)
@pytest.mark.parametrize("l", [0, 1, 3])
def test_hulthen_reduction(scheme, l):
    for n in range(4):
        s = StateIndex(n, l, 3)
        a = energy_hulthen(scheme, 2.0, 0.5, NATURAL, s)
        b = energy(hulthen_params(2.0, 0.5), NATURAL, s, scheme)
        assert a.status.tag is b.status.tag
        if a.energy is not None:
            assert abs(a.energy - b.energy) <= 1e-12


def test_woods_saxon_attractive_well_is_never_bound():
    for l in range(3):
        for scheme in ALL_SCHEMES:
            res = energy_woods_saxon(scheme, 5.0, 0.05, NATURAL, StateIndex(0, l))
            assert not res.is_bound


def test_woods_saxon_s_wave_bracket():
    res = energy_woods_saxon(SCHEME1, 2.0, 0.5, NATURAL, StateIndex(0, 0))
    z = 2 * 2.0 / 0.25
    assert res.energy == pytest.approx(-(0.25 / 8) * ((1 + z) / 1) ** 2, rel=1e-14)


def test_woods_saxon_reduction_l1():
    s = StateIndex(0, 1, 3)
    for scheme in ALL_SCHEMES:
        a = energy_woods_saxon(scheme, 2.0, 0.5, NATURAL, s)
        b = energy(woods_saxon_params(2.0, 0.5), NATURAL, s, scheme)
        assert a.status.tag is b.status.tag
        if a.energy is not None:
            assert abs(a.energy - b.energy) <= 1e-12


def test_validity_hulthen_threshold():
    v0, alpha = 5.0, 0.05
    z = 2 * v0 / alpha**2
    cut = math.ceil(math.sqrt(z) - 1)
    p = hulthen_params(v0, alpha)
    for n in (cut - 1, cut, cut + 1):
        status = validity(p, NATURAL, StateIndex(n, 0), SCHEME1)
        assert status.is_bound == ((n + 1) ** 2 < z)


def test_validity_complex_rejected():
    p = PotentialParams(1.0, -1e6, alpha=0.5)
    status = validity(p, NATURAL, StateIndex(0, 1), SCHEME1)
    assert status.tag is StatusTag.COMPLEX_REJECTED
    res = energy_approx1(p, NATURAL, StateIndex(0, 1))
    assert res.energy is None and res.eps_n is None


def test_validity_table1_rows_grow_instead_of_decaying():
    for cell in golden.load_table(1):
        res = energy(tp(cell.alpha), NATURAL, StateIndex(cell.n, cell.l), ApproximationScheme(SchemeTag(cell.scheme)))
        assert res.status.tag is StatusTag.UNBOUND
        assert res.terms.numerator > 0


def test_validity_table3_rows_are_bound_by_formula():
    for cell in golden.load_table(3):
        res = energy(tp(0.025, -2.0), NATURAL, StateIndex(cell.n, cell.l), ApproximationScheme(SchemeTag(cell.scheme)))
        assert res.is_bound


def test_n_max_examples():
    assert n_max(hulthen_params(5.0, 0.05), NATURAL, 0) == 62
    assert n_max(hulthen_params(1e-4, 0.05), NATURAL, 0) == -1
    assert n_max(PotentialParams(-3.0, 0.05, alpha=0.5), NATURAL, 1) == 2
    # formal table-2 rows are not decaying states
    assert n_max(tp(0.025, 2.0), NATURAL, 4) == -1
    assert n_max(tp(0.025, -2.0), NATURAL, 4) >= 3


@pytest.mark.parametrize("table", golden.TABLE_IDS)
def test_energy_increases_with_n_over_table_grids(table):
    cells = golden.load_table(table)
    keys = sorted({(c.l, c.alpha, c.q, c.scheme) for c in cells})
    for l, alpha, q, tag in keys:
        ns = sorted({c.n for c in cells if (c.l, c.alpha, c.q, c.scheme) == (l, alpha, q, tag)})
        es = [energy(tp(alpha, q), NATURAL, StateIndex(n, l), ApproximationScheme(SchemeTag(tag))).energy for n in ns]
        assert all(b > a for a, b in zip(es, es[1:]))


@given(
    st.floats(-20.0, 20.0),
    st.floats(0.0, 2.0),
    st.floats(0.05, 2.0),
    st.sampled_from([1.0, 2.0, 3.0, -2.0]),
    st.integers(0, 5),
    st.integers(0, 5),
    st.sampled_from(ALL_SCHEMES),
)
def test_result_invariants(v0, v1, alpha, q, n, l, scheme):
    p = PotentialParams(v0, v1, alpha=alpha, q=q)
    res = energy(p, NATURAL, StateIndex(n, l), scheme)
    if res.status.tag is StatusTag.COMPLEX_REJECTED:
        assert res.energy is None
        return
    assert res.energy == pytest.approx(-(alpha**2) / 2 * res.eps_n, rel=1e-12, abs=1e-300)
    if res.is_bound:
        assert res.energy < 0
        assert res.energy == pytest.approx(energy_from_epsilon(res.eps_n, p, NATURAL), rel=1e-15)


def test_three_dimensional_collapse_uses_l_l_plus_one():
    for l in range(6):
        dp3 = StateIndex(0, l, 3)
        # D = 3 and D = 5 at l - 1 share D + 2l, hence the same energy
        if l:
            a = energy_approx1(tp(), NATURAL, dp3).energy
            b = energy_approx1(tp(), NATURAL, StateIndex(0, l - 1, 5)).energy
            assert a == b
