import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aaad.antidiffusion import (AdaptationConfig, CellClass, ad_coefficient,
                                ad_correction_arrays, ad_matrix, apply_ad, classify_cells,
                                smoothness_indicator)
from aaad.euler import (GasModel, PrimitiveState, average_arrays, conserved, eigen_arrays,
                        eigensystem_x, eigensystem_y, interface_average)

GAS = GasModel(1.4)
S, R, RC = CellClass.SMOOTH, CellClass.ROUGH, CellClass.ROUGH_CONTACT


def test_indicator_examples():
    assert smoothness_indicator(1.0, 1.5, 2.0) == pytest.approx(0.25)
    assert smoothness_indicator(1.0, 2.0, 1.0) == 0.0           # extremum
    assert smoothness_indicator(2.0, 1.5, 1.0) == pytest.approx(-0.25)


def test_constant_data_is_smooth():
    assert np.all(classify_cells(np.ones(10), np.ones(10)) == S)


SMEARED = np.array([1, 1, 1, 1, 1.5, 2, 2, 2, 2.0])


def test_smeared_density_step_worked_table():
    # s_rho = 0, 0, 0, 0.25, 0, 0, 0 at cells 1..7: the trigger at cell 4 beats
    # its neighbours by more than epsilon0 and marks cells 3, 4, 5.
    labels = classify_cells(SMEARED, 1.0 + 0.01 * np.arange(9))
    # pressure rising linearly: |s_p| decreases with j, so it is below a
    # neighbour's value at the trigger -> contact
    assert list(labels) == [S, S, S, RC, RC, RC, S, S, S]


def test_constant_pressure_step_is_rough_under_strict_test():
    # s_p vanishes identically, and 0 < max(0, 0) is false
    assert list(classify_cells(SMEARED, np.ones(9))) == [S, S, S, R, R, R, S, S, S]


def test_shock_like_step_is_rough_not_contact():
    # density and pressure step together: s_p peaks at the trigger cell
    assert list(classify_cells(SMEARED, SMEARED.copy())) == [S, S, S, R, R, R, S, S, S]


def test_ideal_step_has_zero_indicators():
    step = np.array([1, 1, 1, 2, 2, 2.0])
    assert np.all(classify_cells(step, np.ones(6)) == S)


def test_contact_marks_win_over_rough():
    # rough trigger at cell 3 (pressure peaks there too), contact trigger at
    # cell 5: the shared cell 4 ends up rough-contact
    rho = np.array([1, 1, 1, 1.5, 2, 1.5, 1, 1, 1.0])
    p = np.array([1, 1, 1, 1.5, 2, 2.1, 2.15, 2.15, 2.15])
    assert list(classify_cells(rho, p)) == [S, S, R, R, RC, RC, RC, S, S]


@given(st.lists(st.floats(0.1, 10.0), min_size=5, max_size=30),
       st.lists(st.floats(0.1, 10.0), min_size=5, max_size=30))
def test_labels_are_reflection_equivariant(rho, p):
    n = min(len(rho), len(p))
    rho, p = np.array(rho[:n]), np.array(p[:n])
    assert np.array_equal(classify_cells(rho, p)[::-1], classify_cells(rho[::-1], p[::-1]))


def test_coefficient_examples():
    two = AdaptationConfig(0.1, order=2)
    assert ad_coefficient(RC, S, 0.01, two) == pytest.approx(1e-3)
    assert ad_coefficient(S, S, 0.01, two) == pytest.approx(1e-5)
    assert ad_coefficient(R, S, 0.01, two) == pytest.approx(1e-5)
    five = AdaptationConfig(0.1, order=5)
    assert ad_coefficient(R, S, 0.1, five) == pytest.approx(1e-3)
    assert ad_coefficient(S, S, 0.1, five) == pytest.approx(1e-6)
    assert ad_coefficient(S, RC, 0.1, five) == pytest.approx(1e-2)


def test_config_validation():
    with pytest.raises(ValueError):
        AdaptationConfig(-1.0)
    with pytest.raises(ValueError):
        AdaptationConfig(0.1, order=3)
    with pytest.raises(ValueError):
        ad_coefficient(S, S, 0.0, AdaptationConfig())


def _pair_1d():
    return eigensystem_x(interface_average(PrimitiveState(1.0, 0.3, 1.0),
                                           PrimitiveState(0.5, 0.1, 0.8), GAS), GAS)


def test_zero_coefficient_gives_zero_matrix():
    assert np.all(ad_matrix(_pair_1d(), 0.0, 1) == 0)


def test_matrix_acts_only_on_degenerate_fields_1d():
    pair = _pair_1d()
    Q = ad_matrix(pair, 0.2, 1)
    r = pair.r
    assert np.allclose(Q @ r[:, 0], 0, atol=1e-12)
    assert np.allclose(Q @ r[:, 2], 0, atol=1e-12)
    assert np.allclose(Q @ r[:, 1], -0.2 * r[:, 1])


def test_matrix_acts_only_on_degenerate_fields_2d():
    avg = interface_average(PrimitiveState(1.0, 0.3, 1.0, 0.2),
                            PrimitiveState(0.5, 0.1, 0.8, -0.4), GAS)
    for pair in (eigensystem_x(avg, GAS), eigensystem_y(avg, GAS)):
        Q = ad_matrix(pair, 0.1, 2)
        r = pair.r
        for k, lam in ((0, 0.0), (1, -0.1), (2, -0.1), (3, 0.0)):
            assert np.allclose(Q @ r[:, k], lam * r[:, k], atol=1e-12)


def test_apply_ad_sharpens_density_step():
    # a pure contact jump: the corrected flux moves mass up the gradient
    pair = eigensystem_x(interface_average(PrimitiveState(1.0, 0.0, 1.0),
                                           PrimitiveState(2.0, 0.0, 1.0), GAS), GAS)
    Q = ad_matrix(pair, 0.01, 1)
    UL = conserved(np.array([1.0, 0.0, 1.0]), 1.4)
    UR = conserved(np.array([2.0, 0.0, 1.0]), 1.4)
    F = apply_ad(np.zeros(3), Q, UL, UR, 0.1)
    assert F[0] == pytest.approx(0.01 * 1.0 / 0.1)


def test_array_correction_matches_matrix_form():
    rng = np.random.default_rng(1)
    WL = np.stack([rng.uniform(0.5, 2, 6), rng.uniform(-1, 1, 6), rng.uniform(0.5, 2, 6)])
    WR = np.stack([rng.uniform(0.5, 2, 6), rng.uniform(-1, 1, 6), rng.uniform(0.5, 2, 6)])
    R_, L_ = eigen_arrays(average_arrays(WL, WR, 1.4), 1.4)
    dU = conserved(WR, 1.4) - conserved(WL, 1.4)
    c = rng.uniform(0, 0.1, 6)
    out = ad_correction_arrays(R_, L_, c, dU, 0.1)
    for j in range(6):
        pair = eigensystem_x(interface_average(PrimitiveState.from_array(WL[:, j]),
                                               PrimitiveState.from_array(WR[:, j]), GAS), GAS)
        expect = apply_ad(np.zeros(3), ad_matrix(pair, c[j], 1), 0, dU[:, j], 0.1)
        assert np.allclose(out[:, j], expect, rtol=1e-12, atol=1e-14)
