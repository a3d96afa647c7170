import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aaad.reconstruct import (LimiterConfig, WenoConfig, batched_matvec, minmod,
                              muscl_interface_states, parabola_values, wenoz_minus,
                              wenoz_minus_reference, wenoz_plus, wenoz_weights)

vals = st.floats(-100.0, 100.0)


def test_minmod_examples():
    assert minmod(1.0, 2.0, 3.0) == 1.0
    assert minmod(-1.0, -2.0) == -1.0
    assert minmod(1.0, -2.0) == 0.0
    assert minmod(0.0, 5.0) == 0.0


def test_limiter_theta_range():
    with pytest.raises(ValueError):
        LimiterConfig(theta=2.5)


def test_muscl_linear_data_is_exact():
    # linear data: every slope candidate equals 1 -> exact interface values
    gm, gp = muscl_interface_states([0.0, 1.0, 2.0, 3.0], 1.0, theta=2.0)
    assert gm == pytest.approx(1.5) and gp == pytest.approx(1.5)


def test_muscl_extremum_is_flat():
    gm, gp = muscl_interface_states([0.0, 1.0, 0.0, 1.0], 1.0)
    assert gm == 1.0 and gp == 0.0


def test_muscl_step_worked_example():
    # step 0,0,1,1: slopes vanish in the plateau cells
    gm, gp = muscl_interface_states([0.0, 0.0, 1.0, 1.0], 0.1)
    assert gm == 0.0 and gp == 1.0


@given(vals, vals, vals, vals)
def test_muscl_values_stay_within_neighbours(a, b, c, d):
    gm, gp = muscl_interface_states([a, b, c, d], 1.0)
    assert min(a, b, c) - 1e-9 <= gm <= max(a, b, c) + 1e-9
    assert min(b, c, d) - 1e-9 <= gp <= max(b, c, d) + 1e-9


def test_weno_config_validation():
    with pytest.raises(ValueError):
        WenoConfig(epsilon=0.0)


def test_weights_on_smooth_data_are_linear():
    w = wenoz_weights([1.0, 1.0, 1.0, 1.0, 1.0])
    assert w == pytest.approx((1 / 16, 5 / 8, 5 / 16))


def test_parabolas_exact_on_quadratics():
    f = lambda x: 3 * x * x - 2 * x + 1
    psi = [f(x) for x in (-2, -1, 0, 1, 2)]
    assert all(v == pytest.approx(f(0.5)) for v in parabola_values(psi))


def test_wenoz_exact_on_constant_and_linear():
    assert wenoz_minus([2.0] * 5) == pytest.approx(2.0)
    assert wenoz_minus([-2.0, -1.0, 0.0, 1.0, 2.0]) == pytest.approx(0.5)


@given(st.lists(vals, min_size=5, max_size=5))
def test_fused_kernel_matches_reference(psi):
    a = wenoz_minus(psi)
    b = wenoz_minus_reference(psi)
    assert a == pytest.approx(float(b), rel=1e-12, abs=1e-12 * max(1.0, max(map(abs, psi))))


@given(st.lists(vals, min_size=5, max_size=5))
def test_plus_is_mirror_of_minus(psi):
    assert wenoz_plus(psi) == wenoz_minus(psi[::-1])


def test_wenoz_step_is_non_oscillatory():
    v = wenoz_minus([0.0, 0.0, 0.0, 1.0, 1.0])
    assert -1e-3 < v < 0.01


def test_wenoz_fifth_order_on_sine():
    errs = []
    for n in (40, 80, 160):
        h = 2 * np.pi / n
        x = np.arange(n) * h
        psi = [np.sin(x + k * h) for k in (-2, -1, 0, 1, 2)]
        errs.append(np.abs(wenoz_minus(psi) - np.sin(x + 0.5 * h)).max())
    assert np.log2(errs[-2] / errs[-1]) >= 4.5


@given(st.integers(1, 6))
def test_batched_matvec_matches_einsum(n):
    rng = np.random.default_rng(n)
    M = rng.normal(size=(4, 4, n, 3))
    V = rng.normal(size=(4, n, 3))
    assert np.allclose(batched_matvec(M, V), np.einsum("ab...,b...->a...", M, V))
