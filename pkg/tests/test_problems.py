import numpy as np
import pytest

from aaad.errors import UnknownProblem
from aaad.euler import primitives
from aaad.problems import PROBLEMS, build_problem, evaluate_initial, list_problems


def test_fourteen_problems_registered():
    assert len(list_problems()) == 14


def test_unknown_problem():
    with pytest.raises(UnknownProblem):
        build_problem("sod_tube")


@pytest.mark.parametrize("name", sorted(PROBLEMS))
def test_default_mesh_initial_data_is_positive(name):
    spec = build_problem(name)
    for order in (2, 5):
        W = primitives(evaluate_initial(spec, spec.grid(None, order)), spec.gamma)
        assert np.all(W[0] > 0) and np.all(W[-1] > 0)


def test_gammas_and_default_constants():
    assert build_problem("rayleigh_taylor").gamma == pytest.approx(5 / 3)
    assert all(build_problem(n).gamma == 1.4 for n in PROBLEMS if n != "rayleigh_taylor")
    table = {"shock_entropy": (0.04, 0.003), "shock_density": (0.1, 0.03),
             "shock_bubble": (0.15, 0.05), "lax": (0.1, 0.5), "blast": (0.55, 0.5),
             "explosion": (0.03, 0.02), "rp_cfg3": (0.04, 0.02), "rp_cfg6": (0.05, 0.02),
             "rp_cfg12": (0.04, 0.02), "implosion": (0.05, 0.01),
             "kelvin_helmholtz": (0.05, 0.01), "rayleigh_taylor": (0.05, 0.02),
             "accuracy_1d": (0.1, 0.1), "accuracy_2d": (0.1, 0.1)}
    for name, (c2, c5) in table.items():
        spec = build_problem(name)
        assert (spec.default_c[2], spec.default_c[5]) == (c2, c5)


def test_lax_states():
    spec = build_problem("lax")
    assert spec.init(np.array([-1.0, 1.0])).T.tolist() == [[0.445, 0.31061, 8.928],
                                                           [0.5, 0.0, 0.571]]
    assert spec.x_range == (-5.0, 5.0) and spec.t_final == 1.3


def test_blast_states():
    spec = build_problem("blast")
    W = spec.init(np.array([0.05, 0.5, 0.95]))
    assert W[2].tolist() == [1000.0, 0.01, 100.0] and spec.t_final == 0.038
    assert spec.bc.x_lo.kind == "wall" and spec.bc.x_hi.kind == "wall"


def test_configuration_3_quadrants():
    spec = build_problem("rp_cfg3")
    W = spec.init(np.array([1.1, 0.5]), np.array([1.1, 0.5]))
    assert W[:, 0].tolist() == [1.5, 0.0, 0.0, 1.5]
    assert W[:, 1].tolist() == [0.138, 1.206, 1.206, 0.029]
    assert spec.x_range == (0.0, 1.2) and spec.t_final == 1.0


def test_smooth_1d_data_at_origin():
    g = 1.4
    u = np.sqrt(2) / 2
    rho = ((g - 1) / (2 * np.sqrt(g)) * (u + 10)) ** (2 / (g - 1))
    W = build_problem("accuracy_1d").init(np.array([0.0]))[:, 0]
    assert W == pytest.approx([rho, u, rho ** g])


def test_explosion_origin_state():
    W = build_problem("explosion").init(np.array([0.0]), np.array([0.0]))[:, 0]
    assert W.tolist() == [1.0, 0.0, 0.0, 1.0]


def test_kelvin_helmholtz_profile():
    W = build_problem("kelvin_helmholtz").init(np.array([0.1]), np.array([0.3]))[:, 0]
    assert W[0] == 1.0
    assert W[1] == pytest.approx(-0.5 + 0.5 * np.exp((0.25 - 0.3) / 0.00625))


def test_vortex_exact_solution_is_initial_data_at_zero():
    spec = build_problem("accuracy_2d")
    grid = spec.grid(40, 2)
    X, Y = grid.centers()
    assert np.allclose(spec.exact(X, Y, 0.0), spec.init(X, Y))
    assert np.allclose(spec.exact(X, Y, 0.5), spec.init(X - 0.5, Y - 0.5))
