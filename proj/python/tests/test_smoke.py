import math

import numpy as np
import pytest

import disclinate as dc


def test_rodrigues_is_proper_rotation():
    s = dc.rodrigues([0.3, -0.2, 0.9])
    assert np.allclose(s @ s.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(s) == pytest.approx(1.0, abs=1e-12)


def test_rodrigues_quarter_turn_about_z():
    s = dc.rodrigues([0.0, 0.0, math.pi / 2])
    assert np.allclose(s, [[0, 1, 0], [-1, 0, 0], [0, 0, 1]], atol=1e-15)


def test_dual_pair_round_trip():
    v = np.array([0.4, -1.2, 2.5])
    m = dc.undualize(v)
    assert m[0, 1] == pytest.approx(v[2])
    assert np.allclose(m, -m.T)
    assert np.allclose(dc.dualize(m), v)
    with pytest.raises(ValueError):
        dc.dualize(np.eye(3))


def test_single_line_fields():
    cfg = dc.DisclinationConfig([(0.0, 0.0, 1)])
    assert cfg.total_winding == 1
    assert np.allclose(cfg.connection(1.0, 0.0), [0.0, 1.0])
    wz, wzbar = cfg.complex_connection(1.0, 1.0)
    assert wzbar == pytest.approx(np.conj(wz))
    assert cfg.theta(0.0, 1.0) == pytest.approx(math.pi / 2)
    assert np.allclose(cfg.director(1.0, 0.0), [1.0, 0.0, 0.0])
    with pytest.raises(dc.BranchCutError):
        cfg.theta(1.0, 0.0)
    with pytest.raises(dc.CoreSingularity):
        cfg.connection(0.0, 0.0)


def test_invalid_configs_raise_value_error():
    with pytest.raises(ValueError):
        dc.DisclinationConfig([(0.0, 0.0, 0)])
    with pytest.raises(ValueError):
        dc.DisclinationConfig([(0.0, 0.0, 1), (0.0, 0.0, 2)])


def test_loop_invariants():
    cfg = dc.DisclinationConfig([(0.0, 0.0, 2)])
    assert np.allclose(dc.frank_vector(cfg, (0.0, 0.0), 1.0), [0.0, 0.0, 4 * math.pi], atol=1e-9)
    assert dc.enclosed_winding(cfg, (0.0, 0.0), 1.0) == 2
    assert dc.curvature_flux(cfg, (0.0, 0.0), 1.0) / (4 * math.pi) == pytest.approx(2.0, abs=1e-6)
    assert np.abs(dc.curvature_fd(cfg, 1.0, 1.0)).max() < 1e-6
    mat, angle = dc.holonomy(cfg, (0.0, 0.0), 1.0)
    assert np.allclose(mat, np.eye(3), atol=1e-6)
    assert angle == pytest.approx(4 * math.pi, abs=1e-6)
    with pytest.raises(dc.CoreSingularity):
        dc.frank_vector(dc.DisclinationConfig([(1.0, 0.0, 1)]), (0.0, 0.0), 1.0)


def test_solver_matches_closed_form():
    cfg = dc.DisclinationConfig([(0.0, 0.0, 1)])
    out = dc.solve(cfg, origin=(-2.0, -2.0), spacing=1 / 32, dims=(129, 129))
    assert out["wx"].shape == (129, 129)
    assert out["max_rel_error_vs_analytic"] <= 1e-2
    assert out["core_flux_rel_error"][0] <= 1e-3
    assert out["potential"][64, 96] == pytest.approx(math.log(1.0), abs=1e-2)


def test_solver_non_convergence():
    cfg = dc.DisclinationConfig([(0.0, 0.0, 1)])
    with pytest.raises(dc.NonConvergence):
        dc.solve(cfg, origin=(-2.0, -2.0), spacing=1 / 32, dims=(129, 129), max_iterations=2)
