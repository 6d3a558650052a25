"""End-to-end smoke tests for the Python bindings.

The heavy numerical contracts live in the C++ test suite; these checks make
sure the bindings round numpy data through the solvers and smoother
correctly and that errors surface as Python exceptions.
"""

import numpy as np
import pytest

import crcep


def test_periodic_roundtrip():
    n, N = 2, 32
    a_true = np.array([1.0, -0.9, 0.35])
    b = np.array([1.0, 0.4, 0.1])
    c = crcep.spectrum_lags(a_true, b, 1.7, N, n)

    model, report = crcep.solve_periodic(c, b, N)
    assert report.status == crcep.SolveStatus.converged
    assert np.max(np.abs(model.a - a_true)) < 1e-6
    assert abs(model.sigma2 - 1.7) < 1e-6
    assert np.max(np.abs(report.moment_residual)) < 1e-8

    residual, jury_det = crcep.verify_moments(model, c)
    assert np.max(np.abs(residual)) < 1e-8
    assert jury_det > 0.0


def test_line_roundtrip():
    a_true = np.array([1.0, -0.6])
    b = np.array([1.0, 0.5])
    c = crcep.line_lags(a_true, b, 1.0, 1)

    model, report = crcep.solve_line(c, b)
    assert report.status == crcep.SolveStatus.converged
    assert abs(model.a[1] + 0.6) < 1e-6
    assert abs(model.sigma2 - 1.0) < 1e-6
    back = crcep.line_lags(model.a, model.b, model.sigma2, 1)
    assert np.max(np.abs(back - c)) < 1e-7


def test_vector_solver_published_example():
    A_ss = np.array([[0.9, -0.3], [0.3, 0.9]])
    ss = crcep.StateSpaceModel(A_ss, np.array([[1.0, 2.0], [1.0, 0.0]]),
                               np.eye(2), np.eye(2))
    C = crcep.lyapunov_lags(ss, 1)
    b = np.array([1.0, 0.5])

    model, report = crcep.solve_vector(C, b, 25)
    assert report.status == crcep.SolveStatus.converged
    expected_A1 = np.array([[-0.8609, 0.2989], [-0.2989, -0.8609]])
    assert np.max(np.abs(model.A[1] - expected_A1)) < 1e-3
    assert np.max(np.abs(model.D - 0.8122 * np.eye(2))) < 1e-3
    assert crcep.fixed_point_residual(model, C) < 1e-8

    lags = crcep.vector_model_lags(model, 1)
    assert np.max(np.abs(lags[0] - C[0])) < 1e-6
    assert np.max(np.abs(lags[1] - C[1])) < 1e-6


def test_smoother_matches_oracle():
    A_ss = np.array([[0.9, -0.3], [0.3, 0.9]])
    ss = crcep.StateSpaceModel(A_ss, np.array([[1.0, 2.0], [1.0, 0.0]]),
                               np.eye(2), np.eye(2))
    C = crcep.lyapunov_lags(ss, 1)
    prior, _ = crcep.solve_vector(C, np.array([1.0, 0.5]), 25)
    channel = crcep.ObservationChannel(ss.C, ss.R)

    x, y = crcep.simulate_trajectory(prior, channel, 7)
    assert x.shape == (50, 2) and y.shape == (50, 2)
    x2, _ = crcep.simulate_trajectory(prior, channel, 7)
    assert np.array_equal(x, x2)

    result = crcep.smooth(prior, channel, y)
    oracle = crcep.direct_smooth_oracle(prior, channel, y)
    assert np.max(np.abs(result.xhat - oracle)) < 1e-8
    assert result.posterior_residual < 1e-8
    assert result.forward_residual < 1e-8
    assert result.backward_residual < 1e-8

    # smoothing beats raw channel inversion on average
    mse_smooth = np.mean((result.xhat - x) ** 2)
    mse_inv = np.mean((y @ np.linalg.inv(ss.C).T - x) ** 2)
    assert mse_smooth < mse_inv


def test_utilities_and_errors():
    factor = crcep.schur_factor(np.array([2.5, 1.0]))
    assert crcep.is_schur(factor)
    assert crcep.toeplitz_pd(np.array([4.0 / 3.0, 2.0 / 3.0]))
    assert not crcep.toeplitz_pd(np.array([1.0, 1.0]))

    with pytest.raises(crcep.DataError):
        crcep.solve_periodic(np.array([1.0, 1.0]), np.array([1.0, 0.0]), 16)
    with pytest.raises(crcep.DimensionError):
        crcep.solve_line(np.array([4.0 / 3.0, 2.0 / 3.0]), np.array([1.0]))
    with pytest.raises(crcep.Error):
        crcep.solve_discrete_lyapunov(np.array([[1.1]]), np.eye(1))
