import numpy as np
import pytest

import oracles
from kirchlab.errors import DegenerateFrameError, UsageError
from kirchlab.geometry import (Chart, Frame, VectorField, chart_components, decompose, fd_gradient,
                               fd_partial, lie_bracket_fd, pole, project_tangent, recompose,
                               sample_sphere, sample_tangent, stereographic_charts, tangent_vector)


def antisym(rng, n):
    A = rng.standard_normal((n, n))
    return A - A.T


def linear_field(A):
    return VectorField(lambda x: A @ x)


def test_fd_partial_polynomial():
    f = lambda u: u[0] ** 2 * u[1] + np.sin(u[1])
    u = np.array([0.3, -0.7])
    g = fd_gradient(f, u)
    assert np.allclose(g, [2 * 0.3 * -0.7, 0.09 + np.cos(-0.7)], atol=1e-9)
    assert np.isclose(fd_partial(f, u, [1.0, 1.0]), g.sum(), atol=1e-9)


def test_fd_rejects_bad_step():
    with pytest.raises(UsageError):
        fd_partial(np.sum, np.zeros(2), 0, h=0)


def test_project_tangent():
    rng = np.random.default_rng(0)
    x = sample_sphere(rng, 50, 5)
    w = rng.standard_normal((50, 5))
    t = project_tangent(x, w)
    assert np.abs(np.sum(t * x, axis=1)).max() < 1e-14
    assert np.allclose(project_tangent(x, t), t)


def test_tangent_vector_validation():
    x = pole(4)
    tangent_vector(x, [0, 1, 0, 0])
    with pytest.raises(UsageError):
        tangent_vector(x, [1, 1, 0, 0])


def test_decompose_round_trip():
    rng = np.random.default_rng(1)
    x = rng.standard_normal((100, 8))
    alpha, beta, y = decompose(x)
    assert np.all(beta >= 0)
    assert np.allclose(np.linalg.norm(y, axis=1), 1)
    assert np.allclose(recompose(alpha, beta, y), x)


def test_decompose_at_pole():
    alpha, beta, y = decompose(-pole(4))
    assert alpha == -1 and beta == 0
    assert np.array_equal(y, [1, 0, 0])


def test_sample_sphere_avoids_caps():
    rng = np.random.default_rng(2)
    pts = sample_sphere(rng, 500, 3, avoid=(pole(3), -pole(3)), eps=0.5)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1)
    assert np.min(np.linalg.norm(pts - pole(3), axis=1)) > 0.5
    assert np.min(np.linalg.norm(pts + pole(3), axis=1)) > 0.5


def test_sampling_is_seeded():
    a = sample_sphere(np.random.default_rng(7), 10, 4)
    b = sample_sphere(np.random.default_rng(7), 10, 4)
    assert np.array_equal(a, b)


# charts


@pytest.mark.parametrize("p", [pole(7, -1), np.eye(7)[-1], np.ones(7)])
def test_chart_round_trip(p):
    chart = Chart(p)
    rng = np.random.default_rng(3)
    x = sample_sphere(rng, 100, 7, avoid=(chart.pole,), eps=1e-2)
    u = chart.forward(x)
    assert np.allclose(np.array([chart.inverse(v) for v in u]), x, atol=1e-12)
    assert np.allclose(chart.inverse(np.zeros(6)), -chart.pole)


def test_chart_jacobians():
    chart = Chart(np.eye(4)[-1])
    u = np.array([0.4, -0.3, 1.2])
    Di = chart.inverse_jacobian(u)
    fd = fd_gradient(chart.inverse, u).T
    assert np.allclose(Di, fd, atol=1e-9)
    x = chart.inverse(u)
    assert np.allclose(chart.forward_jacobian(x) @ Di, np.eye(3), atol=1e-12)
    assert np.abs(x @ Di).max() < 1e-14


def test_chart_overlap_transition():
    # the transition between opposite charts is inversion u -> u / |u|^2 up to orientation
    north, south = stereographic_charts(np.eye(3)[-1])
    rng = np.random.default_rng(4)
    for x in sample_sphere(rng, 50, 3, avoid=(north.pole, south.pole), eps=1e-2):
        u, v = north.forward(x), south.forward(x)
        assert np.isclose(np.linalg.norm(u) * np.linalg.norm(v), 1.0)
        # tangent vectors agree across charts
        t = sample_tangent(rng, x)
        back_n = north.inverse_jacobian(u) @ north.pushforward(u, t)
        back_s = south.inverse_jacobian(v) @ south.pushforward(v, t)
        assert np.allclose(back_n, t) and np.allclose(back_s, t)


def test_chart_rejects_pole():
    chart = Chart(pole(3))
    with pytest.raises(DegenerateFrameError):
        chart.forward(pole(3))


def test_chart_components_of_frame():
    rng = np.random.default_rng(5)
    A, B = antisym(rng, 3), antisym(rng, 3)
    frame = Frame.from_fields([linear_field(A), linear_field(B)])
    chart = Chart(pole(3))
    u = np.array([0.2, 0.5])
    F = chart_components(frame, chart, u)
    assert F.shape == (2, 2)
    assert np.allclose(F[:, 0], chart_components(linear_field(A), chart, u))


# brackets


def test_bracket_linear_fields():
    rng = np.random.default_rng(6)
    for _ in range(20):
        A, B = antisym(rng, 5), antisym(rng, 5)
        x = sample_sphere(rng, 1, 5)[0]
        got = lie_bracket_fd(linear_field(A), linear_field(B), x)
        assert np.allclose(got, oracles.linear_bracket(A, B, x), atol=1e-8)


def test_bracket_second_order_convergence():
    rng = np.random.default_rng(7)
    A, B = antisym(rng, 6), antisym(rng, 6)
    x = sample_sphere(rng, 1, 6)[0]
    exact = oracles.linear_bracket(A, B, x)
    err = [np.linalg.norm(lie_bracket_fd(linear_field(A), linear_field(B), x, h) - exact)
           for h in (1e-2, 5e-3)]
    assert 3.5 <= err[0] / err[1] <= 4.5


def test_bracket_antisymmetric_and_jacobi():
    rng = np.random.default_rng(8)
    A, B, C = (antisym(rng, 4) for _ in range(3))
    x = sample_sphere(rng, 1, 4)[0]
    X, Y = linear_field(A), linear_field(B)
    assert np.allclose(lie_bracket_fd(X, Y, x), -lie_bracket_fd(Y, X, x), atol=1e-12)
    # brackets of linear fields are linear: [A x, B x] = (BA - AB) x
    comm = lambda P, Q: Q @ P - P @ Q
    jac = comm(A, comm(B, C)) + comm(B, comm(C, A)) + comm(C, comm(A, B))
    assert np.abs(jac).max() < 1e-12
    XY = linear_field(comm(A, B))
    lhs = lie_bracket_fd(XY, linear_field(C), x)
    assert np.allclose(lhs, comm(comm(A, B), C) @ x, atol=1e-8)


def test_bracket_refuses_singular_caps():
    X = VectorField(lambda x: project_tangent(x, np.ones(3)), singular_points=(pole(3),))
    with pytest.raises(UsageError):
        lie_bracket_fd(X, X, pole(3) + 1e-5 * np.array([0, 1, 0]))


def test_frame_field_indexing():
    frame = Frame(lambda x: np.column_stack([x, 2 * x]), 2)
    assert np.allclose(frame.field(2)(np.ones(3)), 2 * np.ones(3))
    with pytest.raises(UsageError):
        frame.field(3)
