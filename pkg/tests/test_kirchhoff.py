import numpy as np
import pytest

import oracles
from kirchlab import algebra
from kirchlab.acs import AcsField, DeformedAcs, octonionic_acs, quaternionic_acs, rotated_octonionic_acs
from kirchlab.errors import DegenerateFrameError, UsageError, ValidationError
from kirchlab.geometry import gram_determinant, pole, sample_sphere
from kirchlab.kirchhoff import (extend_j, frame_field, frame_from_multiplication, kirchhoff_frame,
                                kirchhoff_multiplication, sigma_inverse, sigma_tilde, sigma_tilde_matrices)

MODELS = [octonionic_acs, quaternionic_acs, rotated_octonionic_acs]


def points(J, count=200, seed=0):
    return sample_sphere(np.random.default_rng(seed), count, J.ambient_dim + 1)


@pytest.mark.parametrize("make", MODELS)
def test_extended_j_squares_to_minus_identity(make):
    J = make()
    for y in points(J, 20)[:, 1:]:
        Jt = extend_j(J, y).matrix
        assert np.allclose(Jt @ Jt, -np.eye(J.ambient_dim + 1), atol=1e-12)


def test_extend_j_rejects_bad_structure():
    class Bad(AcsField):
        def _matrix(self, y):
            return np.eye(3) - np.outer(y, y)

    with pytest.raises(ValidationError):
        extend_j(Bad(2), [0, 0, 1])


@pytest.mark.parametrize("make", MODELS)
def test_sigma_identities(make):
    J = make()
    xs = points(J)
    S = sigma_tilde_matrices(J, xs)
    e = pole(xs.shape[1])
    assert np.abs(S @ e - xs).max() <= 1e-12
    assert np.abs(S @ np.swapaxes(S, 1, 2) - np.eye(xs.shape[1])).max() <= 1e-10
    for x in xs[:20]:
        K = sigma_tilde(J, x)
        assert np.abs(sigma_inverse(K) @ K.matrix - np.eye(x.shape[0])).max() <= 1e-10


def test_sigma_scales_with_norm():
    J = octonionic_acs()
    x = 3.0 * points(J, 1)[0]
    K = sigma_tilde(J, x)
    assert np.allclose(K.matrix @ K.matrix.T, 9 * np.eye(8))
    with pytest.raises(UsageError):
        sigma_inverse(K)


def test_sigma_at_zero_and_poles():
    J = quaternionic_acs()
    assert np.array_equal(sigma_tilde(J, np.zeros(4)).matrix, np.zeros((4, 4)))
    assert not sigma_tilde(J, np.zeros(4)).invertible
    assert np.allclose(sigma_tilde(J, -pole(4)).matrix, -np.eye(4))


def test_octonion_sigma_is_right_multiplication():
    J = octonionic_acs()
    rng = np.random.default_rng(1)
    xs, ys = rng.standard_normal((2, 1000, 8))
    S = sigma_tilde_matrices(J, xs)
    assert np.abs(S - algebra.right_matrix(xs)).max() <= 1e-12
    assert np.abs(np.einsum("sij,sj->si", S, ys) - oracles.omul(ys, xs)).max() <= 1e-12


@pytest.mark.parametrize("make", MODELS)
def test_closed_form_frame(make):
    J = make()
    xs = points(J, 100)
    S = sigma_tilde_matrices(J, xs)
    for s, x in enumerate(xs):
        for i in range(1, J.ambient_dim + 1):
            assert np.abs(frame_field(J, i, x) - S[s, :, i]).max() <= 1e-12
    with pytest.raises(UsageError):
        frame_field(J, 0, xs[0])


def test_non_hermitian_frame_still_spans():
    J = DeformedAcs(octonionic_acs(), np.arange(1.0, 8.0), 0.5)
    frame = kirchhoff_frame(J)
    for x in points(J, 50, seed=2):
        F = frame(x)
        assert np.abs(x @ F).max() < 1e-12
        assert gram_determinant(F) > 1e-8
    # sigma is no longer orthogonal, the inverse formula is only for hermitian J
    S = sigma_tilde_matrices(J, points(J, 10))
    assert np.abs(S @ np.swapaxes(S, 1, 2) - np.eye(8)).max() > 1e-3


@pytest.mark.parametrize("level", [2, 3])
def test_frame_from_algebra_multiplication(level):
    dim = algebra.dimension(level)
    nu = lambda v, z: algebra.multiply(v, z)
    frame = frame_from_multiplication(nu, dim - 1, dim)
    x = points(quaternionic_acs() if level == 2 else octonionic_acs(), 1)[0]
    assert np.allclose(frame(x), algebra.right_matrix(x)[:, 1:])


def test_frame_from_kirchhoff_multiplication_matches():
    J = rotated_octonionic_acs(42)
    frame = frame_from_multiplication(kirchhoff_multiplication(J), 7, 8)
    for x in points(J, 10, seed=3):
        assert np.allclose(frame(x), kirchhoff_frame(J)(x), atol=1e-12)


def test_frame_from_multiplication_detects_degenerate():
    nu = lambda v, z: v[0] * z
    with pytest.raises(DegenerateFrameError):
        frame_from_multiplication(nu, 3, 4)
