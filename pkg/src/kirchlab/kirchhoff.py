"""
Kirchhoff's frame on S^(n+1) built from an almost complex structure on S^n.

Ambient layout: ``R^(n+2)`` has the distinguished unit vector ``e`` as its
coordinate 0, and ``R^(n+1)`` (where ``S^n`` and ``J`` live) as coordinates
``1..n+1``.  With this layout the construction for the octonionic ``J`` is
literally right multiplication in the octonions, ``e`` being the identity.

For ``x = alpha e + beta y`` the frame map is

    sigma~_x = alpha Id + beta J~_y,

where ``J~_y`` extends ``J_y`` by ``e -> y`` and ``y -> -e``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .acs import AcsField, tangent_projector
from .errors import DegenerateFrameError, UsageError, ValidationError
from .geometry import (Frame, decompose, gram_determinant, pole, project_tangent, sample_sphere,
                       sphere_point)


def _embed(M: np.ndarray) -> np.ndarray:
    """Pad an ``(n+1)``-square matrix field to act on ``R^(n+2)``, zero on ``e``."""
    shape = M.shape[:-2] + (M.shape[-1] + 1,) * 2
    out = np.zeros(shape)
    out[..., 1:, 1:] = M
    return out


def extended_matrices(J: AcsField, y) -> np.ndarray:
    """``J~_y`` for a batch of unit ``y`` (no validation)."""
    y = np.asarray(y, dtype=float)
    out = _embed(J.matrix(y))
    out[..., 1:, 0] += y
    out[..., 0, 1:] -= y
    return out


@dataclass(frozen=True)
class ExtendedJ:
    y: np.ndarray
    matrix: np.ndarray

    def __call__(self, v):
        return self.matrix @ v


def extend_j(J: AcsField, y, tol: float = 1e-10) -> ExtendedJ:
    """``J~_y`` on ``R^(n+2)``; raises if ``J_y`` does not square to ``-Id``."""
    y = sphere_point(y)
    Jy = J.matrix(y)
    P = tangent_projector(y)
    res = np.abs(Jy @ Jy + P).max()
    if res > tol:
        raise ValidationError(f"J_y^2 != -Id at y (residual {res:.2e})")
    return ExtendedJ(y, extended_matrices(J, y))


@dataclass(frozen=True)
class KirchhoffFrame:
    x: np.ndarray
    alpha: float
    beta: float
    y: np.ndarray
    extended: np.ndarray
    matrix: np.ndarray

    @property
    def invertible(self) -> bool:
        return bool(np.any(self.x != 0))

    def __call__(self, v):
        return self.matrix @ v

    @property
    def restricted(self) -> np.ndarray:
        """``sigma_x``: columns ``sigma~_x(e_i)``, ``i = 1..n+1``."""
        return self.matrix[:, 1:]


def sigma_tilde_matrices(J: AcsField, x) -> np.ndarray:
    """``sigma~_x`` for a batch of ambient points (no validation)."""
    alpha, beta, y = decompose(x)
    eye = np.eye(np.shape(x)[-1])
    return alpha[..., None, None] * eye + beta[..., None, None] * extended_matrices(J, y)


def sigma_tilde(J: AcsField, x) -> KirchhoffFrame:
    """``sigma~_x = alpha Id + beta J~_y`` for any ambient ``x`` (zero allowed)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != J.ambient_dim + 1:
        raise UsageError(f"point has dimension {x.shape[-1]}, expected {J.ambient_dim + 1}")
    alpha, beta, y = decompose(x)
    ext = extend_j(J, y).matrix
    return KirchhoffFrame(x, float(alpha), float(beta), y, ext,
                          alpha * np.eye(x.shape[0]) + beta * ext)


def sigma_inverse(frame: KirchhoffFrame, tol: float = 1e-10) -> np.ndarray:
    """``alpha Id - beta J~_y``; valid only for ``|x| = 1``."""
    r = float(np.linalg.norm(frame.x))
    if abs(r - 1) > tol:
        raise UsageError(f"inverse formula needs a unit point, |x| = {r}")
    return frame.alpha * np.eye(frame.x.shape[0]) - frame.beta * frame.extended


def frame_field(J: AcsField, i: int, x) -> np.ndarray:
    """Closed form ``X_i(x) = x_e e_i - x_i e + beta J_y(e_i - <y, e_i> y)``."""
    m = J.ambient_dim
    if not 1 <= i <= m:
        raise UsageError(f"frame index {i} out of range 1..{m}")
    x = np.asarray(x, dtype=float)
    _, beta, y = decompose(x)
    ei = np.zeros(m)
    ei[i - 1] = 1.0
    out = np.zeros(m + 1)
    out[i] += x[0]
    out[0] -= x[i]
    out[1:] += beta * (J.matrix(y) @ (ei - y[i - 1] * y))
    return out


def kirchhoff_frame(J: AcsField) -> Frame:
    """The frame ``x -> sigma_x`` on ``S^(n+1)``; not smooth at ``+-e``."""
    dim = J.ambient_dim + 1
    return Frame(lambda x: sigma_tilde_matrices(J, sphere_point(x))[..., 1:],
                 J.ambient_dim, (pole(dim, 1), pole(dim, -1)))


def frame_from_multiplication(nu: Callable, k: int, dim: int, identity=None, samples: int = 100,
                              seed: int = 0, min_gram: float = 1e-8) -> Frame:
    """The ``k`` fields ``z -> P_z nu(v_i, z)`` on the unit sphere of ``R^dim``.

    ``nu`` is linear in its first argument on ``R^(k+1)`` and ``nu(e, z) = z``
    for the unit ``identity`` (default ``e_0``); ``v_1..v_k`` complete
    ``identity`` to an orthonormal basis.  Linear independence is checked at
    ``samples`` random points and a :class:`DegenerateFrameError` carries the
    first failing point.
    """
    if identity is None:
        e = pole(k + 1)
        vs = np.eye(k + 1)[:, 1:]
    else:
        e = sphere_point(identity)
        vs = np.linalg.qr(np.column_stack([e, np.eye(k + 1)]))[0][:, 1:k + 1]

    def rule(z):
        z = sphere_point(z)
        return np.stack([project_tangent(z, np.asarray(nu(vs[:, i], z), dtype=float)) for i in range(k)],
                        axis=-1)

    frame = Frame(rule, k)
    rng = np.random.default_rng(seed)
    for z in sample_sphere(rng, samples, dim):
        if not np.allclose(nu(e, z), z, atol=1e-10):
            raise DegenerateFrameError("nu(e, z) != z", z)
        if gram_determinant(frame(z)) <= min_gram:
            raise DegenerateFrameError("fields are linearly dependent", z)
    return frame


def kirchhoff_multiplication(J: AcsField) -> Callable:
    """``nu(v, z) = sigma~_z(v)``."""
    return lambda v, z: sigma_tilde_matrices(J, z) @ v
