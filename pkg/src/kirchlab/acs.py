"""
Almost complex structures on the spheres S^2 and S^6, and their
integrability tensors.

An :class:`AcsField` on ``S^n`` (the unit sphere of ``R^(n+1)``) is stored as
an ambient matrix field ``y -> J(y)`` that acts as ``J_y`` on ``T_y S^n`` and
annihilates ``y``.  Points are normalised before evaluation, which gives the
radial extension used by the finite-difference code for free.

Integrability is measured three ways:

* :func:`nijenhuis_fd`: ambient differentials of extended vector fields;
* :func:`nijenhuis_chart` / :func:`tau_chart`: component formulas in a
  stereographic chart, with partials by central differences;
* :func:`calabi_defect`: the operator ``dJdJ - JdJd`` applied to a function.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from . import algebra
from .errors import UsageError, ValidationError
from .geometry import (DEFAULT_H, Chart, VectorField, directional_derivative, fd_gradient,
                       project_tangent, sample_sphere, sample_tangent, sphere_point,
                       tangent_vector)

ACS_LEVELS = (2, 3)


def tangent_projector(y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    return np.eye(y.shape[-1]) - y[..., :, None] * y[..., None, :]


class AcsField:
    """Base class; subclasses implement :meth:`_matrix` for unit ``y``."""

    hermitian = False

    def __init__(self, n: int):
        self.n = n
        self.ambient_dim = n + 1

    def _matrix(self, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def matrix(self, y) -> np.ndarray:
        """Ambient matrix of ``J`` at ``y / |y|``; broadcasts over leading axes."""
        return self._matrix(sphere_point(y))

    def __call__(self, y, v):
        return acs_apply(self, y, v)

    def check(self, samples: int = 1000, seed: int = 0) -> dict:
        """Max residuals of ``J^2 = -Id`` and tangency at random points."""
        rng = np.random.default_rng(seed)
        ys = sample_sphere(rng, samples, self.ambient_dim)
        M = self.matrix(ys)
        P = tangent_projector(ys)
        square = np.abs(M @ M + P).max()
        tangency = max(np.abs(np.einsum("si,sij->sj", ys, M)).max(),
                       np.abs(np.einsum("sij,sj->si", M, ys)).max())
        orth = np.abs(np.swapaxes(M, -1, -2) @ M - P).max()
        return {"square": float(square), "tangency": float(tangency), "orthogonality": float(orth)}


class AlgebraAcs(AcsField):
    """Right multiplication ``v -> v y`` by a unit imaginary quaternion
    (level 2, on S^2) or octonion (level 3, on S^6)."""

    hermitian = True

    def __init__(self, level: int):
        if level not in ACS_LEVELS:
            raise UsageError(f"almost complex structures exist for levels {ACS_LEVELS}, got {level}")
        self.level = level
        super().__init__(algebra.dimension(level) - 2)

    def _matrix(self, y):
        # the imaginary block of R_y maps y to Im(y y) = 0
        return algebra.right_matrix(algebra.from_imag(y))[..., 1:, 1:]


def octonionic_acs() -> AlgebraAcs:
    return AlgebraAcs(3)


def quaternionic_acs() -> AlgebraAcs:
    return AlgebraAcs(2)


class RotatedAcs(AcsField):
    """Pullback ``J^g_y = g J_{g^T y} g^T`` of ``base`` by an orthogonal ``g``."""

    def __init__(self, base: AcsField, g):
        g = np.asarray(g, dtype=float)
        if g.shape != (base.ambient_dim,) * 2 or not np.allclose(g.T @ g, np.eye(base.ambient_dim), atol=1e-12):
            raise ValidationError("rotation must be an orthogonal matrix on the ambient space")
        super().__init__(base.n)
        self.base = base
        self.g = g
        self.hermitian = base.hermitian
        self.level = getattr(base, "level", None)

    def _matrix(self, y):
        return self.g @ self.base._matrix(y @ self.g) @ self.g.T


def random_rotation(dim: int, seed: int) -> np.ndarray:
    """Haar-distributed element of SO(dim)."""
    from scipy.stats import special_ortho_group

    return special_ortho_group.rvs(dim, random_state=np.random.default_rng(seed))


def rotated_octonionic_acs(seed: int = 42) -> RotatedAcs:
    return RotatedAcs(octonionic_acs(), random_rotation(7, seed))


class DeformedAcs(AcsField):
    """``A J A^-1`` with the tangent automorphism ``A_y = P_y + t w w^T``,
    ``w = P_y c``.  Not hermitian for ``t != 0``."""

    hermitian = False

    def __init__(self, base: AcsField, c, t: float):
        super().__init__(base.n)
        self.base = base
        self.c = np.asarray(c, dtype=float)
        self.t = float(t)
        if self.t <= -1.0 / max(float(self.c @ self.c), 1e-300):
            raise ValidationError("deformation parameter makes A singular somewhere")
        self.level = getattr(base, "level", None)

    def _matrix(self, y):
        P = tangent_projector(y)
        w = P @ self.c
        ww = w[..., :, None] * w[..., None, :]
        s = np.sum(w * w, axis=-1)[..., None, None]
        A = P + self.t * ww
        A_inv = P - self.t / (1 + self.t * s) * ww
        return A @ self.base._matrix(y) @ A_inv


class CustomAcs(AcsField):
    """Wrap a user rule ``y -> matrix`` acting on ``T_y``.

    The rule is composed with the tangent projector and validated at load
    time: it must preserve tangent spaces and square to ``-Id``.
    """

    def __init__(self, rule: Callable, n: int, samples: int = 200, seed: int = 0,
                 tol: float = 1e-10, hermitian: bool | None = None):
        super().__init__(n)
        self.rule = rule
        res = self.check(samples, seed)
        if res["square"] > tol or res["tangency"] > tol:
            raise ValidationError(f"rule is not an almost complex structure: {res}")
        self.hermitian = res["orthogonality"] <= tol if hermitian is None else hermitian

    def _matrix(self, y):
        y = np.asarray(y)
        if y.ndim == 1:
            return np.asarray(self.rule(y), dtype=float) @ tangent_projector(y)
        return np.stack([self._matrix(row) for row in y.reshape(-1, y.shape[-1])]).reshape(
            y.shape + (y.shape[-1],))


def acs_apply(J: AcsField, y, v, tol: float = 1e-10) -> np.ndarray:
    """``J_y(v)``; ``v`` must be tangent at ``y``."""
    y = sphere_point(y)
    v = tangent_vector(y, v, tol)
    return J.matrix(y) @ v


def is_hermitian(J: AcsField, samples: int = 200, seed: int = 0, tol: float = 1e-10) -> bool:
    """``<Jb, Jc> = <b, c>`` on tangent vectors at random points."""
    return J.check(samples, seed)["orthogonality"] <= tol


# ---------------------------------------------------------------------------
# Nijenhuis tensor from ambient differentials


def _apply_field(J: AcsField, X: Callable) -> VectorField:
    return VectorField(lambda p: J.matrix(p) @ X(p), getattr(X, "singular_points", ()))


def nijenhuis_fields(J: AcsField, X: Callable, Y: Callable, a, h: float = DEFAULT_H):
    """``N(X, Y)`` at ``a`` for tangent vector fields ``X``, ``Y``, assembled from
    the six ambient differentials

        d(JY)(JX) - d(JX)(JY) - dY(X) + dX(Y)
        - J(d(JY)(X) - dX(JY)) - J(dY(JX) - d(JX)(Y)).
    """
    if h <= 0:
        raise UsageError(f"finite-difference step must be positive, got {h}")
    a = sphere_point(a)
    JX, JY = _apply_field(J, X), _apply_field(J, Y)
    x, y, jx, jy = X(a), Y(a), JX(a), JY(a)

    def d(F, v):
        return directional_derivative(F, a, v, h)

    Ja = J.matrix(a)
    b1 = project_tangent(a, d(JY, jx) - d(JX, jy))
    b2 = project_tangent(a, d(Y, x) - d(X, y))
    b3 = project_tangent(a, d(JY, x) - d(X, jy))
    b4 = project_tangent(a, d(Y, jx) - d(JX, y))
    return b1 - b2 - Ja @ b3 - Ja @ b4


def constant_extension(v) -> VectorField:
    """``p -> project_tangent(p, v)``."""
    v = np.asarray(v, dtype=float)
    return VectorField(lambda p: project_tangent(p, v))


def nijenhuis_fd(J: AcsField, a, b, c, h: float = DEFAULT_H) -> np.ndarray:
    """``N_a(b, c)`` with ``b``, ``c`` extended as constant ambient vectors
    projected to the sphere."""
    a = sphere_point(a)
    b = tangent_vector(a, b)
    c = tangent_vector(a, c)
    return nijenhuis_fields(J, constant_extension(b), constant_extension(c), a, h)


# ---------------------------------------------------------------------------
# chart formulas


def chart_matrix(J: AcsField, chart: Chart, u) -> np.ndarray:
    """Components ``J^i_j(u)`` in the chart (``J(d_j) = J^i_j d_i``)."""
    u = np.asarray(u, dtype=float)
    return chart.pullback_matrix(u, J.matrix(chart.inverse(u)))


def _curl_terms(J: AcsField, chart: Chart, u, h):
    """Chart matrix ``Jc`` and ``A[i, p, q] = d_p J^i_q - d_q J^i_p``."""
    Jc = chart_matrix(J, chart, u)
    dJ = fd_gradient(lambda v: chart_matrix(J, chart, v), u, h)  # dJ[l, i, k]
    A = np.einsum("piq->ipq", dJ) - np.einsum("qip->ipq", dJ)
    return Jc, A


def nijenhuis_chart(J: AcsField, chart: Chart, u, h: float = DEFAULT_H) -> np.ndarray:
    """``N[i, j, k] = N^i_jk`` from

        J^l_j (d_l J^i_k - d_k J^i_l) - J^l_k (d_l J^i_j - d_j J^i_l).
    """
    Jc, A = _curl_terms(J, chart, u, h)
    half = np.einsum("lj,ilk->ijk", Jc, A)
    return half - np.swapaxes(half, 1, 2)


def tau_chart(J: AcsField, chart: Chart, u, h: float = DEFAULT_H) -> np.ndarray:
    """``tau[i, j, k] = (delta^p_j delta^q_k - J^p_j J^q_k)(d_p J^i_q - d_q J^i_p)``."""
    Jc, A = _curl_terms(J, chart, u, h)
    return A - np.einsum("pj,qk,ipq->ijk", Jc, Jc, A)


def contract_j(J_chart: np.ndarray, N: np.ndarray) -> np.ndarray:
    """``(J.N)^i_jk = J^r_j N^i_rk``."""
    return np.einsum("rj,irk->ijk", J_chart, N)


def chart_tensor_to_ambient(chart: Chart, u, T: np.ndarray, b, c) -> np.ndarray:
    """Evaluate a chart ``(1,2)``-tensor on ambient tangent vectors ``b``, ``c``
    at ``inverse(u)`` and return the ambient result."""
    x = chart.inverse(u)
    Df = chart.forward_jacobian(x)
    Di = chart.inverse_jacobian(u)
    return Di @ np.einsum("ijk,j,k->i", T, Df @ b, Df @ c)


def calabi_defect(J: AcsField, f: Callable, chart: Chart, u, h: float = DEFAULT_H) -> np.ndarray:
    """Components ``w_pq`` of the 2-form ``(dJdJ - JdJd) f`` at ``u``.

    ``J`` acts on forms by ``(Jw)(X_1, ...) = w(JX_1, ...)``, so with
    ``w = d(J df)`` the defect is ``w - J^T w J``.
    """
    u = np.asarray(u, dtype=float)

    def jdf(v):
        return chart_matrix(J, chart, v).T @ fd_gradient(f, v, h)

    D = fd_gradient(jdf, u, h)  # D[p, q] = d_p (J df)_q
    w = D - D.T
    Jc = chart_matrix(J, chart, u)
    return w - Jc.T @ w @ Jc


# ---------------------------------------------------------------------------
# sampled identity checks


def nijenhuis_associator_residual(J: AlgebraAcs, samples: int, seed: int, h: float = DEFAULT_H) -> float:
    """Max over random ``(a, b, c)`` of ``|N_a(b, c) - 2[a, b, c]|`` (algebra J)."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for a in sample_sphere(rng, samples, J.ambient_dim):
        b, c = sample_tangent(rng, a), sample_tangent(rng, a)
        exact = 2 * algebra.imag_part(algebra.associator(*(algebra.from_imag(v) for v in (a, b, c))))
        worst = max(worst, float(np.linalg.norm(nijenhuis_fd(J, a, b, c, h) - exact)))
    return worst


def sample_chart_points(rng: np.random.Generator, count: int, dim: int, radius: float = 1.5) -> np.ndarray:
    """Uniform points of the ball of ``radius`` in chart coordinates."""
    g = rng.standard_normal((count, dim))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g * radius * rng.random((count, 1)) ** (1.0 / dim)
