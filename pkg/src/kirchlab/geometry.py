"""
Points, tangent vectors, stereographic charts and finite differences on
unit spheres embedded in Euclidean space.

Vector fields are ambient-valued callables ``p -> X(p)``.  Before being
differentiated they are extended radially, ``X~(x) = X(x / |x|)``, so that
central differences may step off the sphere.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateFrameError, UsageError

DEFAULT_H = 1e-5
EPS_POLE = 1e-3


def sphere_point(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1, keepdims=True)
    if np.any(r == 0):
        raise UsageError("cannot normalise the zero vector onto the sphere")
    return x / r


def project_tangent(x, w):
    """Orthogonal projection of ``w`` onto the tangent space at unit ``x``."""
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    return w - np.sum(w * x, axis=-1, keepdims=True) * x


def tangent_vector(base, v, tol: float = 1e-10) -> np.ndarray:
    """Validate that ``v`` is tangent at ``base`` and return it as a float array."""
    v = np.asarray(v, dtype=float)
    if abs(float(np.dot(v, base))) > tol * max(1.0, float(np.linalg.norm(v))):
        raise UsageError(f"vector is not tangent at the base point (<v, x> = {np.dot(v, base):.3e})")
    return v


def decompose(x):
    """Split ``x = alpha e + beta y`` with ``e = e_0``, ``beta >= 0``, ``y`` a unit
    vector of the remaining coordinates.

    Returns ``(alpha, beta, y)`` where ``y`` has one coordinate fewer than
    ``x``.  Where ``beta == 0`` the direction is undetermined and ``y`` is set
    to the first basis vector; every quantity built from ``beta * y`` is then
    independent of that choice.  Broadcasts over leading axes.
    """
    x = np.asarray(x, dtype=float)
    alpha = x[..., 0]
    rest = x[..., 1:]
    beta = np.linalg.norm(rest, axis=-1)
    zero = beta == 0
    safe = np.where(zero, 1.0, beta)
    y = rest / safe[..., None]
    if np.any(zero):
        fallback = np.zeros(rest.shape[-1])
        fallback[0] = 1.0
        y = np.where(zero[..., None], fallback, y)
    return alpha, beta, y


def recompose(alpha, beta, y):
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.concatenate([alpha[..., None], beta[..., None] * y], axis=-1)


def pole(dim: int, sign: int = 1) -> np.ndarray:
    """The distinguished point ``sign * e_0`` of the sphere in ``R^dim``."""
    e = np.zeros(dim)
    e[0] = sign
    return e


def cap_distance(x, points) -> float:
    x = np.asarray(x, dtype=float)
    if len(points) == 0:
        return np.inf
    return min(float(np.linalg.norm(x - q)) for q in points)


# ---------------------------------------------------------------------------
# sampling


def sample_sphere(rng: np.random.Generator, count: int, dim: int, avoid=(), eps: float = 0.0):
    """``count`` uniform points on the unit sphere of ``R^dim`` outside the
    ``eps``-balls around each point of ``avoid``."""
    out = np.empty((count, dim))
    filled = 0
    avoid = [np.asarray(a, dtype=float) for a in avoid]
    while filled < count:
        x = sphere_point(rng.standard_normal(dim))
        if avoid and cap_distance(x, avoid) <= eps:
            continue
        out[filled] = x
        filled += 1
    return out


def sample_tangent(rng: np.random.Generator, x) -> np.ndarray:
    """Standard Gaussian tangent vector at ``x``."""
    x = np.asarray(x, dtype=float)
    return project_tangent(x, rng.standard_normal(x.shape[-1]))


# ---------------------------------------------------------------------------
# vector fields


class VectorField:
    """An ambient-valued field ``p -> X(p)`` tangent to the sphere.

    ``singular_points`` lists points near which the field is not smooth;
    finite-difference operators refuse to differentiate within ``EPS_POLE``
    of them.
    """

    def __init__(self, rule: Callable, singular_points=()):
        self.rule = rule
        self.singular_points = tuple(np.asarray(q, dtype=float) for q in singular_points)

    def __call__(self, p):
        return np.asarray(self.rule(np.asarray(p, dtype=float)), dtype=float)


def _singular(*fields):
    pts = []
    for f in fields:
        pts.extend(getattr(f, "singular_points", ()))
    return pts


def radial(F: Callable) -> Callable:
    """``x -> F(x / |x|)``."""
    return lambda x: F(x / np.linalg.norm(x))


def directional_derivative(F: Callable, p, v, h: float = DEFAULT_H):
    """Central difference of the radial extension of ``F`` at ``p`` along ``v``."""
    if h <= 0:
        raise UsageError(f"finite-difference step must be positive, got {h}")
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    Fr = radial(F)
    return (np.asarray(Fr(p + h * v)) - np.asarray(Fr(p - h * v))) / (2 * h)


def _check_caps(p, fields, eps: float):
    d = cap_distance(p, _singular(*fields))
    if d <= eps:
        raise UsageError(f"point lies within {eps} of a singular point of the field (distance {d:.2e})")


def lie_bracket_fd(X: Callable, Y: Callable, p, h: float = DEFAULT_H, eps_pole: float = EPS_POLE):
    """``[X, Y](p) = dY(X) - dX(Y)`` by central differences, projected to ``T_p``."""
    if h <= 0:
        raise UsageError(f"finite-difference step must be positive, got {h}")
    p = sphere_point(p)
    _check_caps(p, (X, Y), eps_pole)
    xp, yp = X(p), Y(p)
    b = directional_derivative(Y, p, xp, h) - directional_derivative(X, p, yp, h)
    return project_tangent(p, b)


# ---------------------------------------------------------------------------
# frames


class Frame:
    """A frame field given as ``p -> matrix`` whose columns are the fields.

    Built from a matrix rule directly, or from a list of vector fields with
    :meth:`from_fields`.
    """

    def __init__(self, rule: Callable, size: int, singular_points=()):
        self.rule = rule
        self.size = size
        self.singular_points = tuple(np.asarray(q, dtype=float) for q in singular_points)

    @classmethod
    def from_fields(cls, fields: Sequence[Callable]) -> "Frame":
        fields = list(fields)
        return cls(lambda p: np.stack([np.asarray(f(p), dtype=float) for f in fields], axis=-1),
                   len(fields), _singular(*fields))

    def __call__(self, p) -> np.ndarray:
        return np.asarray(self.rule(np.asarray(p, dtype=float)), dtype=float)

    def field(self, i: int) -> VectorField:
        """Field ``X_i``, 1-based."""
        if not 1 <= i <= self.size:
            raise UsageError(f"frame index {i} out of range 1..{self.size}")
        return VectorField(lambda p: self(p)[:, i - 1], self.singular_points)

    def fields(self) -> list[VectorField]:
        return [self.field(i) for i in range(1, self.size + 1)]


def as_frame(frame) -> Frame:
    if isinstance(frame, Frame):
        return frame
    return Frame.from_fields(frame)


def gram_determinant(F: np.ndarray) -> float:
    return float(np.linalg.det(F.T @ F))


# ---------------------------------------------------------------------------
# charts


def _complement_basis(p: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the hyperplane orthogonal to unit ``p``."""
    n = p.shape[0]
    nz = np.flatnonzero(np.abs(p) > 1e-15)
    if len(nz) == 1:
        return np.delete(np.eye(n), nz[0], axis=1)
    q, _ = np.linalg.qr(np.column_stack([p, np.eye(n)]))
    return q[:, 1:n]


class Chart:
    """Stereographic projection from ``pole``; the chart covers every point
    but the pole, and ``u = 0`` corresponds to ``-pole``."""

    def __init__(self, pole):
        self.pole = sphere_point(pole)
        self.basis = _complement_basis(self.pole)
        self.dim = self.pole.shape[0] - 1

    def forward(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        c = x @ self.pole
        if np.any(1 - c <= 0):
            raise DegenerateFrameError("point coincides with the chart pole", x)
        return (x @ self.basis) / np.asarray(1 - c)[..., None]

    def inverse(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        s = u @ u
        return (2 * (self.basis @ u) + (s - 1) * self.pole) / (s + 1)

    def forward_jacobian(self, x) -> np.ndarray:
        """``d(forward)`` at ``x`` as an ``(n, n+1)`` matrix."""
        x = np.asarray(x, dtype=float)
        c = x @ self.pole
        return self.basis.T / (1 - c) + np.outer(self.basis.T @ x, self.pole) / (1 - c) ** 2

    def inverse_jacobian(self, u) -> np.ndarray:
        """``d(inverse)`` at ``u`` as an ``(n+1, n)`` matrix."""
        u = np.asarray(u, dtype=float)
        s = u @ u
        x_num = 2 * (self.basis @ u) + (s - 1) * self.pole
        return (2 * self.basis + 2 * np.outer(self.pole, u)) / (s + 1) - np.outer(x_num, 2 * u) / (s + 1) ** 2

    def pushforward(self, u, v) -> np.ndarray:
        """Chart components of the ambient tangent vector ``v`` at ``inverse(u)``."""
        return self.forward_jacobian(self.inverse(u)) @ v

    def pullback_matrix(self, u, M) -> np.ndarray:
        """Chart matrix of the ambient endomorphism ``M`` of ``T_x``."""
        x = self.inverse(u)
        return self.forward_jacobian(x) @ M @ self.inverse_jacobian(u)


def stereographic_charts(pole) -> tuple[Chart, Chart]:
    """The two charts projecting from ``pole`` and from ``-pole``."""
    p = sphere_point(pole)
    return Chart(p), Chart(-p)


def chart_components(Z, chart: Chart, u) -> np.ndarray:
    """Chart components of a vector field, or of a frame.

    For a single field the result is the vector ``X^l(u)``; for a frame
    (a :class:`Frame` or a list of fields) the matrix with entries
    ``F[l, j] = X_j^l(u)``.
    """
    u = np.asarray(u, dtype=float)
    x = chart.inverse(u)
    if isinstance(Z, (Frame, list, tuple)):
        return chart.forward_jacobian(x) @ as_frame(Z)(x)
    return chart.forward_jacobian(x) @ np.asarray(Z(x), dtype=float)


def chart_coframe(frame, chart: Chart, u, max_cond: float = 1e12) -> np.ndarray:
    """Dual coframe ``theta[j, l] = theta^j_l(u)``, the inverse of the frame matrix."""
    F = chart_components(as_frame(frame), chart, u)
    if np.linalg.cond(F) > max_cond:
        raise DegenerateFrameError("frame matrix is singular in this chart", chart.inverse(u))
    return np.linalg.inv(F)


def fd_partial(f: Callable, u, direction, h: float = DEFAULT_H):
    """``(f(u + h d) - f(u - h d)) / 2h``; ``direction`` is an axis index or a vector."""
    if h <= 0:
        raise UsageError(f"finite-difference step must be positive, got {h}")
    u = np.asarray(u, dtype=float)
    if np.isscalar(direction) or np.ndim(direction) == 0:
        d = np.zeros_like(u)
        d[int(direction)] = 1.0
    else:
        d = np.asarray(direction, dtype=float)
    return (np.asarray(f(u + h * d)) - np.asarray(f(u - h * d))) / (2 * h)


def fd_gradient(f: Callable, u, h: float = DEFAULT_H) -> np.ndarray:
    """All partials of ``f`` at ``u`` stacked along a new leading axis."""
    u = np.asarray(u, dtype=float)
    return np.stack([fd_partial(f, u, l, h) for l in range(u.shape[0])])
