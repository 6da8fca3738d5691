"""
Structure functions of global frames on spheres and the constancy scan.

Conventions: brackets are ``[X, Y] = dY(X) - dX(Y)`` and the torsion of the
flat connection that makes the frame parallel is ``T(X_j, X_k) = -[X_j, X_k]``,
so ``T^i_jk = -theta^i([X_j, X_k])``.  Indices in public arrays are 0-based
(``T[i-1, j-1, k-1]``); reports use 1-based labels.

For the classical frames ``X_i(x) = e_i x`` this gives

    [X_i, X_j](x) = e_j(e_i x) - e_i(e_j x) = -2 (a_ijk - <[e_i, e_j, x], e_k x>) X_k(x)

and hence ``T^k_ij = 2 (a_ijk - <[e_i, e_j, x], e_k x>)``; at ``x = +-1`` the
structure functions are ``2 a_ijk``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import algebra
from .errors import DegenerateFrameError, UsageError
from .geometry import (DEFAULT_H, EPS_POLE, Chart, Frame, as_frame, cap_distance, chart_components,
                       directional_derivative, fd_gradient, pole, project_tangent, sample_sphere,
                       sphere_point)

MIN_GRAM = 1e-8
RESIDUAL_FLAG = 1e-6


@dataclass
class StructureSample:
    point: np.ndarray
    T: np.ndarray
    method: str
    residual: float = 0.0

    @property
    def flagged(self) -> bool:
        return self.residual > RESIDUAL_FLAG


def classical_frame(level: int) -> Frame:
    """``X_i(x) = e_i x`` on the unit sphere of the algebra, ``i = 1..dim-1``."""
    if level not in (1, 2, 3):
        raise UsageError(f"classical frames exist for levels 1, 2, 3, got {level}")
    return Frame(lambda x: algebra.right_matrix(sphere_point(x))[..., 1:], algebra.dimension(level) - 1)


def frame_brackets(frame, p, h: float = DEFAULT_H, eps_pole: float = EPS_POLE):
    """Frame matrix ``F`` at ``p`` and all brackets ``B[:, j, k] = [X_j, X_k](p)``."""
    if h <= 0:
        raise UsageError(f"finite-difference step must be positive, got {h}")
    frame = as_frame(frame)
    p = sphere_point(p)
    d = cap_distance(p, frame.singular_points)
    if d <= eps_pole:
        raise UsageError(f"point lies within {eps_pole} of a singular point of the frame")
    F = frame(p)
    if np.linalg.det(F.T @ F) < MIN_GRAM:
        raise DegenerateFrameError("frame Gram determinant below threshold", p)
    # D[:, k, j] = dX_k(X_j)
    D = np.stack([directional_derivative(frame, p, F[:, j], h) for j in range(F.shape[1])], axis=-1)
    B = np.swapaxes(D, 1, 2) - D
    B = project_tangent(p, np.moveaxis(B, 0, -1))
    return F, np.moveaxis(B, -1, 0)


def structure_functions_fd(frame, p, h: float = DEFAULT_H, eps_pole: float = EPS_POLE) -> StructureSample:
    """``T^i_jk = -theta^i([X_j, X_k])`` with brackets by central differences,
    solved by least squares against the frame matrix."""
    F, B = frame_brackets(frame, p, h, eps_pole)
    m, k = F.shape
    sol, *_ = np.linalg.lstsq(F, -B.reshape(m, k * k), rcond=None)
    resid = float(np.abs(F @ sol + B.reshape(m, k * k)).max())
    T = sol.reshape(k, k, k)
    T = 0.5 * (T - np.swapaxes(T, 1, 2))
    return StructureSample(sphere_point(p), T, "fd-bracket", resid)


def structure_functions_chart(frame, chart: Chart, u, h: float = DEFAULT_H) -> StructureSample:
    """``T^i_jk = X^r_j X^s_k (d_r theta^i_s - d_s theta^i_r)`` in a chart."""
    frame = as_frame(frame)
    u = np.asarray(u, dtype=float)

    def theta(v):
        F = chart_components(frame, chart, v)
        if np.linalg.cond(F) > 1e12:
            raise DegenerateFrameError("frame matrix is singular in this chart", chart.inverse(v))
        return np.linalg.inv(F)

    X = chart_components(frame, chart, u)
    dtheta = fd_gradient(theta, u, h)  # dtheta[r, i, s]
    curl = np.einsum("ris->irs", dtheta) - np.einsum("sir->irs", dtheta)
    T = np.einsum("rj,sk,irs->ijk", X, X, curl)
    return StructureSample(chart.inverse(u), T, "chart-formula")


def classical_bracket_closed_form(i: int, j: int, x) -> np.ndarray:
    """``[X_i, X_j](x)`` for the classical frame, from the algebra alone:
    ``-2 sum_k (a_ijk - <[e_i, e_j, x], e_k x>) e_k x``."""
    x = np.asarray(x, dtype=float)
    level = algebra.level_of(x)
    m = algebra.dimension(level)
    if not (1 <= i < m and 1 <= j < m):
        raise UsageError(f"indices must lie in 1..{m - 1}")
    a = algebra.structure_constants(level)
    ei, ej = algebra.basis(level, i, float), algebra.basis(level, j, float)
    assoc = algebra.associator(ei, ej, x)
    out = np.zeros(m)
    for k in range(1, m):
        ekx = algebra.multiply(algebra.basis(level, k, float), x)
        out += -2 * (a[i - 1, j - 1, k - 1] - algebra.inner(assoc, ekx)) * ekx
    return out


def classical_structure_functions(x) -> np.ndarray:
    """Exact ``T^k_ij = 2 (a_ijk - <[e_i, e_j, x], e_k x>)`` as ``T[k, i, j]``."""
    x = np.asarray(x, dtype=float)
    level = algebra.level_of(x)
    m = algebra.dimension(level)
    a = algebra.structure_constants(level).astype(float)
    E = np.eye(m)[1:]
    assoc = algebra.associator(E[:, None, :], E[None, :, :], x)          # [i, j, :]
    ekx = algebra.multiply(E, x)                                          # [k, :]
    corr = np.einsum("ijd,kd->kij", assoc, ekx)
    return 2 * (np.einsum("ijk->kij", a) - corr)


# ---------------------------------------------------------------------------
# covariant derivative of the frame connection


def derivative_coefficients(frame, Z: Callable, coeffs: Callable, h: float = DEFAULT_H) -> Callable:
    """Coefficient function ``p -> Z(f^i)(p)`` of ``nabla_Z W`` for ``W = f^i X_i``."""
    return lambda p: directional_derivative(coeffs, sphere_point(p), Z(sphere_point(p)), h)


def covariant_derivative(frame, Z: Callable, coeffs: Callable, p, h: float = DEFAULT_H) -> np.ndarray:
    """``nabla_Z W = sum_i Z(f^i) X_i`` at ``p``; ``coeffs`` maps a point to ``(f^i)``."""
    frame = as_frame(frame)
    p = sphere_point(p)
    F = frame(p)
    if np.linalg.det(F.T @ F) < MIN_GRAM:
        raise DegenerateFrameError("frame Gram determinant below threshold", p)
    return F @ derivative_coefficients(frame, Z, coeffs, h)(p)


# ---------------------------------------------------------------------------
# constancy scan


@dataclass
class ConstancyReport:
    mean: np.ndarray
    max_dev: np.ndarray
    samples: int
    eps_pole: float
    seed: int
    h: float
    points: np.ndarray = field(repr=False)
    flagged: int = 0

    @property
    def max_deviation(self) -> float:
        return float(self.max_dev.max()) if self.max_dev.size else 0.0

    def components(self) -> list[dict]:
        """One entry per ``(i, j < k)`` with 1-based indices."""
        k = self.mean.shape[0]
        return [{"i": i + 1, "j": j + 1, "k": l + 1,
                 "mean": float(self.mean[i, j, l]), "max_dev": float(self.max_dev[i, j, l])}
                for i in range(k) for j in range(k) for l in range(j + 1, k)]


def constancy_scan(frame, samples: int, seed: int, h: float = DEFAULT_H, eps_pole: float = EPS_POLE,
                   dim: int | None = None) -> ConstancyReport:
    """Spread of the structure functions over random points of the sphere
    outside the ``eps_pole`` caps around ``+-e``."""
    if samples < 1:
        raise UsageError("constancy scan needs at least one sample")
    frame = as_frame(frame)
    if dim is None:
        dim = frame.size + 1
    rng = np.random.default_rng(seed)
    pts = sample_sphere(rng, samples, dim, avoid=(pole(dim, 1), pole(dim, -1)), eps=eps_pole)
    Ts = []
    flagged = 0
    for p in pts:
        s = structure_functions_fd(frame, p, h, eps_pole)
        flagged += s.flagged
        Ts.append(s.T)
    Ts = np.array(Ts)
    mean = Ts.mean(axis=0)
    return ConstancyReport(mean, np.abs(Ts - mean).max(axis=0), samples, eps_pole, seed, h, pts, flagged)
