"""
The multiplications induced by a Kirchhoff frame,

    m_hat(x, y) = sigma~_x(y)               on R^(n+2),
    m(x, y)     = m_hat(x, y) / |m_hat(x, y)|   on S^(n+1),

and seeded samplers for their associativity and Moufang defects.

Sampling is split into fixed-size chunks; chunk ``c`` draws from
``np.random.SeedSequence(seed).spawn(n_chunks)[c]``, so a report depends only
on ``(seed, samples)`` and chunks can be evaluated in any order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .acs import AcsField
from .errors import DegenerateFrameError, UsageError
from .kirchhoff import sigma_tilde_matrices

CHUNK = 1024
HIST_BINS = 32


@dataclass(frozen=True)
class HMultiplication:
    J: AcsField
    normalize: bool = True

    @property
    def dim(self) -> int:
        return self.J.ambient_dim + 1

    @property
    def identity(self) -> np.ndarray:
        e = np.zeros(self.dim)
        e[0] = 1.0
        return e

    def __call__(self, x, y):
        return multiply_h(self, x, y)


def multiply_h(mult: HMultiplication, x, y) -> np.ndarray:
    """``sigma~_x(y)``, normalised for ``m``.  Broadcasts over leading axes."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != mult.dim or y.shape[-1] != mult.dim:
        raise UsageError(f"points must have dimension {mult.dim}")
    out = np.einsum("...ij,...j->...i", sigma_tilde_matrices(mult.J, x), y)
    if not mult.normalize:
        return out
    r = np.linalg.norm(out, axis=-1, keepdims=True)
    if np.any(r < 1e-12):
        raise DegenerateFrameError("m(x, y) has vanishing norm")
    return out / r


def left_translation(mult: HMultiplication, x) -> np.ndarray:
    """Matrix of ``y -> m_hat(x, y)``."""
    return sigma_tilde_matrices(mult.J, np.asarray(x, dtype=float))


@dataclass
class DefectReport:
    op: str
    samples: int
    seed: int
    max: float
    mean: float
    hist: list
    bin_edges: list

    def to_dict(self) -> dict:
        return {"op": self.op, "seed": self.seed, "n": self.samples, "max": self.max,
                "mean": self.mean, "hist": self.hist, "bin_edges": self.bin_edges}


def _unit_triples(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    g = rng.standard_normal((3, count, dim))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def _assoc(m, x, y, z):
    return np.linalg.norm(m(m(x, y), z) - m(x, m(y, z)), axis=-1)


def _moufang(m, x, y, z):
    return np.linalg.norm(m(m(x, y), m(z, x)) - m(m(x, m(y, z)), x), axis=-1)


OPS = {"assoc": _assoc, "moufang": _moufang}


def defect_values(mult: HMultiplication, op: str, samples: int, seed: int) -> np.ndarray:
    """Per-triple defects in sampling order."""
    if op not in OPS:
        raise UsageError(f"unknown defect {op!r}; choose from {sorted(OPS)}")
    if samples < 1:
        raise UsageError("defect sampling needs at least one sample")
    n_chunks = -(-samples // CHUNK)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    out = []
    for c, child in enumerate(children):
        count = min(CHUNK, samples - c * CHUNK)
        x, y, z = _unit_triples(np.random.default_rng(child), count, mult.dim)
        out.append(OPS[op](mult, x, y, z))
    return np.concatenate(out)


def _report(op: str, values: np.ndarray, seed: int) -> DefectReport:
    top = float(values.max())
    hist, edges = np.histogram(values, bins=HIST_BINS, range=(0.0, top if top > 0 else 1.0))
    return DefectReport(op, int(values.size), seed, top, float(values.mean()),
                        [int(h) for h in hist], [float(e) for e in edges])


def associativity_defect(mult: HMultiplication, samples: int, seed: int) -> DefectReport:
    """``|m(m(x, y), z) - m(x, m(y, z))|`` over random unit triples."""
    return _report("assoc", defect_values(mult, "assoc", samples, seed), seed)


def moufang_defect(mult: HMultiplication, samples: int, seed: int) -> DefectReport:
    """``|m(m(x, y), m(z, x)) - m(m(x, m(y, z)), x)|`` over random unit triples."""
    return _report("moufang", defect_values(mult, "moufang", samples, seed), seed)
