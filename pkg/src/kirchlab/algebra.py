"""
Cayley-Dickson algebras: complex numbers, quaternions and octonions.

Elements are plain numpy arrays of length ``2**level``; ``coords[0]`` is the
coefficient of the identity and ``coords[i]`` the coefficient of ``e_i``.
Integer arrays stay integer, so basis identities can be checked exactly.

The multiplication is fixed once by the doubling rule

    (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))

starting from the reals.  :func:`cd_multiply` evaluates the rule recursively
and is used to build the (cached) structure tensor that :func:`multiply`
contracts against.  Both broadcast over leading axes.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import UsageError

LEVELS = (1, 2, 3)
NAMES = {1: "complex", 2: "quaternion", 3: "octonion"}


def dimension(level: int) -> int:
    check_level(level)
    return 2 ** level


def check_level(level: int) -> None:
    if level not in LEVELS:
        raise UsageError(f"algebra level must be one of {LEVELS}, got {level!r}")


def level_of(a) -> int:
    """Algebra level inferred from the trailing axis of ``a``."""
    n = np.shape(a)[-1]
    for level in LEVELS:
        if n == 2 ** level:
            return level
    raise UsageError(f"no algebra of dimension {n}")


def _same_level(*xs) -> int:
    levels = {level_of(x) for x in xs}
    if len(levels) != 1:
        raise UsageError(f"level mismatch: {sorted(levels)}")
    return levels.pop()


def basis(level: int, i: int, dtype=int) -> np.ndarray:
    """Basis element ``e_i`` (``e_0`` is the identity)."""
    n = dimension(level)
    if not 0 <= i < n:
        raise UsageError(f"basis index {i} out of range for dimension {n}")
    out = np.zeros(n, dtype=dtype)
    out[i] = 1
    return out


def one(level: int, dtype=int) -> np.ndarray:
    return basis(level, 0, dtype)


def conjugate(a):
    a = np.asarray(a)
    out = -a.copy()
    out[..., 0] = a[..., 0]
    return out


def _cd_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    if n == 1:
        return a * b
    h = n // 2
    p, q = a[..., :h], a[..., h:]
    r, s = b[..., :h], b[..., h:]
    first = _cd_mul(p, r) - _cd_mul(conjugate(s), q)
    second = _cd_mul(s, p) + _cd_mul(q, conjugate(r))
    return np.concatenate([first, second], axis=-1)


def cd_multiply(a, b):
    """Product by direct evaluation of the doubling recursion."""
    a, b = np.asarray(a), np.asarray(b)
    _same_level(a, b)
    a, b = np.broadcast_arrays(a, b)
    return _cd_mul(a, b)


@lru_cache(maxsize=None)
def _structure_tensor(level: int) -> np.ndarray:
    n = dimension(level)
    eye = np.eye(n, dtype=int)
    c = np.zeros((n, n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            c[i, j] = _cd_mul(eye[i], eye[j])
    c.setflags(write=False)
    return c


def structure_tensor(level: int) -> np.ndarray:
    """Integer tensor ``C`` with ``(a b)_k = sum_ij a_i b_j C[i, j, k]``."""
    return _structure_tensor(level)


def multiply(a, b):
    a, b = np.asarray(a), np.asarray(b)
    level = _same_level(a, b)
    return np.einsum("...i,...j,ijk->...k", a, b, _structure_tensor(level))


def left_matrix(a):
    """Matrix of ``z -> a z``."""
    a = np.asarray(a)
    return np.einsum("...i,ijk->...kj", a, _structure_tensor(level_of(a)))


def right_matrix(a):
    """Matrix of ``z -> z a``."""
    a = np.asarray(a)
    return np.einsum("...j,ijk->...ki", a, _structure_tensor(level_of(a)))


def inner(a, b):
    """Real part of ``a conj(b)``, i.e. the Euclidean dot product."""
    a, b = np.asarray(a), np.asarray(b)
    _same_level(a, b)
    return np.sum(a * b, axis=-1)


def norm(a):
    return np.sqrt(inner(a, a))


def commutator(a, b):
    return multiply(a, b) - multiply(b, a)


def associator(a, b, c):
    """``[a, b, c] = (ab)c - a(bc)``."""
    return multiply(multiply(a, b), c) - multiply(a, multiply(b, c))


def real_part(a):
    return np.asarray(a)[..., 0]


def imag_part(a):
    return np.asarray(a)[..., 1:]


def from_imag(v):
    """Embed a vector of imaginary coordinates as a pure-imaginary element."""
    v = np.asarray(v)
    return np.concatenate([np.zeros(v.shape[:-1] + (1,), dtype=v.dtype), v], axis=-1)


# ---------------------------------------------------------------------------
# structure constants a_ijk over the imaginary units


def basis_product(level: int, i: int, j: int) -> tuple[int, int]:
    """``(sign, k)`` with ``e_i e_j = sign * e_k``."""
    row = _structure_tensor(level)[i, j]
    (k,) = np.flatnonzero(row)
    return int(row[k]), int(k)


def structure_constants(level: int) -> np.ndarray:
    """Array ``a`` indexed by imaginary units 1..dim-1 (stored 0-based).

    ``a[i-1, j-1, k-1]`` is the coefficient of ``e_k`` in ``e_i e_j`` for
    ``i != j``; the diagonal is zero because ``e_i e_i = -1``.
    """
    c = _structure_tensor(level)
    return np.array(c[1:, 1:, 1:])


def structure_constant_triples(level: int) -> list[list[int]]:
    """Nonzero entries of ``a`` as ``[i, j, k, sign]`` with 1-based indices."""
    a = structure_constants(level)
    return [[int(i) + 1, int(j) + 1, int(k) + 1, int(a[i, j, k])]
            for i, j, k in zip(*np.nonzero(a))]


def table_from_constants(level: int, a: np.ndarray) -> np.ndarray:
    """Rebuild the full structure tensor from ``e_i e_j = -delta_ij + a_ijk e_k``."""
    n = dimension(level)
    c = np.zeros((n, n, n), dtype=int)
    for i in range(n):
        c[0, i, i] = 1
        c[i, 0, i] = 1
    for i in range(1, n):
        c[i, i, 0] = -1
    c[1:, 1:, 1:] += a
    return c


def constants_from_triples(level: int, triples) -> np.ndarray:
    n = dimension(level) - 1
    a = np.zeros((n, n, n), dtype=int)
    for i, j, k, s in triples:
        a[i - 1, j - 1, k - 1] = s
    return a


def render_frozen_tables() -> str:
    """Python source of :mod:`kirchlab._tables`."""
    lines = [
        '"""Frozen structure constants a_ijk, generated by tools/regen_tables.py."""',
        "",
        "TRIPLES = {",
    ]
    for level in LEVELS:
        lines.append(f"    {level}: [")
        for t in structure_constant_triples(level):
            lines.append(f"        ({t[0]}, {t[1]}, {t[2]}, {t[3]:+d}),")
        lines.append("    ],")
    lines.append("}")
    return "\n".join(lines) + "\n"


def frozen_constants(level: int) -> np.ndarray:
    from ._tables import TRIPLES

    check_level(level)
    return constants_from_triples(level, TRIPLES[level])
