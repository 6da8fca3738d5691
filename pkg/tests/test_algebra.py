import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from kirchlab import algebra
from kirchlab.errors import UsageError

ints = st.integers(min_value=-50, max_value=50)


def elements(level):
    return arrays(np.int64, algebra.dimension(level), elements=ints)


def test_basis_products_octonion():
    e = lambda i: algebra.basis(3, i)
    assert np.array_equal(algebra.multiply(e(1), e(2)), e(3))
    assert np.array_equal(algebra.multiply(e(2), e(1)), -e(3))
    for i in range(1, 8):
        assert np.array_equal(algebra.multiply(e(i), e(i)), -e(0))
        assert np.array_equal(algebra.multiply(e(0), e(i)), e(i))


def test_known_associator():
    e = lambda i: algebra.basis(3, i)
    assert np.array_equal(algebra.associator(e(1), e(2), e(4)), 2 * e(7))


def test_structure_tensor_matches_recursion():
    rng = np.random.default_rng(0)
    for level in algebra.LEVELS:
        a, b = rng.integers(-9, 10, (2, 50, algebra.dimension(level)))
        assert np.array_equal(algebra.multiply(a, b), algebra.cd_multiply(a, b))


def test_quaternion_pair_oracle():
    rng = np.random.default_rng(1)
    a, b = rng.integers(-9, 10, (2, 200, 8))
    assert np.array_equal(algebra.multiply(a, b), oracles.omul(a, b))
    assert np.array_equal(algebra.structure_constants(3), oracles.octonion_constants())


def test_quaternions_are_hamilton():
    rng = np.random.default_rng(2)
    a, b = rng.integers(-9, 10, (2, 100, 4))
    assert np.array_equal(algebra.multiply(a, b), oracles.qmul(a, b))


@pytest.mark.parametrize("level", algebra.LEVELS)
def test_frozen_tables_match_doubling(level):
    assert np.array_equal(algebra.frozen_constants(level), algebra.structure_constants(level))
    rebuilt = algebra.table_from_constants(level, algebra.frozen_constants(level))
    assert np.array_equal(rebuilt, algebra.structure_tensor(level))


def test_frozen_module_is_current():
    from pathlib import Path

    import kirchlab

    path = Path(kirchlab.__file__).with_name("_tables.py")
    assert path.read_text() == algebra.render_frozen_tables()


def test_fano_lines():
    # each imaginary unit pair lies on exactly one line of 3 units
    a = algebra.structure_constants(3)
    lines = {tuple(sorted((i, j, k))) for i, j, k, _ in algebra.structure_constant_triples(3)}
    assert len(lines) == 7
    assert np.array_equal(a, -np.swapaxes(a, 0, 1))
    assert np.array_equal(a, np.einsum("ijk->jki", a))


def test_triples_round_trip():
    for level in algebra.LEVELS:
        t = algebra.structure_constant_triples(level)
        assert np.array_equal(algebra.constants_from_triples(level, t), algebra.structure_constants(level))
    assert algebra.structure_constant_triples(1) == []


@settings(max_examples=200, deadline=None)
@given(elements(3), elements(3))
def test_alternativity(a, b):
    assert np.array_equal(algebra.associator(a, a, b), np.zeros(8))
    assert np.array_equal(algebra.associator(a, b, b), np.zeros(8))
    assert np.array_equal(algebra.associator(a, b, a), np.zeros(8))


@settings(max_examples=200, deadline=None)
@given(elements(3), elements(3), elements(3))
def test_moufang_exact(x, y, z):
    m = algebra.multiply
    assert np.array_equal(m(m(x, y), m(z, x)), m(m(x, m(y, z)), x))
    assert np.array_equal(m(z, m(x, m(z, y))), m(m(m(z, x), z), y))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(algebra.LEVELS).flatmap(lambda l: st.tuples(elements(l), elements(l))))
def test_norm_multiplicative_exact(pair):
    a, b = pair
    n2 = lambda v: int(np.dot(v, v))
    assert n2(algebra.multiply(a, b)) == n2(a) * n2(b)


@settings(max_examples=100, deadline=None)
@given(elements(2), elements(2), elements(2))
def test_quaternions_associative(a, b, c):
    assert np.array_equal(algebra.associator(a, b, c), np.zeros(4))


def test_conjugate_and_inverse():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((100, 8))
    prod = algebra.multiply(a, algebra.conjugate(a))
    expected = np.zeros_like(a)
    expected[:, 0] = np.sum(a * a, axis=1)
    assert np.allclose(prod, expected, atol=1e-12)


def test_float_identities_batch():
    rng = np.random.default_rng(4)
    x, y, z = rng.standard_normal((3, 10_000, 8))
    x, y, z = (v / np.linalg.norm(v, axis=1, keepdims=True) for v in (x, y, z))
    m = algebra.multiply
    assert np.abs(algebra.associator(x, x, y)).max() <= 1e-12
    assert np.abs(algebra.associator(x, y, y)).max() <= 1e-12
    assert np.abs(m(m(x, y), m(z, x)) - m(m(x, m(y, z)), x)).max() <= 1e-12
    assert np.abs(algebra.norm(m(x, y)) - 1).max() <= 1e-12


def test_left_right_matrices():
    rng = np.random.default_rng(5)
    a, b = rng.standard_normal((2, 8))
    assert np.allclose(algebra.left_matrix(a) @ b, algebra.multiply(a, b))
    assert np.allclose(algebra.right_matrix(b) @ a, algebra.multiply(a, b))


def test_imag_round_trip():
    v = np.arange(7.0)
    assert np.array_equal(algebra.imag_part(algebra.from_imag(v)), v)
    assert algebra.real_part(algebra.from_imag(v)) == 0


def test_errors():
    with pytest.raises(UsageError):
        algebra.dimension(4)
    with pytest.raises(UsageError):
        algebra.multiply(np.zeros(4), np.zeros(8))
    with pytest.raises(UsageError):
        algebra.basis(2, 4)
