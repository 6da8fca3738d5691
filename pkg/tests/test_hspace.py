import json
from pathlib import Path

import numpy as np
import pytest

import oracles
from kirchlab.acs import octonionic_acs, quaternionic_acs, rotated_octonionic_acs
from kirchlab.errors import DegenerateFrameError, UsageError
from kirchlab.geometry import pole, sample_sphere
from kirchlab.hspace import (CHUNK, HIST_BINS, HMultiplication, associativity_defect, defect_values,
                             left_translation, moufang_defect, multiply_h)

FIXTURE = json.loads((Path(__file__).parent / "fixtures" / "oracle_bounds.json").read_text())


def test_mhat_is_reversed_octonion_product():
    m = HMultiplication(octonionic_acs(), normalize=False)
    rng = np.random.default_rng(0)
    x, y = rng.standard_normal((2, 1000, 8))
    assert np.abs(m(x, y) - oracles.omul(y, x)).max() <= 1e-12


@pytest.mark.parametrize("make", [octonionic_acs, quaternionic_acs, rotated_octonionic_acs])
def test_identity_and_norm(make):
    J = make()
    m = HMultiplication(J)
    e = m.identity
    ys = sample_sphere(np.random.default_rng(1), 100, m.dim)
    assert np.allclose(m(np.broadcast_to(e, ys.shape), ys), ys, atol=1e-14)
    assert np.allclose(m(ys, np.broadcast_to(e, ys.shape)), ys, atol=1e-14)
    mhat = HMultiplication(J, normalize=False)
    a, b = np.random.default_rng(2).standard_normal((2, 100, m.dim))
    assert np.allclose(np.linalg.norm(mhat(a, b), axis=1),
                       np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1))


def test_left_translation_matrix():
    m = HMultiplication(quaternionic_acs(), normalize=False)
    x, y = np.random.default_rng(3).standard_normal((2, 4))
    assert np.allclose(left_translation(m, x) @ y, m(x, y))


def test_degenerate_product_raises():
    m = HMultiplication(quaternionic_acs())
    with pytest.raises(DegenerateFrameError):
        multiply_h(m, np.zeros(4), pole(4))
    with pytest.raises(UsageError):
        multiply_h(m, np.zeros(3), pole(4))


def test_quaternion_associative():
    rep = associativity_defect(HMultiplication(quaternionic_acs(), normalize=False), 5000, 42)
    assert rep.max <= 1e-9


def test_octonion_defects():
    fx = FIXTURE["assoc_defect_octonion"]
    m = HMultiplication(octonionic_acs(), normalize=False)
    rep = associativity_defect(m, fx["samples"], FIXTURE["seed"])
    assert rep.max >= fx["threshold"]
    assert np.isclose(rep.max, fx["oracle_max"], rtol=1e-12)
    assert moufang_defect(m, fx["samples"], FIXTURE["seed"]).max <= 1e-9


def test_rotated_defects_match_octonion_shape():
    m = HMultiplication(rotated_octonionic_acs(42), normalize=False)
    assert associativity_defect(m, 2000, 1).max >= 0.5
    assert moufang_defect(m, 2000, 1).max <= 1e-9


def test_defect_report_contents():
    m = HMultiplication(octonionic_acs(), normalize=False)
    rep = associativity_defect(m, 3000, 5)
    assert len(rep.hist) == HIST_BINS and sum(rep.hist) == 3000
    assert rep.bin_edges[0] == 0.0 and rep.bin_edges[-1] == rep.max
    d = rep.to_dict()
    assert d["n"] == 3000 and d["seed"] == 5


def test_defects_reproducible_and_chunked():
    m = HMultiplication(octonionic_acs(), normalize=False)
    a = defect_values(m, "assoc", CHUNK + 10, 9)
    b = defect_values(m, "assoc", CHUNK + 10, 9)
    assert np.array_equal(a, b)
    # a longer run extends the same first chunk
    assert np.array_equal(defect_values(m, "assoc", CHUNK, 9), a[:CHUNK])


def test_histogram_range_positive():
    rep = moufang_defect(HMultiplication(quaternionic_acs(), normalize=False), 10, 0)
    assert rep.bin_edges[-1] > 0


def test_unknown_op():
    with pytest.raises(UsageError):
        defect_values(HMultiplication(quaternionic_acs()), "jacobi", 10, 0)
