import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diaphony.core import ConfigError, DomainError, PointSet
from diaphony.generators import (
    GOLDEN_FRACTION,
    GeneratorSpec,
    generate,
    is_symmetric,
    radical_inverse,
    reflections,
    symmetric_prefix,
    symmetrize,
)

interior = st.floats(min_value=1e-9, max_value=1.0, exclude_max=True, allow_nan=False)


def test_van_der_corput_first_terms():
    s = generate(GeneratorSpec("vdc", 4))
    assert s.array[:, 0].tolist() == [0.0, 0.5, 0.25, 0.75]


def test_radical_inverse_known_values():
    assert radical_inverse([5, 6, 7]).tolist() == [0.625, 0.375, 0.875]


def test_kronecker_first_terms():
    s = generate(GeneratorSpec("kronecker", 2, irrational=GOLDEN_FRACTION))
    assert s.array[:, 0] == pytest.approx([0.6180339887, 0.2360679774], abs=1e-10)


def test_hammersley_columns():
    s = generate(GeneratorSpec("hammersley", 4, dim=2))
    assert s.array.tolist() == [[0.0, 0.0], [0.25, 0.5], [0.5, 0.25], [0.75, 0.75]]


def test_random_is_reproducible():
    a = generate(GeneratorSpec("random", 3, dim=2, seed=42))
    b = generate(GeneratorSpec("random", 3, dim=2, seed=42))
    assert a == b and a.array.shape == (3, 2)
    expected = np.random.Generator(np.random.PCG64(42)).random((3, 2))
    assert np.array_equal(a.array, expected)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind="sobol", count=4),
        dict(kind="vdc", count=0),
        dict(kind="vdc", count=4, dim=2),
        dict(kind="hammersley", count=4, dim=3),
        dict(kind="random", count=4),
        dict(kind="kronecker", count=4, irrational=1.5),
    ],
)
def test_spec_rejects_bad_config(kwargs):
    with pytest.raises(ConfigError):
        GeneratorSpec(**kwargs)


def test_symmetrize_1d():
    assert symmetrize(PointSet([[0.3]])).array[:, 0].tolist() == [0.3, 0.7]


def test_symmetrize_2d_tau_order():
    out = symmetrize(PointSet([[0.25, 0.7]])).array
    lo = 1.0 - 0.7
    assert out.tolist() == [[0.25, 0.7], [0.25, lo], [0.75, 0.7], [0.75, lo]]


def test_symmetrize_rejects_zero():
    with pytest.raises(DomainError, match="row 1, column 0"):
        symmetrize(PointSet([[0.5], [0.0]]))


def test_is_symmetric_examples():
    assert not is_symmetric(PointSet([[0.3]]))
    assert is_symmetric(PointSet([[0.5], [0.5]]))
    assert is_symmetric(PointSet([[0.5]]))
    assert not is_symmetric(PointSet([[0.0]]))
    assert not is_symmetric(PointSet([[0.3], [0.7], [0.3]]))


@given(st.lists(st.lists(interior, min_size=2, max_size=2), min_size=1, max_size=8))
@settings(max_examples=60, deadline=None)
def test_symmetrize_properties(rows):
    s = PointSet(rows)
    sym = symmetrize(s)
    assert sym.count == 4 * s.count
    assert is_symmetric(sym)
    for b in range(s.count):
        # every aligned block is one full reflection block
        assert is_symmetric(sym.prefix(4 * (b + 1)))


def test_reflections_are_blocks():
    r = reflections([0.2, 0.6, 0.9])
    assert r.shape == (8, 3)
    assert r[0].tolist() == [0.2, 0.6, 0.9]
    assert r[-1] == pytest.approx([0.8, 0.4, 0.1])


def test_symmetric_prefix_partial_block():
    s = PointSet([[0.25, 0.7], [0.1, 0.2]])
    out = symmetric_prefix(s, 6)
    assert out.count == 6
    assert out.array[4:].tolist() == [[0.1, 0.2], [0.1, 0.8]]
    with pytest.raises(DomainError):
        symmetric_prefix(s, 9)
