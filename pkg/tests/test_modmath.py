import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bama.errors import InvalidModulusError
from bama.modmath import congruent, divmod_euclid, mod_residue, residue_class

ints = st.integers(min_value=-(2**62), max_value=2**62)
moduli = st.integers(min_value=1, max_value=2**31)


@pytest.mark.parametrize("p, n, expected", [
    (255, 11, (23, 2)),
    (0, 5, (0, 0)),
    (-8, 10, (-1, 2)),
])
def test_divmod_euclid_examples(p, n, expected):
    assert tuple(divmod_euclid(p, n)) == expected


@pytest.mark.parametrize("p, n, expected", [(2, 10, 2), (-8, 5, 2), (7, 7, 0), (1, 1, 0)])
def test_mod_residue_examples(p, n, expected):
    assert mod_residue(p, n) == expected


@pytest.mark.parametrize("fn, args", [
    (divmod_euclid, (3, 0)),
    (divmod_euclid, (3, -4)),
    (mod_residue, (3, 0)),
    (congruent, (1, 2, -1)),
])
def test_nonpositive_modulus_rejected(fn, args):
    with pytest.raises(InvalidModulusError):
        fn(*args)


def test_division_relation_exhaustive():
    for n in range(1, 101):
        for p in range(-10_000, 10_001):
            q, r = divmod_euclid(p, n)
            assert p == q * n + r and 0 <= r < n


@given(ints, moduli)
def test_division_relation_wide_range(p, n):
    q, r = divmod_euclid(p, n)
    assert p == q * n + r
    assert 0 <= r < n
    assert mod_residue(p, n) == r


@given(ints, ints, moduli)
def test_mod_properties(a, b, n):
    assert mod_residue(a + b, n) == mod_residue(mod_residue(a, n) + mod_residue(b, n), n)
    assert mod_residue(a - b, n) == mod_residue(mod_residue(a, n) - mod_residue(b, n), n)
    assert mod_residue(a * b, n) == mod_residue(mod_residue(a, n) * mod_residue(b, n), n)


@given(ints, ints, ints, st.integers(min_value=1, max_value=1000))
def test_congruence_is_equivalence(x, y, z, n):
    assert congruent(x, x, n)
    assert congruent(x, y, n) == congruent(y, x, n)
    if congruent(x, y, n) and congruent(y, z, n):
        assert congruent(x, z, n)
    # force a transitive chain that actually holds
    assert congruent(x, x + n * 3, n) and congruent(x + n * 3, x - n, n) and congruent(x, x - n, n)


def test_residue_classes_mod5_listing():
    listed = {
        0: [-15, -10, -5, 0, 5, 10, 15],
        1: [-14, -9, -4, 1, 6, 11, 16],
        2: [-13, -8, -3, 2, 7, 12, 17],
        3: [-12, -7, -2, 3, 8, 13, 18],
        4: [-11, -6, -1, 4, 9, 14, 19],
    }
    classes = {r: residue_class(r, 5, -15, 19) for r in range(5)}
    assert classes == listed
    members = sorted(x for c in classes.values() for x in c)
    assert members == list(range(-15, 20))
    for r, cls in classes.items():
        assert all(mod_residue(x, 5) == r for x in cls)


def test_residue_class_vectorized_agrees():
    p = np.arange(-500, 501)
    for n in (1, 2, 6, 11):
        assert np.array_equal(mod_residue(p, n), np.array([mod_residue(int(v), n) for v in p]))
