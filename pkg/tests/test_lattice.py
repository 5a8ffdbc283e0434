import random

import pytest
from hypothesis import given, strategies as st

from k3lat.builders import hyperbolic_plane, minus_two_block, direct_sum
from k3lat.errors import (
    DegenerateLattice,
    LatticeMismatch,
    NotARoot,
    ShapeError,
)
from k3lat.lattice import (
    change_basis_isometry,
    lattice_profile,
    make_lattice,
    pairing,
    reflect,
    verify_embedding,
)

from conftest import random_even_hyperbolic


U = hyperbolic_plane()


def test_make_lattice_validates_shape_and_parity():
    with pytest.raises(ShapeError):
        make_lattice([[0, 1], [1, 0], [0, 0]])
    with pytest.raises(ShapeError):
        make_lattice([[0, 1], [2, 0]])
    with pytest.raises(ShapeError):
        make_lattice([[1, 0], [0, -2]])
    with pytest.raises(DegenerateLattice):
        make_lattice([[2, 2], [2, 2]])
    with pytest.raises(ShapeError):
        make_lattice([[0, 1], [1, 0]], labels=("a", "a"))


def test_divisor_class_arithmetic():
    e1 = U.basis_class("u1")
    e2 = U.basis_class("u2")
    assert pairing(e1, e2) == 1
    assert e1.square() == 0
    assert (e1 + e2).square() == 2
    assert (2 * e1 - e2).coords == (2, -1)
    assert (e1 - e1).is_zero()
    assert (3 * (e1 + e2)).is_primitive() is False
    assert U.combination({"u1": 1, "u2": -4}).coords == (1, -4)
    other = make_lattice([[2]])
    with pytest.raises(LatticeMismatch):
        pairing(e1, other.cls((1,)))


def test_profile_of_standard_blocks():
    prof = lattice_profile(U)
    assert prof.signature == (1, 1)
    assert prof.even is True
    assert prof.discriminant == -1
    block = minus_two_block(3)
    prof = lattice_profile(block)
    assert prof.signature == (0, 3)
    assert prof.discriminant == -8
    summed = direct_sum(U, block)
    assert lattice_profile(summed).signature == (1, 4)
    assert summed.rank == 5


def test_verify_embedding_primitivity():
    # identity embedding of U into itself is primitive
    report = verify_embedding(U, U, [[1, 0], [0, 1]])
    assert report.is_isometric_embedding and report.is_primitive
    # index-2 sublattice: doubling one basis vector scales the Gram, so it
    # is not even isometric; embedding 2*(u1+u2) spans a non-primitive line
    line = make_lattice([[8]])
    report = verify_embedding(line, U, [[2], [2]])
    assert report.is_isometric_embedding
    assert report.is_primitive is False
    assert 2 in report.invariant_factors
    # wrong Gram
    report = verify_embedding(make_lattice([[4]]), U, [[2], [2]])
    assert report.is_isometric_embedding is False


def test_change_basis_accepts_rational_overlattice():
    # halving an isotropic vector of the doubled hyperbolic plane gives back
    # the hyperbolic plane
    doubled = make_lattice([[0, 2], [2, 0]])
    assert change_basis_isometry(doubled, U, [["1/2", 0], [0, 1]])
    # a non-integral pairing is rejected
    assert change_basis_isometry(doubled, U, [["1/3", 0], [0, 1]]) is False


def test_reflect_requires_root():
    e1 = U.basis_class("u1")
    with pytest.raises(NotARoot):
        reflect(e1, e1 + U.basis_class("u2"))


coeffs = st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))


@given(coeffs, st.integers(0, 2 ** 30))
def test_reflection_is_an_isometric_involution(coords, seed):
    lat = random_even_hyperbolic(random.Random(seed))
    roots = [lat.cls(v) for v in _small_roots(lat)]
    if not roots:
        return
    root = roots[seed % len(roots)]
    cls = lat.cls(coords)
    image = reflect(cls, root)
    assert image.square() == cls.square()
    assert pairing(image, root) == -pairing(cls, root)
    assert reflect(image, root).coords == cls.coords


def _small_roots(lat, reach=3):
    import itertools
    out = []
    for coords in itertools.product(range(-reach, reach + 1), repeat=lat.rank):
        if sum(lat.gram_rows()[i][j] * coords[i] * coords[j]
               for i in range(lat.rank) for j in range(lat.rank)) == -2:
            out.append(coords)
    return out
