import random

import pytest

from k3lat.builders import hyperbolic_plane, omega_lattice
from k3lat.cones import (
    Exhausted,
    Witness,
    WitnessClass,
    ample_context,
    big_nef_context,
    clifford_index,
    concat_witnesses,
    find_ample_class,
    is_ample,
    is_big_nef,
    is_effective,
    is_irreducible_class,
    is_nef,
    nef_reduce,
    quadric_hull_hypotheses,
    special_pencil_classes,
    very_ample_knutsen,
)
from k3lat.errors import NotPositiveClass, NotPrimitive, ParityError, RangeError
from k3lat.lattice import make_lattice, pairing

from conftest import ample_class_or_none, brute_effective, random_even_hyperbolic


U = hyperbolic_plane()
HU = U.cls((2, 1))
CTX = ample_context(U, HU)


def test_ampleness_on_the_hyperbolic_plane():
    assert is_ample(U, HU).verdict
    # (1, 1) is orthogonal to the root (1, -1): nef but not ample
    blocked = is_ample(U, U.cls((1, 1)))
    assert not blocked.verdict
    assert isinstance(blocked.certificate, WitnessClass)
    assert blocked.certificate.cls.square() == -2
    # negative square cannot be ample
    assert not is_ample(U, U.cls((1, -1))).verdict


def test_effectivity_basics():
    assert is_effective(CTX, U.zero()).verdict
    assert is_effective(CTX, U.cls((1, 0))).verdict      # isotropic, degree 1
    assert is_effective(CTX, U.cls((-1, 1))).verdict     # root, degree 1
    assert not is_effective(CTX, U.cls((1, -1))).verdict  # root, degree -1
    assert not is_effective(CTX, U.cls((-1, 0))).verdict
    # witness parts of an effective decision re-sum to the class
    decision = is_effective(CTX, U.cls((2, 3)))
    assert decision.verdict
    assert isinstance(decision.certificate, Witness)
    assert decision.certificate.total().coords == (2, 3)


def test_irreducibility_and_splitting():
    # a degree-1 isotropic class cannot split
    assert is_irreducible_class(CTX, U.cls((1, 0)), 8).verdict
    # (1, 1) = (1, 0) + (0, 1) splits into two effective classes
    split = is_irreducible_class(CTX, U.cls((1, 1)), 8)
    assert not split.verdict
    parts = split.certificate
    assert isinstance(parts, Witness)
    assert parts.total().coords == (1, 1)
    assert len(parts.parts) >= 2 or any(mult > 1 for _, mult in parts.parts)


def test_nef_and_big_nef():
    assert is_nef(CTX, HU).verdict
    assert is_nef(CTX, U.cls((1, 0))).verdict
    assert not is_nef(CTX, U.cls((1, -1))).verdict
    assert is_big_nef(CTX, HU).verdict
    assert not is_big_nef(CTX, U.cls((1, 0))).verdict  # square 0 is not big


def test_very_ample_catches_low_degree_pencils():
    # degree-1 pencil (1, 0) meets (2, 1) once: not very ample
    rejected = very_ample_knutsen(CTX, HU)
    assert not rejected.verdict
    assert isinstance(rejected.certificate, WitnessClass)
    assert rejected.certificate.cls.square() == 0
    with pytest.raises(NotPrimitive):
        very_ample_knutsen(CTX, U.cls((4, 2)))
    with pytest.raises(RangeError):
        very_ample_knutsen(CTX, U.cls((1, 0)))  # not big


def test_very_ample_on_a_pencil_lattice():
    lat = omega_lattice(11, (3, 3, 3, 3, 3, 3, 3, 1))
    ctx = ample_context(lat, lat.basis_class("L"))
    assert very_ample_knutsen(ctx, lat.basis_class("L")).verdict
    assert very_ample_knutsen(
        ctx, lat.combination({"L": 1, "E": -1})).verdict


def test_pencil_degree_ops_validate_their_input():
    with pytest.raises(NotPositiveClass):
        clifford_index(CTX, U.cls((1, 0)))
    genus_two = U.cls((1, 1))  # square 2, so (g+1)/2 is not an integer
    with pytest.raises(ParityError):
        special_pencil_classes(CTX, genus_two)
    with pytest.raises(ParityError):
        quadric_hull_hypotheses(CTX, genus_two, U.cls((1, 0)))


def test_clifford_on_the_genus_13_pencil_lattice():
    lat = omega_lattice(13, (3, 3, 3, 3, 3, 3, 3, 1))
    ctx = ample_context(lat, lat.basis_class("L"))
    big = lat.basis_class("L")
    found = clifford_index(ctx, big)
    assert found.value == 5
    assert found.generic == 6
    assert found.witness is not None and found.witness.square() == 0
    pencils = special_pencil_classes(ctx, big)
    assert [p.coords for p in pencils] == [lat.basis_class("E").coords]
    assert quadric_hull_hypotheses(ctx, big, lat.basis_class("E")).verdict


def test_nef_reduce_preserves_square_and_lands_nef():
    rng = random.Random(404)
    done = 0
    while done < 40:
        lat = random_even_hyperbolic(rng)
        ample = ample_class_or_none(lat)
        if ample is None:
            continue
        coords = tuple(rng.randint(-5, 5) for _ in range(lat.rank))
        cand = lat.cls(coords)
        if cand.square() <= 0:
            continue
        reduced, chain = nef_reduce(lat, cand, ample)
        assert reduced.square() == cand.square()
        ctx = ample_context(lat, ample)
        assert is_nef(ctx, reduced).verdict
        for root in chain.roots:
            assert root.square() == -2
        done += 1


def test_find_ample_class_produces_ample():
    diag = make_lattice([[2, 0], [0, -2]])
    seed = diag.cls((1, 0))
    assert not is_ample(diag, seed).verdict  # (0, 1) is orthogonal
    found = find_ample_class(diag, seed)
    assert found is not None
    assert is_ample(diag, found).verdict


def test_effectivity_agrees_with_brute_force_decomposition():
    rng = random.Random(77)
    done = 0
    while done < 25:
        lat = random_even_hyperbolic(rng)
        ample = ample_class_or_none(lat)
        if ample is None:
            continue
        ctx = ample_context(lat, ample)
        for _ in range(4):
            cand = lat.cls(tuple(rng.randint(-3, 3) for _ in range(lat.rank)))
            if not 0 < pairing(cand, ample) <= 6:
                continue
            assert is_effective(ctx, cand).verdict == brute_effective(ctx, cand)
        done += 1


def test_witness_concatenation_merges_multiplicities():
    a = Witness(parts=((U.cls((1, 0)), 2),))
    b = Witness(parts=((U.cls((1, 0)), 1), (U.cls((0, 1)), 3)))
    merged = concat_witnesses(a, b)
    assert merged.total().coords == (3, 3)
    assert dict((c.coords, m) for c, m in merged.parts) == {(1, 0): 3, (0, 1): 3}


def test_exhausted_certificates_record_windows():
    decision = is_effective(CTX, U.cls((5, -1)))
    assert not decision.verdict
    if isinstance(decision.certificate, Exhausted):
        assert decision.certificate.description
