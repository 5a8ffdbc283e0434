import random

import pytest

from k3lat.builders import hyperbolic_plane, omega_lattice
from k3lat.cones import ample_context
from k3lat.enumeration import (
    EnumQuery,
    classes_with_degree,
    enumerate_by_square_and_degree,
    enumerate_square_degree,
    orthogonal_roots,
    roots_orthogonal_to,
)
from k3lat.errors import ShapeError, SignatureError
from k3lat.lattice import make_lattice

from conftest import ample_class_or_none, random_even_hyperbolic, scan_box


U = hyperbolic_plane()
H = U.cls((1, 1))  # square 2, degree of (a, b) is a + b


def coords(classes):
    return [c.coords for c in classes]


def test_hyperbolic_plane_fibers_by_hand():
    # a + b = 2, 2ab = 0  ->  (0,2), (2,0)
    assert coords(classes_with_degree(U, H, 2, 0, 0)) == [(0, 2), (2, 0)]
    # a + b = 2, 2ab = 2  ->  (1,1)
    assert coords(classes_with_degree(U, H, 2, 2, 2)) == [(1, 1)]
    # a + b = 3, square -2 needs 2ab = -2: no integer solutions
    assert classes_with_degree(U, H, 3, -2, -2) == []
    # a + b = 3, square window [-2, 4] -> (0,3), (1,2), (2,1), (3,0)
    assert coords(classes_with_degree(U, H, 3, -2, 4)) == [
        (0, 3), (1, 2), (2, 1), (3, 0)]


def test_orthogonal_roots_of_the_hyperbolic_plane():
    found = orthogonal_roots(U, H)
    assert coords(found) == [(-1, 1), (1, -1)]
    ctx = ample_context(U, U.cls((2, 1)))
    assert roots_orthogonal_to(ctx, H) == found


def test_enumeration_needs_hyperbolic_signature():
    negdef = make_lattice([[-2, 0], [0, -2]])
    with pytest.raises(SignatureError):
        classes_with_degree(negdef, negdef.cls((1, 0)), 1, -2, 0)


def test_query_validation():
    with pytest.raises(ShapeError):
        EnumQuery(square=1, degree_min=0, degree_max=4)
    with pytest.raises(ShapeError):
        EnumQuery(square=0, degree_min=5, degree_max=4)


def test_certified_box_is_exhaustive_on_a_rank_three_lattice():
    # an exhaustive scan of the certified box is only affordable in low
    # rank; rank 3 with a dense Gram exercises the same code paths
    lat = make_lattice([[4, 1, 3], [1, -2, 0], [3, 0, -2]])
    ref = lat.cls((1, 0, 0))
    for square in (-2, 0):
        result = enumerate_square_degree(lat, ref, square, 0, 6)
        bound = result.completeness_bound
        rescan = scan_box(lat, ref, bound.box, square, 0, 6)
        assert [c.coords for c in result.classes] == rescan


def test_context_entry_point_matches_direct_call():
    lat = omega_lattice(11, (3, 3, 3, 3, 3, 3, 3, 1))
    ref = lat.basis_class("L")
    ctx = ample_context(lat, ref)
    query = EnumQuery(square=-2, degree_min=1, degree_max=3)
    via_ctx = enumerate_by_square_and_degree(ctx, query)
    direct = enumerate_square_degree(lat, ref, -2, 1, 3)
    assert via_ctx.classes == direct.classes
    assert len(via_ctx.classes) > 0


def test_random_lattices_against_box_scan():
    rng = random.Random(1105)
    done = 0
    while done < 12:
        lat = random_even_hyperbolic(rng)
        ample = ample_class_or_none(lat)
        if ample is None:
            continue
        for square in (-2, 0, 2):
            result = enumerate_square_degree(lat, ample, square, 0, 8)
            rescan = scan_box(lat, ample, result.completeness_bound.box,
                              square, 0, 8)
            assert [c.coords for c in result.classes] == rescan
        done += 1


def test_results_are_sorted_and_duplicate_free():
    lat = omega_lattice(13, (4, 4, 3, 3, 2, 2, 1, 1))
    ref = lat.basis_class("L")
    found = classes_with_degree(lat, ref, 4, -2, 2)
    assert found == sorted(found, key=lambda c: c.coords)
    assert len({c.coords for c in found}) == len(found)
