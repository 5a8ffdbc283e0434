import pytest
from hypothesis import given, strategies as st

from k3lat.builders import hyperbolic_plane, omega_lattice
from k3lat.configurations import (
    arithmetic_genus,
    build_threshold_config,
    connected_pieces,
    decomposition_obstruction,
    make_configuration,
    total_class,
)
from k3lat.errors import (
    ClassMismatch,
    Disconnected,
    LatticeMismatch,
    RangeError,
    TooLarge,
)
from k3lat.lattice import make_lattice


U = hyperbolic_plane()
HU = U.cls((2, 1))
F = U.cls((1, 0))
ZERO = U.zero()


def chain(lattice, length, cls, mult=1):
    comps = [(f"C{i}", 0, cls) for i in range(length)]
    edges = [(f"C{i}", f"C{i+1}", mult) for i in range(length - 1)]
    return make_configuration(lattice, comps, edges)


def test_single_component_keeps_its_genus():
    config = make_configuration(U, [("C", 7, HU)], [])
    assert arithmetic_genus(config) == 7
    assert total_class(config).coords == (2, 1)


def test_chain_of_rational_curves_has_genus_zero():
    assert arithmetic_genus(chain(U, 5, F)) == 0


def test_cycle_of_rational_curves_has_genus_one():
    comps = [(f"C{i}", 0, F) for i in range(6)]
    edges = [(f"C{i}", f"C{(i+1) % 6}", 1) for i in range(6)]
    config = make_configuration(U, comps, edges)
    assert arithmetic_genus(config) == 1


def test_edge_multiplicity_counts_every_node():
    # two rational curves glued at m points form a genus m - 1 cycle chain
    for m in (1, 2, 3):
        comps = [("A", 0, HU), ("B", 0, HU)]
        config = make_configuration(U, comps, [("A", "B", m)])
        assert arithmetic_genus(config) == m - 1


def test_disconnected_configurations_are_rejected():
    comps = [("A", 2, HU), ("B", 3, HU)]
    config = make_configuration(U, comps, [])
    assert len(connected_pieces(config)) == 2
    with pytest.raises(Disconnected):
        arithmetic_genus(config)
    assert arithmetic_genus(config, per_piece=True) == (2, 3)


def test_make_configuration_validation():
    with pytest.raises(RangeError):
        make_configuration(U, [("A", -1, HU)], [])
    with pytest.raises(RangeError):
        make_configuration(U, [("A", 0, HU), ("A", 0, HU)], [])
    with pytest.raises(RangeError):
        make_configuration(U, [("A", 0, HU)], [("A", "A", 1)])
    with pytest.raises(RangeError):
        make_configuration(U, [("A", 0, HU)], [("A", "B", 1)])
    with pytest.raises(RangeError):
        make_configuration(U, [("A", 0, HU), ("B", 0, HU)], [("A", "B", 0)])
    other = make_lattice([[2]])
    with pytest.raises(LatticeMismatch):
        make_configuration(U, [("A", 0, other.cls((1,)))], [])


def test_transversality_is_capped_by_the_pairing():
    comps = [("A", 0, F), ("B", 0, U.cls((0, 1)))]
    # F . (0,1) = 1, so a double point is not transversal
    config = make_configuration(U, comps, [("A", "B", 2)])
    assert config.transversal is False
    with pytest.raises(RangeError):
        make_configuration(U, comps, [("A", "B", 2)], transversal=True)
    fine = make_configuration(U, comps, [("A", "B", 1)])
    assert fine.transversal is True


def test_decomposition_obstruction_catches_a_twin_split():
    comps = [("A", 3, HU), ("B", 3, HU)]
    config = make_configuration(U, comps, [("A", "B", 4)])
    decision = decomposition_obstruction(config, HU, 2)
    assert not decision.verdict
    witness = decision.certificate
    assert witness.cls.coords == HU.coords


def test_decomposition_obstruction_validates_the_class():
    config = make_configuration(U, [("A", 3, HU)], [])
    with pytest.raises(ClassMismatch):
        decomposition_obstruction(config, HU, 2)  # total is 1 * HU
    with pytest.raises(ClassMismatch):
        decomposition_obstruction(config, ZERO, 1)
    big = chain(U, 25, F)
    with pytest.raises(TooLarge):
        decomposition_obstruction(big, F, 25)


def test_threshold_configuration_genus_table():
    assert build_threshold_config("prim-r0", 17).genus == 12
    assert build_threshold_config("prim-r0", 23).genus == 12
    for g, expected in ((12, 13), (13, 13), (14, 13), (15, 13), (16, 15)):
        assert build_threshold_config("prim-general", g).genus == expected
    rows = ((8, 3, 16), (12, 3, 18), (14, 3, 15),
            (20, 2, 15), (16, 2, 17), (14, 2, 15), (8, 2, 14))
    for g, k, expected in rows:
        built = build_threshold_config("nonprim", g, k=k)
        assert built.genus == expected, (g, k)
        assert built.cover_multiplicity == k


def test_threshold_configuration_shapes():
    built = build_threshold_config("prim-general", 13)
    assert built.shape["s1"] == 3
    assert built.configuration.transversal is True
    # the genus-12 case would need three gluing points on a pairing of two
    low = build_threshold_config("prim-general", 12)
    assert low.shape["s1"] == 2
    assert low.configuration.transversal is False
    nonprim = build_threshold_config("nonprim", 14, k=2)
    assert nonprim.shape["l"] == 2
    assert nonprim.shape["a"] == 14
    with pytest.raises(RangeError):
        build_threshold_config("prim-r0", 18)
    with pytest.raises(RangeError):
        build_threshold_config("nonprim", 8, k=1)
    with pytest.raises(RangeError):
        build_threshold_config("no-such-kind", 12)


def test_threshold_configurations_are_indecomposable():
    for g in (17, 23):
        built = build_threshold_config("prim-r0", g)
        assert decomposition_obstruction(
            built.configuration, built.polarization, 1).verdict
    for g, k in ((14, 2), (16, 2), (20, 2), (14, 3), (8, 2), (8, 3)):
        built = build_threshold_config("nonprim", g, k=k)
        assert decomposition_obstruction(
            built.configuration, built.polarization, k).verdict, (g, k)


def test_total_class_sums_multiplicity_free():
    built = build_threshold_config("prim-r0", 17)
    total = total_class(built.configuration)
    assert total.coords == built.polarization.coords


genus_values = st.lists(st.integers(0, 5), min_size=1, max_size=6)


@given(genus_values, st.integers(1, 3))
def test_tree_genus_adds_component_genera(genera, mult):
    # gluing a chain with constant edge multiplicity m: each edge adds m - 1
    lat = hyperbolic_plane()
    comps = [(f"C{i}", g, lat.cls((2, 1))) for i, g in enumerate(genera)]
    edges = [(f"C{i}", f"C{i+1}", mult) for i in range(len(genera) - 1)]
    config = make_configuration(lat, comps, edges)
    expected = sum(genera) + (len(genera) - 1) * (mult - 1)
    assert arithmetic_genus(config) == expected
