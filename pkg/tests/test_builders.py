import pytest

from k3lat.builders import (
    KummerSpan,
    direct_sum,
    hyperbolic_plane,
    jacobian_hyperbolic_basis,
    jacobian_section_basis,
    k_lattice,
    kummer_combination,
    kummer_images,
    lambda_into_omega,
    lambda_lattice,
    lambda_omega_solutions,
    lambdabar_basis_in_lambda,
    lambdabar_into_k,
    lambdabar_lattice,
    minus_two_block,
    omega_jacobian_lattice,
    omega_lattice,
    p_into_omega,
    p_lattice,
    p_polarization_pairing,
    p_split,
    pencil_degree,
    section_frame,
    verify_kummer_embedding,
)
from k3lat.errors import RangeError
from k3lat.lattice import change_basis_isometry, lattice_profile


def test_pencil_lattice_shape():
    lat = omega_lattice(11, (3, 3, 3, 3, 3, 3, 3, 1))
    assert lat.rank == 10
    assert lat.labels == ("L", "E", "G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8")
    profile = lattice_profile(lat)
    assert profile.signature == (1, 9)
    assert profile.even
    L, E = lat.basis_class("L"), lat.basis_class("E")
    assert L.square() == 20
    assert E.square() == 0
    assert L.dot(E) == pencil_degree(11) == 6
    for i in range(1, 9):
        root = lat.basis_class(f"G{i}")
        assert root.square() == -2
        assert root.dot(E) == 0
    assert lat.basis_class("G1").dot(L) == 3
    assert lat.basis_class("G8").dot(L) == 1


def test_pencil_lattice_bounds():
    with pytest.raises(RangeError):
        omega_lattice(4, (1,) * 8)
    with pytest.raises(RangeError):
        omega_lattice(11, (6, 1, 1, 1, 1, 1, 1, 1))  # degree must stay below 6
    with pytest.raises(RangeError):
        omega_lattice(11, (0, 1, 1, 1, 1, 1, 1, 1))
    with pytest.raises(RangeError):
        omega_lattice(11, (1, 1, 1))  # exactly eight degrees


def test_jacobian_frames_are_exact_isometries():
    for g, d in ((11, (3,) * 7 + (1,)), (13, (4, 4, 3, 3, 2, 2, 1, 1)),
                 (12, (2,) * 8), (17, (8, 7, 6, 5, 4, 3, 2, 1))):
        lat = omega_jacobian_lattice(g, d)
        assert lat.basis_class("L").dot(lat.basis_class("F")) == 1
        section_target = direct_sum(section_frame(), minus_two_block(8))
        hyper_target = direct_sum(hyperbolic_plane(), minus_two_block(8))
        assert change_basis_isometry(lat, section_target,
                                     jacobian_section_basis(g, d))
        assert change_basis_isometry(lat, hyper_target,
                                     jacobian_hyperbolic_basis(g, d))


def test_polarization_pairing_branches():
    # remainder 0: s1 = p - h - 1
    w = pencil_degree(11)
    assert p_split(11 + w, 11) == (1, 0)
    assert p_polarization_pairing(11 + w, 11) == w - 1
    # remainder w - 1: s1 = p - h - 1
    assert p_split(11 + 2 * w - 1, 11) == (1, w - 1)
    assert p_polarization_pairing(11 + 2 * w - 1, 11) == 2 * w - 2
    # middle remainder: s1 = p - h + 1
    assert p_split(11 + w + 2, 11) == (1, 2)
    assert p_polarization_pairing(11 + w + 2, 11) == w + 3
    with pytest.raises(RangeError):
        p_split(11, 11)
    with pytest.raises(RangeError):
        p_split(12, 7)


def test_polarization_lattice_gram():
    lat = p_lattice(17, 11)
    s1 = p_polarization_pairing(17, 11)
    assert lat.gram_rows() == [[2 * 11 - 2, s1, 3], [s1, -2, 0], [3, 0, -2]]
    assert lattice_profile(lat).signature == (1, 2)


def test_polarization_embeds_primitively_across_the_range():
    for h in range(8, 14):
        for p in range(h + 1, h + 21):
            embedding = p_into_omega(p, h)
            report = embedding.report
            assert report.is_isometric_embedding, (p, h)
            assert report.is_primitive, (p, h)


def test_fibration_solutions_match_direct_search():
    for a in range(14, 20):
        direct = sorted(
            (eps, d1, d2)
            for eps in (0, 1)
            for d1 in range(3, 6)
            for d2 in range(3, 6)
            if 10 + d1 + eps * (d2 - 1) == a
        )
        found = sorted(lambda_omega_solutions(a))
        assert found == direct
        assert len(found) >= 1
    assert len(lambda_omega_solutions(14)) == 3
    assert len(lambda_omega_solutions(15)) == 4
    assert len(lambda_omega_solutions(19)) == 1
    with pytest.raises(RangeError):
        lambda_omega_solutions(13)


def test_fibration_lattice_embeds_for_every_solution():
    for a in range(14, 20):
        for solution in lambda_omega_solutions(a):
            embedding = lambda_into_omega(a, solution)
            assert embedding.report.is_isometric_embedding
            assert embedding.report.is_primitive
        default = lambda_into_omega(a)
        assert default.report.is_primitive
        eps = default.choices["eps"]
        assert eps == (0 if a <= 15 else 1)


def test_rebased_fibration_lattice():
    for a in (14, 16, 19):
        src = lambda_lattice(a)
        dst = lambdabar_lattice(a)
        y = a - 14
        assert dst.gram_rows()[0][0] == 2 * y - 2
        assert change_basis_isometry(src, dst, lambdabar_basis_in_lambda())


def test_rebased_lattice_embeds_into_the_tower():
    expected = {14: None, 15: 2, 16: 3, 17: 4, 18: 5, 19: 5}
    for a in range(14, 20):
        embedding = lambdabar_into_k(a)
        assert embedding.report.is_isometric_embedding
        assert embedding.report.is_primitive
        if expected[a] is not None:
            assert embedding.choices["d"] == expected[a]
    # the pinned branch rejects a mismatched tower parameter
    with pytest.raises(RangeError):
        lambdabar_into_k(15, d=4)
    # a = 14 allows any tower parameter
    assert lambdabar_into_k(14, d=3).report.is_primitive


def test_tower_lattice_shape():
    for d in range(1, 6):
        lat = k_lattice(d)
        assert lat.rank == 5
        assert lattice_profile(lat).signature == (1, 4)
        assert lat.basis_class("A").dot(lat.basis_class("B")) == 6
    with pytest.raises(RangeError):
        k_lattice(6)


def test_kummer_span_pairing_rules():
    span = KummerSpan()
    assert span.square({"E23": 1}) == -2
    assert span.square({"F": 1}) == 0
    assert span.pairing({"T2": 1}, {"E23": 1}) == 1
    assert span.pairing({"T2": 1}, {"E13": 1}) == 0
    assert span.pairing({"S3": 1}, {"E23": 1}) == 1
    assert span.pairing({"F": 1}, {"S1": 1}) == 1
    assert span.pairing({"F": 1}, {"T1": 1}) == 0


def test_kummer_combination_summary():
    first = {"S1": 1, "E11": 1, "T1": 1, "E12": 1, "S2": 1, "E13": 1, "S3": 1}
    summary = kummer_combination(first)
    assert summary.square == -2
    assert summary.pairing_with("T1") == 1
    assert summary.pairing_with("F") == 3
    with pytest.raises(RangeError):
        summary.pairing_with("X9")


def test_kummer_embedding_verifies_for_every_tower_step():
    for d in range(1, 6):
        report = verify_kummer_embedding(d)
        assert report.is_isometric_embedding, d
        assert report.is_primitive, d
        assert set(report.invariant_factors) == {1}
    # the composite branch really kicks in at d = 4
    images = kummer_images(4)
    assert "S4" in images["G3"] and "T2" in images["G3"]
    assert "S4" not in kummer_images(3)["G3"]


def test_kummer_negative_control():
    # wrong fibre-section pairing drops the composite pairing from 6 to 3
    degenerate = KummerSpan(fibre_section_pairing=0)
    report = verify_kummer_embedding(2, degenerate)
    assert report.is_isometric_embedding is False
