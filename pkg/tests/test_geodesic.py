import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus_complex
from zigzags.complex import bipyramid, cross_polytope, simplex
from zigzags.coxeter import coxeter_complex, distinct_reduced_expression_exists, length, named_matrix
from zigzags.errors import FaceNotInComplex, NotAPath, NotDistanceNormal, RankMismatch, RankOutOfRange
from zigzags.geodesic import (
    all_geodesics,
    are_z_connected,
    distance,
    is_distance_normal_geodesic,
    is_distance_normal_pair,
    is_geodesic,
    section_4_3_report,
    shortest_path,
    weakly_adjacent,
    z_connection_matrix,
    zigzags_containing_path,
    zigzags_through_geodesic,
)
from zigzags.zigzag import enumerate_zigzags


def f(cx, *labels):
    return cx.face([str(x) for x in labels])


def test_adjacent_and_distance_two_pairs_are_normal():
    for name in ("beta4", "bipyramid6", "Sigma(B3)", "alpha2*alpha3", "pinched_torus"):
        cx = corpus_complex(name)
        for i, x in enumerate(cx.facets):
            dist = cx.facet_distances(i)
            for j, y in enumerate(cx.facets):
                if dist[j] in (1, 2):
                    assert is_distance_normal_pair(cx, x, y).pair_normal


def test_alpha_beta_all_pairs_normal():
    for cx in (simplex(4), cross_polytope(3), cross_polytope(4)):
        for x, y in itertools.combinations(cx.facets, 2):
            assert is_distance_normal_pair(cx, x, y).pair_normal


def _sigma_pair(name, word):
    s = coxeter_complex(named_matrix(name))
    return s, s.facet(0), s.facet(s.group.element(word))


def test_non_commuting_triple_is_not_normal():
    s, x, y = _sigma_pair("A3", [0, 1, 0])
    v = is_distance_normal_pair(s.complex, x, y)
    assert not v.pair_normal and v.distance == 3
    assert len(set(x) & set(y)) == s.rank - 2
    path = [s.facet(s.group.element(w)) for w in ([], [0], [0, 1], [0, 1, 0])]
    assert is_geodesic(s.complex, path) and not is_distance_normal_geodesic(s.complex, path)


def test_rank_two_triple_is_normal():
    # in rank two d = 3 exceeds n, so only windows of length <= 2 are compared
    s, x, y = _sigma_pair("A2", [0, 1, 0])
    v = is_distance_normal_pair(s.complex, x, y)
    assert v.pair_normal and v.distance == 3 and len(v.witness_geodesic) == 4
    path = [s.facet(s.group.element(w)) for w in ([], [0], [0, 1], [0, 1, 0])]
    assert is_distance_normal_geodesic(s.complex, path)


def test_bipyramid_pair():
    b = bipyramid(6)
    x, y = f(b, "a", 1, 2), f(b, "a", 4, 5)
    v = is_distance_normal_pair(b, x, y)
    assert v.distance == 3 and not v.pair_normal


def test_beta3_antipodal_geodesic():
    b3 = cross_polytope(3)
    x, y = f(b3, 1, 2, 3), f(b3, -1, -2, -3)
    assert distance(b3, x, y) == 3
    paths = all_geodesics(b3, x, y)
    assert len(paths) == 6
    assert all(is_distance_normal_geodesic(b3, p) for p in paths)
    for p in paths:
        (z,) = zigzags_through_geodesic(b3, p)
        assert z.contains_path(p)


def test_single_edge_paths():
    cx = corpus_complex("bipyramid7")
    for a, b in cx.ridges.values():
        assert is_distance_normal_geodesic(cx, [cx.facets[a], cx.facets[b]])


def test_path_errors():
    b3 = cross_polytope(3)
    with pytest.raises(NotAPath):
        is_distance_normal_geodesic(b3, [f(b3, 1, 2, 3), f(b3, -1, -2, 3)])
    with pytest.raises(FaceNotInComplex):
        distance(b3, f(b3, 1, 2), f(b3, 1, 2, 3))
    with pytest.raises(NotDistanceNormal):
        s, x, y = _sigma_pair("A3", [0, 1, 0])
        zigzags_through_geodesic(s.complex, shortest_path(s.complex, x, y))
    with pytest.raises(NotAPath):
        zigzags_through_geodesic(b3, [f(b3, 1, 2, 3)])


EXTENSION_FIXTURES = ["alpha3", "alpha4", "beta3", "beta4", "Sigma(A3)", "Sigma(B3)", "bipyramid6", "alpha2*alpha3"]


@pytest.mark.parametrize("name", EXTENSION_FIXTURES)
def test_extension_counts_against_brute_force(name):
    cx = corpus_complex(name)
    n = cx.rank
    for x, y in itertools.combinations(cx.facets, 2):
        for p in all_geodesics(cx, x, y):
            if not is_distance_normal_geodesic(cx, p):
                continue
            got = zigzags_through_geodesic(cx, p)
            assert [z.flags for z in got] == [z.flags for z in zigzags_containing_path(cx, p)]
            m = len(p) - 1
            if m <= n:
                assert 1 <= len(got) <= math.factorial(n - m)
            else:
                assert len(got) == 1


def test_adjacent_pair_bound():
    cx = corpus_complex("beta4")
    for a, b in cx.ridges.values():
        got = zigzags_through_geodesic(cx, [cx.facets[a], cx.facets[b]])
        assert len(got) <= math.factorial(cx.rank - 1)


Z_SIMPLE = ["alpha3", "alpha4", "beta3", "beta4", "Sigma(A3)", "Sigma(B3)", "Sigma(H3)"]


@pytest.mark.parametrize("name", Z_SIMPLE)
def test_shadow_geodesics_are_distance_normal(name):
    # subpaths of facet shadows of a z-simple complex that are geodesics are distance normal
    cx = corpus_complex(name)
    n = cx.rank
    for z in enumerate_zigzags(cx):
        top = [tuple(sorted(fl)) for fl in z.flags]
        l = len(top)
        for start in range(l):
            for m in range(1, min(l // 2, 2 * n + 2) + 1):
                p = [top[(start + i) % l] for i in range(m + 1)]
                if is_geodesic(cx, p):
                    assert is_distance_normal_geodesic(cx, p)


@pytest.mark.parametrize("name", ["beta3", "Sigma(A3)"])
def test_normal_iff_inside_a_shadow(name):
    cx = corpus_complex(name)
    for x, y in itertools.combinations(cx.facets, 2):
        for p in all_geodesics(cx, x, y):
            assert bool(zigzags_containing_path(cx, p)) == is_distance_normal_geodesic(cx, p)


def test_normality_matches_reduced_words_b3():
    s = coxeter_complex(named_matrix("B3"))
    t, n = s.group, s.rank
    checked = 0
    for w in range(t.size):
        for v in range(t.size):
            u = t.mul(t.inverse(w), v)
            if length(t, u) <= n:
                normal = is_distance_normal_pair(s.complex, s.facet(w), s.facet(v)).pair_normal
                assert normal == distinct_reduced_expression_exists(t, u)
                checked += 1
    assert checked > 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["beta4", "Sigma(B3)", "Sigma(H3)", "bipyramid7", "pinched_torus"]), st.data())
def test_witness_is_distance_normal(name, data):
    cx = corpus_complex(name)
    x = data.draw(st.sampled_from(cx.facets))
    y = data.draw(st.sampled_from(cx.facets))
    v = is_distance_normal_pair(cx, x, y)
    assert v.distance == distance(cx, x, y)
    if v.pair_normal and v.distance > 0:
        assert is_distance_normal_geodesic(cx, list(v.witness_geodesic))
    if v.distance > cx.rank:
        # existence of a distance normal geodesic, checked exhaustively
        assert v.pair_normal == any(is_distance_normal_geodesic(cx, p) for p in all_geodesics(cx, x, y))


# -- z-connectedness and weak adjacency -------------------------------------------

def test_simplex_faces_all_z_connected():
    for n in (2, 3, 4):
        cx = simplex(n)
        faces = [fc for k in range(n) for fc in cx.faces(k)]
        assert all(are_z_connected(cx, a, b) for a, b in itertools.combinations(faces, 2))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cross_polytope_not_z_connected(n):
    cx = cross_polytope(n)
    for k in range(1, n - 1):
        for base in itertools.combinations(range(1, n), k):
            j = n
            x = f(cx, *base, j)
            y = f(cx, *base, -j)
            assert not are_z_connected(cx, x, y)


def test_weak_adjacency():
    b3 = cross_polytope(3)
    assert weakly_adjacent(b3, f(b3, 1, 2), f(b3, 1, -2))
    assert not weakly_adjacent(b3, f(b3, 1, 2), f(b3, 1, 3))
    b4 = cross_polytope(4)
    assert not weakly_adjacent(b4, f(b4, 1, 2), f(b4, 3, 4))
    with pytest.raises(RankMismatch):
        weakly_adjacent(b4, f(b4, 1, 2), f(b4, 1, 2, 3))
    with pytest.raises(RankOutOfRange):
        weakly_adjacent(b3, f(b3, 1), f(b3, 2))


def test_z_connection_matrix_symmetric():
    cx = corpus_complex("bipyramid6")
    faces, mat = z_connection_matrix(cx, 1)
    for i, j in itertools.product(range(len(faces)), repeat=2):
        assert mat[i][j] == mat[j][i] == are_z_connected(cx, faces[i], faces[j])


@pytest.mark.parametrize("name", ["beta3", "beta4", "alpha3", "alpha5", "bipyramid6", "bipyramid5",
                                  "Sigma(A3)", "Sigma(B3)", "pinched_torus", "alpha2*alpha3"])
def test_neighborliness_report(name):
    rep = section_4_3_report(corpus_complex(name))
    assert rep.passed


def test_neighborliness_report_details():
    assert section_4_3_report(cross_polytope(4)).weak_pairs_checked > 0
    rep = section_4_3_report(simplex(5))
    assert rep.all_connected_up_to == 3
    assert rep.neighborly_implications == [(1, True), (2, True), (3, True)]
    assert section_4_3_report(bipyramid(6)).weak_pairs_checked > 0
