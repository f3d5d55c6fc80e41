import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS, CORPUS_RANK2, corpus_complex
from zigzags.complex import bipyramid, cross_polytope, is_simplex, simplex
from zigzags.errors import InvalidFlag, LevelOutOfRange, NotAShadow, Z1Violation, Z2Violation
from zigzags.zigzag import (
    Shadow,
    canonical,
    check_flag,
    enumerate_zigzags,
    reconstruct_from_shadow,
    reverse_flag,
    reverse_orbit,
    shadow,
    sigma,
    t_orbit,
    t_step,
    zigzag_from_flag,
    zigzag_from_vertex_sequence,
    zigzag_predicates,
)


def flag(cx, *labels):
    return check_flag(cx, cx.ids(labels))


def labels(cx, seq):
    return cx.label_seq(seq)


def all_flags(cx):
    for f in cx.facets:
        yield from itertools.permutations(f)


def test_sigma_examples():
    a3 = simplex(3)
    f = flag(a3, 1, 2, 3)
    assert labels(a3, sigma(a3, f, 0)) == ["2", "1", "3"]
    assert labels(a3, sigma(a3, f, 2)) == ["1", "2", "4"]
    with pytest.raises(LevelOutOfRange):
        sigma(a3, f, 3)


def test_t_step_examples():
    a3 = simplex(3)
    assert labels(a3, t_step(a3, flag(a3, 1, 2, 3))) == ["2", "3", "4"]
    b2 = cross_polytope(2)
    assert labels(b2, t_step(b2, flag(b2, 1, 2))) == ["2", "-1"]


def test_invalid_flag():
    b3 = cross_polytope(3)
    with pytest.raises(InvalidFlag):
        flag(b3, 1, -1, 2)
    with pytest.raises(InvalidFlag):
        flag(b3, 1, 2)


def test_reverse_flag():
    assert reverse_flag((1, 2, 3)) == (3, 2, 1)


@pytest.mark.parametrize("name", CORPUS)
def test_operator_identities(name):
    cx = corpus_complex(name)
    n = cx.rank
    flags = list(all_flags(cx))
    if len(flags) > 2000:
        flags = random.Random(0).sample(flags, 2000)
    for f in flags:
        for i in range(n):
            assert sigma(cx, sigma(cx, f, i), i) == f
        g = f
        for i in range(n):
            g = sigma(cx, g, i)
        assert g == t_step(cx, f)
        assert t_step(cx, reverse_flag(t_step(cx, f))) == reverse_flag(f)  # TRT = R


def test_zigzag_from_flag():
    a3 = simplex(3)
    assert zigzag_from_flag(a3, flag(a3, 1, 2, 3)).length == 4
    b3 = cross_polytope(3)
    z = zigzag_from_flag(b3, flag(b3, 1, 2, 3))
    assert z.length == 6
    vs = labels(b3, z.vertex_shadow)
    assert vs == ["1", "2", "3", "-1", "-2", "-3"]


def test_shadow_levels():
    a3 = simplex(3)
    z = zigzag_from_flag(a3, flag(a3, 1, 2, 3))
    s0 = shadow(z, 0)
    assert isinstance(s0, Shadow) and len(s0) == 4
    assert sorted(labels(a3, [f[0] for f in s0.faces])) == ["1", "2", "3", "4"]
    top = shadow(z, 2).faces
    for x, y in zip(top, top[1:] + top[:1]):
        assert len(set(x) & set(y)) == 2
    with pytest.raises(LevelOutOfRange):
        shadow(z, 3)


def test_reconstruct_beta2():
    b2 = cross_polytope(2)
    faces = [b2.face([t]) for t in ("1", "2", "-1", "-2")]
    z = reconstruct_from_shadow(b2, 0, faces)
    got = [labels(b2, f) for f in t_orbit(b2, flag(b2, 1, 2))]
    assert got == [["1", "2"], ["2", "-1"], ["-1", "-2"], ["-2", "1"]]
    assert z == zigzag_from_flag(b2, flag(b2, 1, 2))


def test_corrupted_shadow():
    b3 = cross_polytope(3)
    z = zigzag_from_flag(b3, flag(b3, 1, 2, 3))
    for k in range(3):
        faces = list(shadow(z, k).faces)
        for pos in range(len(faces)):
            for other in b3.faces(k):
                if other == faces[pos]:
                    continue
                bad = faces[:pos] + [other] + faces[pos + 1:]
                with pytest.raises(NotAShadow):
                    reconstruct_from_shadow(b3, k, bad)


def test_vertex_sequence():
    b3 = cross_polytope(3)
    z = zigzag_from_vertex_sequence(b3, b3.ids(["1", "2", "3", "-1", "-2", "-3"]))
    assert z.length == 6
    a3 = simplex(3)
    with pytest.raises(Z1Violation):
        zigzag_from_vertex_sequence(a3, a3.ids(["1", "2", "3", "3", "4"]))
    b2 = cross_polytope(2)
    with pytest.raises(Z2Violation):
        zigzag_from_vertex_sequence(b2, b2.ids(["1", "2", "1", "2"]))


def test_enumeration_examples():
    zs = enumerate_zigzags(simplex(4))
    assert len(zs) == 12 and {z.length for z in zs} == {5}
    zs = enumerate_zigzags(cross_polytope(3))
    assert len(zs) == 4 and {z.length for z in zs} == {6}
    b6 = bipyramid(6)
    zs = enumerate_zigzags(b6)
    assert sum(2 * z.length for z in zs) == math.factorial(3) * 12 == 72


def test_predicates():
    for n in range(2, 6):
        for cx in (simplex(n), cross_polytope(n)):
            s = zigzag_predicates(cx)
            assert s.z_simple and s.z_uniform
    s = zigzag_predicates(cross_polytope(4))
    assert (s.count, s.common_length) == (24, 8)
    assert s.expected_count == math.factorial(4) * 16 / (2 * 8) == 24
    assert not zigzag_predicates(bipyramid(6)).z_simple


def test_rank_one_zigzag_is_its_own_reverse():
    # the count n!N/2l assumes no self-reverse zigzag; in rank one the single
    # T-orbit {(1), (2)} reverses to itself, so N n!/2l = 1/2
    a1 = simplex(1)
    (z,) = enumerate_zigzags(a1)
    assert canonical(z.reversed_flags()) == z
    s = zigzag_predicates(a1)
    assert s.count == 1 and s.expected_count == 0.5 and not s.count_formula_holds


# -- invariants -----------------------------------------------------------------

@pytest.mark.parametrize("name", CORPUS_RANK2)
def test_conservation_and_no_self_reverse(name):
    cx = corpus_complex(name)
    zs = enumerate_zigzags(cx)
    assert sum(2 * z.length for z in zs) == math.factorial(cx.rank) * cx.num_facets
    for z in zs:
        assert canonical(z.reversed_flags()) == z  # canonical form absorbs reversal
        assert tuple(reverse_orbit(list(z.flags))) != z.flags
        assert z.length > cx.rank


@pytest.mark.parametrize("name", CORPUS_RANK2)
def test_orbits_partition_flags(name):
    cx = corpus_complex(name)
    seen = {}
    for z in enumerate_zigzags(cx):
        for f in list(z.flags) + z.reversed_flags():
            assert f not in seen
            seen[f] = z
    assert len(seen) == math.factorial(cx.rank) * cx.num_facets


@pytest.mark.parametrize("name", CORPUS)
def test_repeat_spacing(name):
    cx = corpus_complex(name)
    for z in enumerate_zigzags(cx):
        vs, l = z.vertex_shadow, z.length
        where = {}
        for i, v in enumerate(vs):
            where.setdefault(v, []).append(i)
        for pos in where.values():
            for i, j in itertools.combinations(pos, 2):
                assert min(j - i, l - (j - i)) > cx.rank


def _same_cycle(a, b):
    return len(a) == len(b) and any(list(b[i:] + b[:i]) == list(a) for i in range(len(b)))


@pytest.mark.parametrize("name", CORPUS_RANK2)
def test_reverse_shadow_law(name):
    cx = corpus_complex(name)
    n = cx.rank
    for z in enumerate_zigzags(cx):
        x = list(z.vertex_shadow)  # x_1..x_l in 1-based terms
        expected = x[n - 2::-1] + x[:n - 2:-1]  # x_{n-1},...,x_1, x_l,...,x_n
        rev = [f[0] for f in z.reversed_flags()]
        assert _same_cycle(rev, expected)


@pytest.mark.parametrize("name", CORPUS)
def test_reconstruction_round_trip(name):
    cx = corpus_complex(name)
    for z in enumerate_zigzags(cx):
        for k in range(cx.rank):
            assert reconstruct_from_shadow(cx, k, shadow(z, k)) == z


@pytest.mark.parametrize("name", CORPUS)
def test_short_zigzag_iff_simplex(name):
    cx = corpus_complex(name)
    has_short = any(z.length == cx.rank + 1 for z in enumerate_zigzags(cx))
    assert has_short == is_simplex(cx)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(CORPUS_RANK2), st.data())
def test_reconstruct_from_rotated_reversed_shadow(name, data):
    cx = corpus_complex(name)
    zs = enumerate_zigzags(cx)
    z = zs[data.draw(st.integers(0, len(zs) - 1))]
    k = data.draw(st.integers(0, cx.rank - 1))
    faces = list(shadow(z, k).faces)
    r = data.draw(st.integers(0, len(faces) - 1))
    faces = faces[r:] + faces[:r]
    if data.draw(st.booleans()):
        faces.reverse()
    assert reconstruct_from_shadow(cx, k, faces) == z


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(CORPUS_RANK2), st.data())
def test_zigzag_from_any_flag_of_orbit(name, data):
    cx = corpus_complex(name)
    facet = data.draw(st.sampled_from(cx.facets))
    f = tuple(data.draw(st.permutations(facet)))
    z = zigzag_from_flag(cx, f)
    assert f in z.flags or f in z.reversed_flags()
    assert z in enumerate_zigzags(cx)
    assert zigzag_from_flag(cx, reverse_flag(f)) == z
