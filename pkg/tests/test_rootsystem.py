import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from feasichar.rootsystem import (
    build_root_system,
    dominant_representative,
    dominates,
    is_dominant,
    reflect,
    weyl_orbit,
)

EXCEPTIONAL = ["F4", "E6", "E7", "E8"]


@pytest.mark.parametrize(
    "label, positive, order",
    [("F4", 24, 1152), ("E6", 36, 51840), ("E7", 63, 2903040), ("E8", 120, 696729600),
     ("G2", 6, 12), ("D4", 12, 192), ("A3", 6, 24), ("B3", 9, 48), ("C3", 9, 48)],
)
def test_root_counts_and_weyl_orders(label, positive, order):
    rs = build_root_system(label)
    assert len(rs.positive_roots) == positive
    assert rs.weyl_group_order == order


def test_bourbaki_marks_and_long_roots():
    assert build_root_system("F4").highest_root_marks == (2, 3, 4, 2)
    lengths = build_root_system("F4").root_lengths
    assert lengths[0] == lengths[1] > lengths[2] == lengths[3]
    assert build_root_system("E6").highest_root_marks == (1, 2, 2, 3, 2, 1)
    assert build_root_system("E7").highest_root_marks == (2, 2, 3, 4, 3, 2, 1)
    assert build_root_system("E8").highest_root_marks == (2, 3, 4, 6, 5, 4, 3, 2)


@pytest.mark.parametrize("label, det", [("F4", 1), ("E6", 3), ("E7", 2), ("E8", 1), ("A3", 4)])
def test_determinants(label, det):
    assert build_root_system(label).determinant == det


def test_label_spellings_agree():
    assert build_root_system("A_3") == build_root_system("A3")


def test_unknown_labels_rejected():
    with pytest.raises((KeyError, ValueError)):
        build_root_system("H3")


def test_reflection_examples():
    a2 = build_root_system("A2")
    assert reflect(a2, 1, (1, 0)) == (-1, 1)
    with pytest.raises(IndexError):
        reflect(a2, 3, (1, 0))


def test_minuscule_orbit_sizes():
    assert len(weyl_orbit(build_root_system("E6"), (1, 0, 0, 0, 0, 0))) == 27
    assert len(weyl_orbit(build_root_system("E7"), (0, 0, 0, 0, 0, 0, 1))) == 56


def test_highest_root_orbit_is_the_long_roots():
    for label, long_roots in [("F4", 24), ("E6", 72), ("E7", 126), ("E8", 240)]:
        rs = build_root_system(label)
        orbit = weyl_orbit(rs, rs.highest_root)
        assert len(orbit) == long_roots
        assert orbit <= set(rs.roots_as_weights)


def weights(rank):
    return st.tuples(*[st.integers(-6, 6)] * rank)


@pytest.mark.parametrize("label", EXCEPTIONAL)
@given(data=st.data())
def test_reflection_is_involution(label, data):
    rs = build_root_system(label)
    w = data.draw(weights(rs.rank))
    i = data.draw(st.integers(1, rs.rank))
    assert reflect(rs, i, reflect(rs, i, w)) == w


@pytest.mark.parametrize("label", EXCEPTIONAL)
@given(data=st.data())
def test_reflection_preserves_norm_and_dominant_class(label, data):
    rs = build_root_system(label)
    w = data.draw(weights(rs.rank))
    i = data.draw(st.integers(1, rs.rank))
    v = reflect(rs, i, w)
    assert rs.inner(v, v) == rs.inner(w, w)
    assert dominant_representative(rs, v) == dominant_representative(rs, w)
    assert is_dominant(dominant_representative(rs, w))


def test_thousand_random_weights_orbit_invariance():
    rng = random.Random(0)
    for _ in range(1000):
        label = rng.choice(EXCEPTIONAL)
        rs = build_root_system(label)
        w = tuple(rng.randint(-4, 4) for _ in range(rs.rank))
        i = rng.randint(1, rs.rank)
        assert reflect(rs, i, reflect(rs, i, w)) == w
        assert dominant_representative(rs, reflect(rs, i, w)) == dominant_representative(rs, w)


def test_dominance_order():
    rs = build_root_system("F4")
    assert dominates(rs, rs.highest_root, (0, 0, 0, 1))
    assert not dominates(rs, (0, 0, 0, 1), rs.highest_root)
