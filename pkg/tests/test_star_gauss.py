from __future__ import annotations

import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphtc.errors import EmbeddingError
from graphtc.star_gauss import (
    CENTER,
    EPS,
    PRESERVING,
    REVERSING,
    STANDARD,
    HexLoop,
    StarEmbedding,
    StarPoint,
    difference_polygon,
    eps_eval,
    eps_motion,
    exact_gauss_winding,
    gauss_winding,
    is_standard,
    orientation_class,
    random_star_embedding,
    standard_family,
    star_degree_suite,
)


def sampled_winding(emb: StarEmbedding, steps: int = 6000) -> int:
    """Independent float oracle: sample the loop densely in time and sum small angle steps."""
    total = 0.0
    prev = None
    for i in range(steps + 1):
        p1, p2 = eps_eval(F(i, steps))
        a, b = emb.locate(p1), emb.locate(p2)
        angle = math.atan2(float(b[1] - a[1]), float(b[0] - a[0]))
        if prev is not None:
            d = angle - prev
            d = (d + math.pi) % (2 * math.pi) - math.pi
            total += d
        prev = angle
    return round(total / (2 * math.pi))


# -- the loop ------------------------------------------------------------------


def test_eps_visits_the_expected_configurations():
    p1, p2 = eps_eval(0)
    assert p1 == CENTER and p2 == StarPoint(2, F(1))
    p1, p2 = eps_eval(F(1, 6))
    assert p1 == StarPoint(1, F(1)) and p2 == CENTER
    assert eps_eval(1) == eps_eval(0)
    assert eps_eval(F(1, 12)) == (StarPoint(1, F(1, 2)), StarPoint(2, F(1, 2)))


@given(st.fractions(0, 1))
def test_particles_never_collide(t):
    p1, p2 = eps_eval(t)
    assert p1 != p2
    assert p1.edge != p2.edge


def test_eps_eval_range():
    with pytest.raises(ValueError):
        eps_eval(F(3, 2))


def test_hex_loop_validation():
    with pytest.raises(ValueError, match="six"):
        HexLoop(EPS.segments[:5])
    with pytest.raises(ValueError, match="closed"):
        HexLoop((EPS.segments[1],) + EPS.segments[1:])
    with pytest.raises(ValueError, match="share"):
        HexLoop(((1, -1), (-1, 1)) * 3)


def test_star_point_coordinates():
    assert StarPoint.make(2, F(1, 3)).coordinates() == (0, F(1, 3), 0)
    assert StarPoint.make(1, 0) == CENTER


# -- Gauss degree ------------------------------------------------------------------


@pytest.mark.parametrize("i", range(3))
def test_standard_stars_have_degree_one(i):
    emb = standard_family()[i]
    assert is_standard(emb)
    assert gauss_winding(emb) == 1
    assert exact_gauss_winding(emb) == 1
    assert sampled_winding(emb) == 1


def test_mirror_reverses_degree():
    m = STANDARD.mirror()
    assert orientation_class(m) == REVERSING
    assert not is_standard(m)
    assert gauss_winding(m) == -1 == exact_gauss_winding(m)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.booleans())
def test_random_bent_stars(seed, preserving):
    emb = random_star_embedding(random.Random(seed), preserving=preserving)
    assert emb.is_valid()
    expected = 1 if preserving else -1
    assert orientation_class(emb) == (PRESERVING if preserving else REVERSING)
    assert gauss_winding(emb) == expected
    assert exact_gauss_winding(emb) == expected


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_dense_sampling_oracle_on_random_stars(seed):
    emb = random_star_embedding(random.Random(seed), max_bends=2)
    assert sampled_winding(emb) == gauss_winding(emb)


@pytest.mark.parametrize("rot", [(F(1), F(0)), (F(0), F(1)), (F(3, 5), F(-4, 5)), (F(-5, 13), F(12, 13))])
@pytest.mark.parametrize("scale", [F(1, 3), 1, 7])
def test_similarities_preserve_degree(rot, scale):
    emb = STANDARD.transform(rotation=rot, scale=scale, shift=(F(-2), F(5, 7)))
    assert gauss_winding(emb) == 1


def test_transform_needs_unit_rotation():
    with pytest.raises(ValueError):
        STANDARD.transform(rotation=(F(1), F(1)))


def test_subdividing_arms_keeps_the_curve():
    emb = STANDARD.subdivide_arms(2)
    assert all(len(a) == 5 for a in emb.arms)
    assert not emb.straight
    assert gauss_winding(emb) == 1
    # finer polyline, same image: locate agrees at every parameter
    for t in (F(1, 7), F(1, 2), F(5, 6)):
        for e in (1, 2, 3):
            assert emb.locate(StarPoint(e, t)) == STANDARD.locate(StarPoint(e, t))


def test_difference_polygon_of_standard_star():
    poly = difference_polygon(STANDARD)
    assert len(poly) == 6
    assert (0, 0) not in poly


def test_colliding_arms_raise():
    emb = StarEmbedding.from_directions((0, 0), [(1, 0), (2, 0), (0, 1)])
    with pytest.raises(EmbeddingError):
        orientation_class(emb)
    with pytest.raises(EmbeddingError):
        gauss_winding(emb)


def test_standardness_needs_independent_straight_arms():
    assert not is_standard(StarEmbedding.from_directions((0, 0), [(1, 0), (0, 1), (-1, 0)]))
    with pytest.raises(EmbeddingError):
        is_standard(STANDARD.subdivide_arms())


def test_degree_suite():
    rep = star_degree_suite(random.Random(0), randomized=4)
    assert rep.ok and len(rep.rows) == 7


# -- discrete loop ------------------------------------------------------------------


def test_eps_motion_legs():
    arms = [["c", "a1", "l1"], ["c", "a2", "l2"], ["c", "a3", "l3"]]
    start, legs = eps_motion(arms)
    assert start == ["c", "l2"]
    assert len(legs) == 12
    assert legs[0] == (0, ["c", "a1", "l1"])
    assert legs[1] == (1, ["l2", "a2", "c"])
    with pytest.raises(ValueError):
        eps_motion(arms[:2])
