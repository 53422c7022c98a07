from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ramanujan_verify.errors import DegenerateInput
from ramanujan_verify.partialfrac import (RationalPoint, SkeletonFamily, check_bilateral_pf, check_general_skeleton,
                                          check_mixed_pf, check_reciprocal_pf, check_simple_pf, check_symmetric_pf,
                                          random_point, random_residue_map, sweep)

F = Fraction


@pytest.mark.parametrize("check, point", [
    (check_simple_pf, RationalPoint((2, 3), (), 1)),
    (check_simple_pf, RationalPoint((5,), (), 2)),
    (check_reciprocal_pf, RationalPoint((F(1, 2), F(1, 3)), (), 1)),
    (check_reciprocal_pf, RationalPoint((7,), (), 0)),
    (check_symmetric_pf, RationalPoint((2,), (3,))),
    (check_symmetric_pf, RationalPoint((2, 5), (3,))),
    (check_bilateral_pf, RationalPoint((2,), (3,), 5)),
    (check_bilateral_pf, RationalPoint((2, 7), (3, 4), 5)),
    (check_mixed_pf, RationalPoint((2, 7), (3, 4), 5)),
])
def test_hand_checked_instances_are_exactly_zero(check, point):
    residual = check(point)
    assert isinstance(residual, Fraction) and residual == 0


def test_simple_hand_value():
    # both sides are 1/2 at xs = [2, 3], t = 1
    assert 1 / ((F(2) - 1) * (F(3) - 1)) == F(1, 2)
    assert check_simple_pf(RationalPoint((2, 3), (), 1)) == 0


@pytest.mark.parametrize("check, point", [
    (check_simple_pf, RationalPoint((2, 2), (), 1)),
    (check_simple_pf, RationalPoint((2, 3), (), 3)),
    (check_reciprocal_pf, RationalPoint((F(1, 2), 3), (), 2)),
    (check_reciprocal_pf, RationalPoint((0, 3), (), 2)),
    (check_symmetric_pf, RationalPoint((2,), (F(1, 2),))),
    (check_bilateral_pf, RationalPoint((2,), (3,), 0)),
    (check_bilateral_pf, RationalPoint((2,), (F(1, 5),), 5)),
])
def test_degenerate_inputs_raise_before_dividing(check, point):
    with pytest.raises(DegenerateInput):
        check(point)


def test_exact_inputs_only():
    with pytest.raises(TypeError):
        RationalPoint((0.5, 2), (), 1)


def _random_simple(rng):
    return check_simple_pf(random_point(rng, rng.randint(2, 6)))


def _random_bilateral(rng):
    return check_bilateral_pf(random_point(rng, rng.randint(1, 4), rng.randint(1, 4)))


@pytest.mark.parametrize("check", [_random_simple, _random_bilateral])
def test_random_sweeps_are_exactly_zero(check):
    outcome = sweep(check, 200, seed=7)
    assert outcome.ok and outcome.checked == 200


def test_bilateral_without_y_is_simple_schema():
    rng = random.Random(3)
    for _ in range(50):
        p = random_point(rng, rng.randint(1, 5))
        try:
            assert check_bilateral_pf(p) == check_simple_pf(p) == 0
        except DegenerateInput:
            continue


def test_reciprocal_is_simple_after_inversion():
    # 1/prod(1 - x_i t) with x_i -> 1/x_i is prod(x_i) / prod(x_i - t)
    xs = (F(2), F(5), F(-3, 7))
    t = F(1, 4)
    lhs = 1
    for x in xs:
        lhs *= 1 / (1 - t / x)
    simple_lhs = 1
    for x in xs:
        simple_lhs *= x / (x - t)
    assert lhs == simple_lhs
    assert check_reciprocal_pf(RationalPoint(tuple(1 / x for x in xs), (), t)) == 0


def test_skeleton_example():
    one = lambda n: F(1)
    square = lambda n: F(n * n)
    residual = check_general_skeleton([one, one], [square, square], RationalPoint((1, 2), (), 3),
                                      shifts=[0, F(1, 2)], indices=[1, 2])
    assert residual == 0


def test_skeleton_single_member_is_tautology():
    residual = check_general_skeleton([lambda n: F(n)], [lambda n: F(n * n)], RationalPoint((3,), (), 1),
                                      shifts=[F(1, 3)], indices=[4])
    assert residual == 0


def test_bilateral_skeleton_random():
    rng = random.Random(11)
    checked = 0
    for _ in range(200):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        point = random_point(rng, m, n, bound=20)
        g = SkeletonFamily(tuple(random_residue_map(rng, 20) for _ in range(n)),
                           tuple(random_residue_map(rng, 20) for _ in range(n)),
                           tuple(F(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(n)),
                           tuple(rng.randint(1, 9) for _ in range(n)))
        try:
            r = check_general_skeleton([random_residue_map(rng, 20) for _ in range(m)],
                                       [random_residue_map(rng, 20) for _ in range(m)], point,
                                       shifts=[F(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(m)],
                                       indices=[rng.randint(1, 9) for _ in range(m)], bilateral=True, g_family=g)
        except DegenerateInput:
            continue
        assert r == 0
        checked += 1
    assert checked > 100
