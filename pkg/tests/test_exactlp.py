"""Exact linear feasibility: Fourier-Motzkin and simplex must agree."""

import random
from fractions import Fraction

from siegeltoric.exactlp import cone_membership, feasible_eq_nonneg


def test_trivial_feasible():
    # x0 + x1 = 1, x >= 0
    assert feasible_eq_nonneg([[1, 1]], [1], 2)


def test_trivial_infeasible():
    # x0 + x1 = -1, x >= 0
    assert not feasible_eq_nonneg([[1, 1]], [-1], 2)


def test_inconsistent_equalities():
    assert not feasible_eq_nonneg([[1, 1], [1, 1]], [1, 2], 2)


def test_zero_rhs_always_feasible():
    assert feasible_eq_nonneg([[1, -1], [2, -2]], [0, 0], 2)


def test_forced_negative_variable():
    # x0 - x1 = 1 and x0 = 0 forces x1 = -1
    assert not feasible_eq_nonneg([[1, -1], [1, 0]], [1, 0], 2)


def test_methods_agree_on_random_systems():
    rng = random.Random(2718)
    agree = 0
    for _ in range(200):
        m = rng.randint(1, 4)
        n = rng.randint(1, 5)
        rows = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(m)]
        rhs = [Fraction(rng.randint(-4, 4)) for _ in range(m)]
        via_fm = feasible_eq_nonneg(rows, rhs, n, method="fm")
        via_simplex = feasible_eq_nonneg(rows, rhs, n, method="simplex")
        assert via_fm == via_simplex, (rows, rhs)
        agree += 1
    assert agree == 200


def test_methods_agree_with_rational_data():
    rng = random.Random(3141)
    for _ in range(60):
        m = rng.randint(1, 3)
        n = rng.randint(1, 4)
        rows = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
                for _ in range(m)]
        rhs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(m)]
        assert (feasible_eq_nonneg(rows, rhs, n, method="fm")
                == feasible_eq_nonneg(rows, rhs, n, method="simplex"))


def test_cone_membership_basic():
    gens = [[1, 0], [1, 1]]
    assert cone_membership([2, 1], gens)       # 1*(1,0) + 1*(1,1)
    assert not cone_membership([-1, 0], gens)
    assert not cone_membership([0, 1], gens)   # would need negative weight


def test_cone_membership_interior_witness():
    gens = [[1, 0, 0], [0, 0, 1], [1, -1, 1]]
    point = [2, -1, 2]  # sum of all three generators
    assert cone_membership(point, gens)
