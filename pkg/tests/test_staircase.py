from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limshape.staircase import (
    MonomialStaircase,
    gamma_count_for,
    lattice_volume_error_bound,
    minimalize,
    monomials_in_ideal_count,
    simplex_count,
)

# staircase of the two-generic-lines example in dehomogenized coordinates
QUAD = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1)]


def test_minimalize():
    assert minimalize([(1, 0), (2, 0), (1, 1), (0, 3)]) == ((0, 3), (1, 0))
    assert minimalize([(0, 0), (1, 0)]) == ((0, 0),)
    assert minimalize([]) == ()


def test_simplex_count():
    assert simplex_count(3, 2) == 10
    assert simplex_count(0, 3) == 1
    assert simplex_count(-1, 3) == 0


def test_membership():
    st_ = MonomialStaircase.from_generators(3, QUAD)
    assert st_.membership((2, 0, 0))
    assert st_.membership((2, 5, 1))
    assert not st_.membership((1, 0, 0))
    assert not st_.membership((0, 1, 7))
    assert not st_.membership((0, 0, 0))
    with pytest.raises(ValueError):
        st_.membership((1, 0))


def test_empty_staircase():
    empty = MonomialStaircase.from_generators(2, [])
    assert empty.is_empty()
    assert empty.count_gamma(3) == 10  # all of the bound-3 simplex
    assert empty.gamma_volume(3) == Fraction(9, 2)


def test_count_gamma_known_values():
    # cross of the two axes: only the origin lies outside
    axes = MonomialStaircase.from_generators(2, [(1, 0), (0, 1)])
    assert axes.count_gamma(5) == 1
    # the quadruple staircase: 10 points survive up to coordinate sum 4
    st_ = MonomialStaircase.from_generators(3, QUAD)
    assert st_.count_gamma(4) == 10
    assert st_.count_gamma(4) == st_.count_gamma_bruteforce(4)


def test_hilbert_function_known_values():
    st_ = MonomialStaircase.from_generators(3, QUAD)
    # homogenized ideal of two generic lines: HF(5) = 2*5 + 2 = 12
    assert st_.hilbert_function(5) == 12
    assert st_.hilbert_function(1) == 4
    zero = MonomialStaircase.from_generators(2, [])
    assert zero.hilbert_function(2) == 6  # all degree-2 monomials in 3 vars


def test_hilbert_function_equals_cumulative_gamma():
    st_ = MonomialStaircase.from_generators(3, QUAD)
    for d in range(8):
        assert st_.hilbert_function(d) == st_.count_gamma(d)


gen_strategy = st.integers(2, 3).flatmap(
    lambda n: st.lists(
        st.tuples(*[st.integers(0, 5)] * n), min_size=0, max_size=6
    ).map(lambda gens: MonomialStaircase.from_generators(n, gens))
)


@given(gen_strategy, st.integers(0, 9))
@settings(max_examples=80, deadline=None)
def test_count_gamma_matches_bruteforce(staircase, bound):
    assert staircase.count_gamma(bound) == staircase.count_gamma_bruteforce(bound)


@given(gen_strategy, st.integers(0, 7))
@settings(max_examples=40, deadline=None)
def test_count_inside_matches_degree_slices(staircase, bound):
    by_slices = sum(
        monomials_in_ideal_count(staircase.min_gens, d, staircase.nvars)
        for d in range(bound + 1)
    )
    assert staircase.count_inside(bound) == by_slices


def test_gamma_volume_single_corner():
    # complement of (1,1)+orthant inside {x,y >= 0, x+y <= 3}
    st_ = MonomialStaircase.from_generators(2, [(1, 1)])
    assert st_.gamma_volume(3) == Fraction(9, 2) - Fraction(1, 2)
    assert st_.lm_volume(3) == Fraction(1, 2)


def test_gamma_volume_inclusion_exclusion():
    st_ = MonomialStaircase.from_generators(2, [(2, 0), (0, 2)])
    # excluded region: two shifted simplices overlapping in the (2,2) corner
    t = Fraction(6)
    expected = t**2 / 2 - (2 * Fraction((6 - 2) ** 2, 2) - Fraction((6 - 4) ** 2, 2))
    assert st_.gamma_volume(t) == expected


def test_gamma_volume_rational_cutoff():
    st_ = MonomialStaircase.from_generators(2, [(1, 0)])
    t = Fraction(5, 2)
    # complement is the triangle {x1 < 1 strip}: t^2/2 - (t-1)^2/2
    assert st_.gamma_volume(t) == t**2 / 2 - (t - 1) ** 2 / 2


def test_volume_count_consistency_at_scale():
    # lattice count at bound m*t divided by m^n approaches the gamma volume;
    # check the stated error bound at several m
    st_ = MonomialStaircase.from_generators(3, QUAD)
    t = 3
    for m in (1, 2, 4, 8):
        scaled = MonomialStaircase.from_generators(
            3, [tuple(m * e for e in g) for g in st_.min_gens]
        )
        count = scaled.count_gamma(m * t)
        vol = scaled.gamma_volume(m * t)
        assert abs(count - vol) <= lattice_volume_error_bound(3, m, t)


def test_contains_scaled_and_minkowski():
    s1 = MonomialStaircase.from_generators(2, [(1, 0), (0, 1)])
    s2 = MonomialStaircase.from_generators(2, [(2, 0), (1, 1), (0, 2)])
    ok, witness = s2.contains_scaled(s1, 2)
    assert ok and witness is None
    ok, witness = s2.contains_minkowski(s1, s1)
    assert ok
    ok, witness = s1.contains_scaled(s2, 1)  # s2 not inside s1? it is: (2,0) in s1
    assert ok
    ok, witness = s2.contains_scaled(s1, 1)
    assert not ok and witness in s1.min_gens


def test_gamma_count_for_floor():
    st_ = MonomialStaircase.from_generators(2, [(1, 0), (0, 1)])
    assert gamma_count_for(st_, 3, Fraction(5, 3)) == 1  # floor(5) bound, origin only
    empty = MonomialStaircase.from_generators(2, [])
    assert gamma_count_for(empty, 2, Fraction(3, 2)) == simplex_count(3, 2)


def test_json_round_trip():
    st_ = MonomialStaircase.from_generators(3, QUAD)
    again = MonomialStaircase.from_json(st_.to_json())
    assert again == st_


def test_generators_are_minimalized_and_sorted():
    # (1,0) divides both (2,1) and (3,3), so it is the only minimal generator
    st_ = MonomialStaircase.from_generators(2, [(2, 1), (1, 0), (3, 3)])
    assert st_.min_gens == ((1, 0),)
    st2 = MonomialStaircase.from_generators(2, [(0, 2), (3, 0), (1, 1)])
    assert st2.min_gens == ((0, 2), (1, 1), (3, 0))
