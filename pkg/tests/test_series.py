"""Framed and unframed point-count series: frozen closed forms, the
independent solve/guess routes, and the identities that stress them."""

import pytest

from cuspquot.qalgebra import (
    ONE,
    LaurentPolyQ,
    RationalQ,
    TPoly,
    TSeries,
    gl_order,
    t_pochhammer,
)
from cuspquot.series import (
    affine_cohen_lenstra_coefficient,
    cohen_lenstra_coefficient,
    color_numerators,
    cyclotomic_divisibility_check,
    functional_equation_check,
    hilb_from_quot,
    hilb_numerator,
    hilb_series,
    matrix_count_formula,
    nh,
    nh_guess,
    nq,
    orbit_contribution,
    quot_numerator,
    quot_series,
    root_of_unity_check,
    solve_nh,
    zhat_coefficient,
)
from cuspquot.strata import stable_orbit_decomposition


def poly(terms):
    return LaurentPolyQ(terms)


FROZEN_NH = {
    0: TPoly.one(),
    1: TPoly([ONE, poly({1: 1})]),
    2: TPoly([ONE, poly({2: 1, 3: 1}), poly({4: 1})]),
    3: TPoly(
        [ONE, poly({3: 1, 4: 1, 5: 1}), poly({6: 1, 7: 1, 8: 1}), poly({9: 1})]
    ),
    4: TPoly(
        [
            ONE,
            poly({4: 1, 5: 1, 6: 1, 7: 1}),
            poly({8: 1, 9: 1, 10: 2, 11: 1, 12: 1}),
            poly({12: 1, 13: 1, 14: 1, 15: 1}),
            poly({16: 1}),
        ]
    ),
}


# ---------------------------------------------------------------------------
# Frozen closed forms (token for token)


def test_framed_numerators_frozen():
    for d in range(4):
        assert hilb_numerator(d) == FROZEN_NH[d]
        assert nh(d) == FROZEN_NH[d]


def test_framed_series_tokens():
    for d in range(4):
        series = hilb_series(d)
        assert series.num == FROZEN_NH[d]
        assert series.den == t_pochhammer(d)


def test_unframed_is_framed_at_t_squared():
    for d in range(4):
        assert quot_numerator(d) == FROZEN_NH[d].substitute_t_square()
        assert nq(d) == quot_numerator(d)
        series = quot_series(d)
        assert series.num == FROZEN_NH[d].substitute_t_square()
        assert series.den == t_pochhammer(d)


def test_rank_caps():
    with pytest.raises(ValueError):
        hilb_numerator(-1)
    with pytest.raises(ValueError):
        hilb_numerator(4)  # symbolic stratum counts stop at rank 3
    with pytest.raises(ValueError):
        hilb_numerator(5, prime=2)


def test_rank_four_at_primes_frozen():
    assert hilb_numerator(4, prime=2) == TPoly([1, 240, 8960, 61440, 65536])
    assert hilb_numerator(4, prime=3) == TPoly(
        [1, 3240, 852930, 21257640, 43046721]
    )
    # and they agree with the triangular solve evaluated at the prime
    for p in (2, 3):
        collapsed = TPoly(
            [int(c.evaluate(p)) for c in solve_nh(4).coeffs]
        )
        assert hilb_numerator(4, prime=p) == collapsed
        assert quot_numerator(4, prime=p) == collapsed.substitute_t_square()


def test_at_prime_matches_symbolic_for_low_rank():
    for d in range(4):
        for p in (2, 3):
            collapsed = TPoly([int(c.evaluate(p)) for c in FROZEN_NH[d].coeffs])
            assert hilb_numerator(d, prime=p) == collapsed


# ---------------------------------------------------------------------------
# Orbit assembly details


def test_rank_one_orbit_contributions():
    orbits = {str(o.base): o for o in stable_orbit_decomposition(1)}
    geom = TPoly([ONE, -ONE])
    k_part = orbit_contribution(orbits["(K(0))"])
    assert k_part == TSeries(TPoly.one(), geom)
    j_part = orbit_contribution(orbits["(J(1))"])
    assert j_part == TSeries(TPoly.t_power(1, poly({1: 1})), geom)


def test_color_split_rank_two():
    rows = color_numerators(2)
    assert set(rows) == {("J", "J"), ("J", "K"), ("K", "J"), ("K", "K")}
    assert rows[("J", "J")] == TPoly(
        [0, 0, poly({4: 1}), poly({4: 1, 5: -1})]
    )
    total = TPoly.zero()
    for row in rows.values():
        total = total + row
    assert total == FROZEN_NH[2]


FROZEN_COLOR_ROWS_3 = {
    ("J", "J", "J"): {
        3: {9: 1},
        4: {9: 2, 10: -1, 11: -1},
        5: {9: 1, 10: -1, 11: -1, 12: 1},
        6: {10: 1, 11: -2, 12: 1},
    },
    ("J", "J", "K"): {
        2: {6: 1},
        3: {6: 2, 7: -1, 8: -1},
        4: {6: 1, 7: -1, 8: -1, 9: 1},
        5: {7: 1, 8: -2, 9: 1},
    },
    ("J", "K", "J"): {
        2: {7: 1},
        3: {7: 1, 9: -1},
        4: {7: 1, 8: -1, 9: -1, 10: 1},
    },
    ("J", "K", "K"): {
        1: {3: 1},
        2: {3: 1, 5: -1},
        3: {3: 1, 4: -1, 5: -1, 7: 1},
        4: {9: -1, 10: 1},
        5: {7: -1, 8: 2, 9: -1},
        6: {10: -1, 11: 2, 12: -1},
    },
    ("K", "J", "J"): {
        2: {8: 1},
        3: {9: 1, 10: -1},
    },
    ("K", "J", "K"): {
        1: {4: 1},
        2: {5: 1, 6: -1},
        3: {6: -1, 8: 1},
        4: {7: -1, 8: 2, 9: -2, 11: 1},
        5: {11: 1, 12: -1},
        6: {10: -1, 11: 2, 12: -1},
        7: {12: 1, 13: -1},
    },
    ("K", "K", "J"): {
        1: {5: 1},
        5: {9: -1, 10: 1},
        7: {12: -1, 13: 1},
    },
    ("K", "K", "K"): {
        0: {0: 1},
        2: {3: -1, 6: 1},
        3: {3: -1, 4: 1, 5: 1, 6: -1, 7: -1, 10: 1},
        4: {6: -1, 7: 1, 9: 1, 10: -1},
        6: {10: 1, 11: -2, 12: 1},
    },
}


def _row_poly(spec):
    top = max(spec)
    return TPoly(
        [poly(spec.get(m, {})) for m in range(top + 1)]
    )


def test_color_split_rank_three_frozen_rows():
    rows = color_numerators(3)
    assert set(rows) == set(FROZEN_COLOR_ROWS_3)
    for colors, spec in FROZEN_COLOR_ROWS_3.items():
        assert rows[colors] == _row_poly(spec), colors
    total = TPoly.zero()
    for row in rows.values():
        total = total + row
    assert total == FROZEN_NH[3]


# ---------------------------------------------------------------------------
# Framed/unframed transform


def test_framed_from_unframed_roundtrip():
    for d in range(4):
        assert hilb_from_quot(d) == hilb_series(d)


# ---------------------------------------------------------------------------
# Whole-zeta coefficients


def test_zhat_low_coefficients():
    assert zhat_coefficient(0) == 1
    assert zhat_coefficient(1) == RationalQ(ONE, poly({1: 1, 0: -1}))


def test_zhat_matches_product_form_guess():
    for n in range(4):
        assert zhat_coefficient(n) == cohen_lenstra_coefficient(n)


def test_zhat_times_group_order_at_primes_frozen():
    frozen = {
        (1, 2): 1,
        (2, 2): 10,
        (3, 2): 232,
        (1, 3): 1,
        (2, 3): 33,
        (3, 3): 3537,
    }
    for (n, p), count in frozen.items():
        value = (zhat_coefficient(n) * gl_order(n)).evaluate(p)
        assert value == count


# ---------------------------------------------------------------------------
# Independent routes: triangular solve and product-form guess


def test_solve_matches_engine_low_rank():
    for d in range(4):
        assert solve_nh(d) == FROZEN_NH[d]


def test_solve_matches_guess_through_rank_eight():
    for d in range(9):
        assert solve_nh(d) == nh_guess(d)
    with pytest.raises(ValueError):
        solve_nh(-1)


def test_guess_top_and_bottom_coefficients():
    for d in range(1, 9):
        f = nh_guess(d)
        assert f.degree() == d
        assert f.coeff(0) == ONE
        assert f.coeff(d) == poly({d * d: 1})


# ---------------------------------------------------------------------------
# Identities of the numerators


def test_functional_equation_through_rank_twelve():
    for d in range(13):
        assert functional_equation_check(d)
    assert not functional_equation_check(2, TPoly.one())


def test_root_of_unity_collapse():
    for d in range(1, 9):
        for r in range(1, d + 1):
            if d % r == 0:
                assert root_of_unity_check(d, r)
    with pytest.raises(ValueError):
        root_of_unity_check(4, 3)
    with pytest.raises(ValueError):
        root_of_unity_check(4, 0)


def test_cyclotomic_divisibility_through_rank_eight():
    for d in range(1, 9):
        assert cyclotomic_divisibility_check(d)


def test_cyclotomic_divisibility_detects_failure():
    # A polynomial missing the forced factors must be rejected.
    assert not cyclotomic_divisibility_check(2, TPoly([ONE, ONE, ONE]))


# ---------------------------------------------------------------------------
# Matrix pair count formula and the double-sum identity


def test_matrix_count_formula_frozen():
    assert matrix_count_formula(0) == ONE
    assert matrix_count_formula(1) == poly({1: 1})
    assert matrix_count_formula(2) == poly({4: 1, 3: 1, 1: -1})
    with pytest.raises(ValueError):
        matrix_count_formula(-1)


def test_affine_guess_times_group_order_is_matrix_count():
    for n in range(11):
        assert (
            affine_cohen_lenstra_coefficient(n) * gl_order(n)
            == matrix_count_formula(n)
        )


def test_affine_guess_is_partial_sum_of_point_guess():
    for n in range(6):
        total = RationalQ.from_int(0)
        for j in range(n + 1):
            total = total + cohen_lenstra_coefficient(j)
        assert affine_cohen_lenstra_coefficient(n) == total
    with pytest.raises(ValueError):
        affine_cohen_lenstra_coefficient(-1)
    with pytest.raises(ValueError):
        cohen_lenstra_coefficient(-1)
