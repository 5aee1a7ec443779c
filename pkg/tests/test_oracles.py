"""Exhaustive finite-field oracles: echelon enumeration, framed submodule
counts, commuting-pair counts, and stratum point counts, each compared with
the closed-form engine it exists to audit."""

import itertools
import random
from fractions import Fraction

import pytest

from cuspquot.groebner import Monomial
from cuspquot.oracles import (
    BudgetError,
    count_all_pairs,
    count_nilpotent_pairs,
    count_quot_bruteforce,
    count_stratum_bruteforce,
    echelon_subspaces,
    first_corner_slots,
    stratum_slots,
)
from cuspquot.qalgebra import gl_order, q_binomial
from cuspquot.series import hilb_series, matrix_count_formula, zhat_coefficient
from cuspquot.strata import parse_datum
from cuspquot.varieties import count_v_alpha


def M(t_deg, seat):
    return Monomial(t_deg=t_deg, seat=seat)


WORKED = parse_datum("(K(0),K(2),J(2))")

# Values below were computed once by the enumeration routines in this file
# and frozen; the tests assert the routines still reproduce them and that
# the closed-form engine agrees.

FROZEN_QUOT = {
    (1, 0, 2): 1,
    (1, 1, 2): 3,
    (1, 2, 2): 3,
    (1, 3, 2): 3,
    (1, 4, 2): 3,
    (2, 0, 2): 1,
    (2, 1, 2): 15,
    (2, 2, 2): 59,
    (1, 0, 3): 1,
    (1, 1, 3): 4,
    (1, 2, 3): 4,
    (1, 3, 3): 4,
}

FROZEN_NILPOTENT_PAIRS = {
    (1, 2): 1,
    (2, 2): 10,
    (3, 2): 232,
    (1, 3): 1,
    (2, 3): 33,
    (3, 3): 3537,
}

FROZEN_ALL_PAIRS = {
    (1, 2): 2,
    (2, 2): 22,
    (3, 2): 848,
    (1, 3): 3,
    (2, 3): 105,
    (3, 3): 28107,
}

FROZEN_STRATUM_COUNTS = [
    ("(J(2))", 2, 2),
    ("(K(4))", 3, 1),
    ("(J(1),J(2))", 2, 16),
    ("(K(0),K(2))", 3, 27),
    ("(K(0),K(2),J(2))", 2, 256),
    ("(K(0),K(2),J(2))", 3, 6561),
]

# Stable raising moves whose source and image strata both fit in the
# enumeration budget, with the primes at which each pair stays cheap.
SCALING_CASES = [
    ("(K(0))", 1, (2, 3)),
    ("(J(1))", 1, (2, 3)),
    ("(K(0),K(2))", 1, (2, 3)),
    ("(K(0),K(3))", 2, (2, 3)),
    ("(J(1),K(1))", 2, (2, 3)),
    ("(K(0),J(2))", 2, (2, 3)),
    ("(J(1),J(2))", 2, (2, 3)),
    ("(K(1),K(4))", 2, (2, 3)),
    ("(J(1),J(2),J(3))", 3, (2,)),
]


# ---------------------------------------------------------------------------
# echelon enumeration of subspaces


def test_echelon_subspace_counts_match_q_binomial():
    for p in (2, 3):
        for dim_total in range(6):
            for dim_sub in range(dim_total + 1):
                expected = q_binomial(dim_total, dim_sub).evaluate(p)
                got = sum(1 for _ in echelon_subspaces(dim_total, dim_sub, p))
                assert got == expected, (dim_total, dim_sub, p)


def test_echelon_rows_are_canonical_and_distinct():
    for dim_total, dim_sub, p in [(4, 2, 2), (5, 3, 2), (4, 2, 3)]:
        seen = set()
        for pivots, rows in echelon_subspaces(dim_total, dim_sub, p):
            assert len(pivots) == dim_sub
            assert list(pivots) == sorted(pivots)
            assert len(rows) == dim_sub
            for i, row in enumerate(rows):
                assert len(row) == dim_total
                assert all(0 <= entry < p for entry in row)
                assert row[pivots[i]] == 1
                # entries left of the pivot vanish, and every other row's
                # pivot column is cleared
                assert all(row[c] == 0 for c in range(pivots[i]))
                assert all(row[pivots[j]] == 0 for j in range(dim_sub) if j != i)
            key = tuple(rows)
            assert key not in seen
            seen.add(key)


def test_echelon_dimension_validation():
    with pytest.raises(ValueError):
        list(echelon_subspaces(3, -1, 2))
    with pytest.raises(ValueError):
        list(echelon_subspaces(3, 4, 2))


# ---------------------------------------------------------------------------
# framed submodule counts


def test_framed_submodule_counts_frozen():
    for (d, n, p), expected in FROZEN_QUOT.items():
        assert count_quot_bruteforce(d, n, p) == expected, (d, n, p)


def test_framed_submodule_counts_match_series():
    for (d, n, p), expected in FROZEN_QUOT.items():
        coeff = hilb_series(d, prime=p).expand(n)[n]
        assert coeff.evaluate(p) == Fraction(expected), (d, n, p)


def test_framed_submodule_validation():
    with pytest.raises(ValueError, match="need d >= 1"):
        count_quot_bruteforce(0, 1, 2)
    with pytest.raises(ValueError, match="need d >= 1"):
        count_quot_bruteforce(1, -1, 2)


def test_framed_submodule_budget():
    with pytest.raises(BudgetError, match="F_2 and F_3 only"):
        count_quot_bruteforce(1, 1, 5)
    with pytest.raises(BudgetError, match="exceeds the F_2 cap"):
        count_quot_bruteforce(2, 3, 2)
    with pytest.raises(BudgetError, match="exceeds the F_3 cap"):
        count_quot_bruteforce(2, 2, 3)


# ---------------------------------------------------------------------------
# commuting-pair counts


def test_pair_counts_frozen():
    for (n, p), expected in FROZEN_NILPOTENT_PAIRS.items():
        assert count_nilpotent_pairs(n, p) == expected, (n, p)
    for (n, p), expected in FROZEN_ALL_PAIRS.items():
        assert count_all_pairs(n, p) == expected, (n, p)
    assert count_nilpotent_pairs(0, 2) == 1
    assert count_all_pairs(0, 3) == 1


def test_nilpotent_pair_ratio_matches_punctual_coefficient():
    for (n, p), nil in FROZEN_NILPOTENT_PAIRS.items():
        ratio = Fraction(nil) / gl_order(n).evaluate(p)
        assert ratio == zhat_coefficient(n).evaluate(p), (n, p)


def test_all_pair_counts_match_matrix_count_formula():
    for (n, p), total in FROZEN_ALL_PAIRS.items():
        assert Fraction(total) == matrix_count_formula(n).evaluate(p), (n, p)


def test_pair_count_budget():
    with pytest.raises(BudgetError, match="pair enumeration budget"):
        count_nilpotent_pairs(4, 3)
    with pytest.raises(BudgetError, match="pair enumeration budget"):
        count_all_pairs(4, 2)
    with pytest.raises(BudgetError, match="pair enumeration budget"):
        count_all_pairs(1, 4)


# ---------------------------------------------------------------------------
# stratum point counts


def test_stratum_counts_frozen():
    for text, p, expected in FROZEN_STRATUM_COUNTS:
        assert count_stratum_bruteforce(parse_datum(text), p) == expected, (text, p)


def test_stratum_count_matches_contribution_formula():
    data = [
        "(J(2))",
        "(K(4))",
        "(K(0),K(2))",
        "(J(1),J(2))",
        "(J(1),K(1))",
        "(K(0),J(2))",
        "(K(0),K(2),J(2))",
    ]
    for text in data:
        datum = parse_datum(text)
        b, delta = datum.exponents()
        for p in (2, 3):
            expected = count_v_alpha(datum.restrict_to_K(), p) * p ** (b + delta)
            assert count_stratum_bruteforce(datum, p) == expected, (text, p)


def test_stratum_slots_worked_example():
    slots = stratum_slots(WORKED)
    assert slots == [
        (0, M(2, 2)),
        (0, M(2, 3)),
        (0, M(3, 2)),
        (0, M(4, 3)),
        (1, M(3, 2)),
        (1, M(4, 3)),
        (2, M(4, 3)),
        (3, M(4, 3)),
    ]
    firsts = first_corner_slots(WORKED)
    assert firsts == [
        (0, M(2, 2)),
        (0, M(2, 3)),
        (0, M(3, 2)),
        (0, M(4, 3)),
        (2, M(4, 3)),
        (3, M(4, 3)),
    ]
    assert set(firsts) <= set(slots)
    # the second exponent counts exactly the first-corner tail slots
    assert WORKED.exponents()[1] == len(firsts)
    standard = set(WORKED.standard_set())
    corners = WORKED.corners()
    for corner_index, tail in slots:
        assert tail in standard
        assert corners[corner_index] < tail


def test_pinned_counts_partition_the_stratum():
    subset = stratum_slots(WORKED)[:3]
    total = 0
    for values in itertools.product(range(2), repeat=len(subset)):
        total += count_stratum_bruteforce(WORKED, 2, pins=dict(zip(subset, values)))
    assert total == 256
    assert count_stratum_bruteforce(WORKED, 2, pins={}) == 256


def test_unknown_pins_rejected():
    with pytest.raises(ValueError, match="pinned slots not in the stratum"):
        count_stratum_bruteforce(WORKED, 2, pins={(99, M(5, 1)): 1})


def test_fibers_over_first_corner_pins_are_constant():
    # Sweep every assignment of the first-corner tail slots: all fibers of
    # the projection onto those coordinates have the same size, namely the
    # pure-K variety count times p^b.
    firsts = first_corner_slots(WORKED)
    fibers = {
        count_stratum_bruteforce(WORKED, 2, pins=dict(zip(firsts, values)))
        for values in itertools.product(range(2), repeat=len(firsts))
    }
    b, _ = WORKED.exponents()
    expected = count_v_alpha(WORKED.restrict_to_K(), 2) * 2**b
    assert fibers == {expected} == {4}


def test_fibers_are_constant_on_a_non_full_stratum():
    # Distance classes (2, 3+, 3+) give variety count 2*q^4 - q^3, so this
    # stratum is not an affine space; its fibers are still constant.
    datum = parse_datum("(K(0),K(2),K(5))")
    firsts = first_corner_slots(datum)
    rng = random.Random(20240817)
    assignments = [tuple(0 for _ in firsts)]
    assignments += [tuple(rng.randrange(2) for _ in firsts) for _ in range(7)]
    for values in assignments:
        pins = dict(zip(firsts, values))
        assert count_stratum_bruteforce(datum, 2, pins=pins) == 24
    assert count_v_alpha(datum, 2) == 24
    assert datum.exponents()[0] == 0


def test_stratum_budget():
    with pytest.raises(BudgetError, match="exceed the stratum budget"):
        count_stratum_bruteforce(parse_datum("(K(0),K(3),K(6))"), 2)
    with pytest.raises(BudgetError, match="exceed the stratum budget"):
        count_stratum_bruteforce(WORKED, 2, bit_budget=7)


def test_raising_scales_stratum_counts():
    for text, j, primes in SCALING_CASES:
        datum = parse_datum(text)
        assert datum.is_stable(j), (text, j)
        raised = datum.gamma(j)
        for p in primes:
            base = count_stratum_bruteforce(datum, p)
            assert count_stratum_bruteforce(raised, p) == p ** (j - 1) * base, (
                text,
                j,
                p,
            )
