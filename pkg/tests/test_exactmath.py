"""
Test Exact Arithmetic

Closed forms, the alternating sum and its rational form, and SignedCount.
"""

import time
from math import factorial as math_factorial

import pytest

from forestcount.errors import DomainError
from forestcount.exactmath import (
    SignedCount,
    binomial,
    cayley_rooted_forest_count,
    cayley_sequence,
    double_factorial_odd,
    factorial,
    matching_selection_count,
    rooted_forest_count_specified_roots,
    takacs_count,
    takacs_count_eq1,
    takacs_sequence,
    takacs_term,
    takacs_terms,
)

UNROOTED_COUNTS = [1, 1, 2, 7, 38, 291, 2932, 36961]


# ============================================================================
# Signed Counts
# ============================================================================

class TestSignedCount:
    """Sign/magnitude pairs with a canonical zero"""

    def test_negative_zero_is_normalized(self):
        # Act
        zero = SignedCount(-1, 0)

        # Assert
        assert zero.sign == 1
        assert zero == SignedCount(1, 0)
        assert str(zero) == "+0"

    def test_from_int_and_back(self):
        assert SignedCount.from_int(-9) == SignedCount(-1, 9)
        assert int(SignedCount.from_int(-9)) == -9
        assert int(SignedCount.from_int(16)) == 16

    def test_negation_and_addition(self):
        # Arrange
        plus = SignedCount(1, 16)
        minus = SignedCount(-1, 9)

        # Act & Assert
        assert -plus == SignedCount(-1, 16)
        assert plus + minus == SignedCount(1, 7)
        assert minus + SignedCount(1, 9) == SignedCount(1, 0)

    def test_rendering(self):
        assert str(SignedCount(-1, 9)) == "-9"
        assert SignedCount(-1, 9).sign_symbol == "-"
        assert SignedCount(-1, 9).is_negative

    @pytest.mark.parametrize("sign,magnitude", [(0, 1), (2, 1), (1, -1)])
    def test_rejects_bad_components(self, sign, magnitude):
        with pytest.raises(DomainError):
            SignedCount(sign, magnitude)


# ============================================================================
# Elementary Counts
# ============================================================================

class TestElementaryCounts:
    """factorial, double factorial, binomials and the two factors A and B"""

    @pytest.mark.parametrize("n,expected", [(0, 1), (1, 1), (5, 120), (10, 3628800)])
    def test_factorial(self, n, expected):
        assert factorial(n) == expected

    @pytest.mark.parametrize("j,expected", [(0, 1), (1, 1), (2, 3), (3, 15), (4, 105)])
    def test_double_factorial_odd(self, j, expected):
        assert double_factorial_odd(j) == expected

    def test_binomial_is_zero_above_n(self):
        assert binomial(5, 2) == 10
        assert binomial(3, 4) == 0

    @pytest.mark.parametrize("n,j,expected", [(4, 2, 3), (5, 1, 10), (6, 3, 15), (3, 0, 1)])
    def test_matching_selection_count(self, n, j, expected):
        assert matching_selection_count(n, j) == expected

    def test_matching_selection_count_rejects_too_many_pairs(self):
        with pytest.raises(DomainError):
            matching_selection_count(3, 2)

    def test_matching_selection_count_identity(self):
        """A(n, j) * 2^j * j! = n! / (n-2j)!"""
        for n in range(21):
            for j in range(n // 2 + 1):
                left = matching_selection_count(n, j) * 2 ** j * math_factorial(j)
                assert left == math_factorial(n) // math_factorial(n - 2 * j), (n, j)

    @pytest.mark.parametrize("m,k,expected", [(5, 2, 50), (3, 1, 9), (2, 2, 1), (4, 1, 16), (1, 1, 1)])
    def test_rooted_forest_count_specified_roots(self, m, k, expected):
        assert rooted_forest_count_specified_roots(m, k) == expected

    @pytest.mark.parametrize("m,k", [(3, 0), (2, 3), (0, 0)])
    def test_rooted_forest_count_rejects_bad_root_counts(self, m, k):
        with pytest.raises(DomainError):
            rooted_forest_count_specified_roots(m, k)

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 3), (3, 16), (4, 125)])
    def test_cayley_rooted_forest_count(self, n, expected):
        assert cayley_rooted_forest_count(n) == expected

    def test_cayley_rejects_zero(self):
        with pytest.raises(DomainError):
            cayley_rooted_forest_count(0)

    @pytest.mark.parametrize("value", [-1, 2.0, "3", True])
    def test_non_naturals_are_domain_errors(self, value):
        with pytest.raises(DomainError):
            factorial(value)


# ============================================================================
# The Alternating Sum
# ============================================================================

class TestTakacsCount:
    """Term sum, rational form, term table and sequences"""

    @pytest.mark.parametrize("n,j,expected", [
        (2, 0, SignedCount(1, 3)),
        (2, 1, SignedCount(-1, 1)),
        (3, 0, SignedCount(1, 16)),
        (3, 1, SignedCount(-1, 9)),
    ])
    def test_terms(self, n, j, expected):
        assert takacs_term(n, j) == expected

    @pytest.mark.parametrize("n,expected", list(enumerate(UNROOTED_COUNTS)))
    def test_count(self, n, expected):
        assert takacs_count(n) == expected

    def test_count_at_eight(self):
        assert takacs_count(8) == 561948

    def test_count_rejects_negative_n(self):
        with pytest.raises(DomainError):
            takacs_count(-1)

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (5, 291)])
    def test_rational_form(self, n, expected):
        assert takacs_count_eq1(n) == expected

    def test_rational_form_rejects_zero(self):
        with pytest.raises(DomainError):
            takacs_count_eq1(0)

    def test_rational_form_agrees_up_to_200(self):
        # Arrange
        start = time.perf_counter()

        # Act
        for n in range(1, 201):
            assert takacs_count_eq1(n) == takacs_count(n), n

        # Assert
        assert time.perf_counter() - start < 5.0

    def test_large_n_is_fast_and_exact(self):
        # Act
        start = time.perf_counter()
        value = takacs_count(100)
        elapsed = time.perf_counter() - start

        # Assert
        assert elapsed < 1.0
        assert value > 0
        assert value == takacs_count_eq1(100)

    def test_terms_table_for_n3(self):
        # Act
        rows = takacs_terms(3)

        # Assert
        assert [(r.j, r.a, r.b, str(r.term), r.partial_sum) for r in rows] == [
            (0, 1, 16, "+16", 16),
            (1, 3, 3, "-9", 7),
        ]

    def test_terms_table_ends_at_the_count(self):
        for n in range(12):
            assert takacs_terms(n)[-1].partial_sum == takacs_count(n)

    def test_sequences(self):
        assert takacs_sequence(7) == UNROOTED_COUNTS
        assert takacs_sequence(0) == [1]
        assert cayley_sequence(5) == [1, 3, 16, 125, 1296]
        assert cayley_sequence(0) == []
