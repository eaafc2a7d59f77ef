"""
Exact Arithmetic
Closed-form counts behind the alternating-sum formula for labeled forests

All values are Python ints (arbitrary precision) or Fractions; there is no
floating-point path anywhere in this module.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from math import factorial as _factorial
from typing import List

from forestcount.errors import DomainError, InvariantViolation
from forestcount.observability import instrument_operation

Natural = int
ExactRational = Fraction


def _require_natural(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise DomainError(f"{name} must be >= 0, got {value}")
    return value


# ============================================================================
# Signed Counts
# ============================================================================

@dataclass(frozen=True)
class SignedCount:
    """
    A sign in {+1, -1} and a nonnegative magnitude

    Zero is always stored as +0 so serialized term tables never show "-0".
    """
    sign: int
    magnitude: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign!r}")
        _require_natural("magnitude", self.magnitude)
        if self.magnitude == 0 and self.sign == -1:
            object.__setattr__(self, 'sign', 1)

    @classmethod
    def from_int(cls, value: int) -> 'SignedCount':
        return cls(-1 if value < 0 else 1, abs(value))

    def __int__(self) -> int:
        return self.sign * self.magnitude

    def __neg__(self) -> 'SignedCount':
        return SignedCount.from_int(-int(self))

    def __add__(self, other: 'SignedCount') -> 'SignedCount':
        if not isinstance(other, SignedCount):
            return NotImplemented
        return SignedCount.from_int(int(self) + int(other))

    @property
    def is_negative(self) -> bool:
        return self.sign < 0

    @property
    def sign_symbol(self) -> str:
        return '+' if self.sign > 0 else '-'

    def __str__(self) -> str:
        return f"{self.sign_symbol}{self.magnitude}"


# ============================================================================
# Elementary Counts
# ============================================================================

def factorial(n: Natural) -> Natural:
    """n! with 0! = 1"""
    return _factorial(_require_natural("n", n))


def double_factorial_odd(j: Natural) -> Natural:
    """(2j-1)!! = 1*3*5*...*(2j-1), the number of perfect matchings on 2j elements"""
    _require_natural("j", j)
    return prod(range(1, 2 * j, 2))


def binomial(n: Natural, k: Natural) -> Natural:
    """C(n, k); zero when k > n"""
    return comb(_require_natural("n", n), _require_natural("k", k))


def matching_selection_count(n: Natural, j: Natural) -> Natural:
    """Ways to choose 2j elements of [n] and split them into j unordered pairs"""
    _require_natural("n", n)
    _require_natural("j", j)
    if 2 * j > n:
        raise DomainError(f"matching_selection_count needs 2j <= n, got n={n}, j={j}")
    return comb(n, 2 * j) * double_factorial_odd(j)


def rooted_forest_count_specified_roots(m: Natural, k: Natural) -> Natural:
    """
    Forests on m labeled vertices whose roots are a fixed set of k vertices

    Moon's formula k * m^(m-k-1). When k == m the exponent is -1 and the
    formula evaluates to exactly 1 (the edgeless forest), so that case is
    returned directly instead of going through integer powers.
    """
    _require_natural("m", m)
    _require_natural("k", k)
    if k == 0:
        raise DomainError("a rooted forest needs at least one root (k=0)")
    if k > m:
        raise DomainError(f"cannot choose k={k} roots among m={m} vertices")
    if k == m:
        return 1
    return k * m ** (m - k - 1)


def cayley_rooted_forest_count(n: Natural) -> Natural:
    """(n+1)^(n-1), the number of forests of rooted trees on [n]"""
    _require_natural("n", n)
    if n == 0:
        raise DomainError("cayley_rooted_forest_count is defined for n >= 1")
    return (n + 1) ** (n - 1)


# ============================================================================
# The Alternating Sum
# ============================================================================

@dataclass(frozen=True)
class TakacsTerm:
    """One row of the alternating sum: its two factors, the signed term, and the running total"""
    j: int
    a: int
    b: int
    term: SignedCount
    partial_sum: int


def takacs_term(n: Natural, j: Natural) -> SignedCount:
    """(-1)^j * C(n,2j)(2j-1)!! * (2j+1)(n+1)^(n-2j-1)"""
    a = matching_selection_count(n, j)
    b = rooted_forest_count_specified_roots(n + 1, 2 * j + 1)
    return SignedCount.from_int((-1) ** j * a * b)


def takacs_terms(n: Natural) -> List[TakacsTerm]:
    """All terms j = 0..floor(n/2) with their factors and partial sums"""
    _require_natural("n", n)
    rows = []
    running = 0
    for j in range(n // 2 + 1):
        a = matching_selection_count(n, j)
        b = rooted_forest_count_specified_roots(n + 1, 2 * j + 1)
        term = SignedCount.from_int((-1) ** j * a * b)
        running += int(term)
        rows.append(TakacsTerm(j=j, a=a, b=b, term=term, partial_sum=running))
    return rows


@instrument_operation("takacs_count")
def takacs_count(n: Natural) -> Natural:
    """Number of forests of unrooted trees on [n]; n = 0 gives the empty forest"""
    _require_natural("n", n)
    total = 0
    for j in range(n // 2 + 1):
        total += int(takacs_term(n, j))
    if total < 0:
        raise InvariantViolation(f"alternating sum for n={n} is negative: {total}")
    return total


@instrument_operation("takacs_count_eq1")
def takacs_count_eq1(n: Natural) -> Natural:
    """
    Literal rational evaluation of

        n!/(n+1) * sum_j (-1)^j (2j+1)(n+1)^(n-2j) / (2^j j! (n-2j)!)

    The result must be an integer and must agree with takacs_count(n).
    """
    _require_natural("n", n)
    if n == 0:
        raise DomainError("takacs_count_eq1 is defined for n >= 1")

    inner = Fraction(0)
    for j in range(n // 2 + 1):
        numerator = (-1) ** j * (2 * j + 1) * (n + 1) ** (n - 2 * j)
        denominator = 2 ** j * _factorial(j) * _factorial(n - 2 * j)
        inner += Fraction(numerator, denominator)

    value = Fraction(_factorial(n), n + 1) * inner
    if value.denominator != 1:
        raise InvariantViolation(f"rational evaluation for n={n} is not an integer: {value}")
    if value < 0:
        raise InvariantViolation(f"rational evaluation for n={n} is negative: {value}")

    expected = takacs_count(n)
    if value.numerator != expected:
        raise InvariantViolation(
            f"rational evaluation for n={n} gives {value.numerator}, term sum gives {expected}"
        )
    return value.numerator


# ============================================================================
# Sequences
# ============================================================================

def takacs_sequence(max_n: Natural) -> List[Natural]:
    """Forests of unrooted trees on [n] for n = 0..max_n (OEIS A001858)"""
    _require_natural("max_n", max_n)
    return [takacs_count(n) for n in range(max_n + 1)]


def cayley_sequence(max_n: Natural) -> List[Natural]:
    """Forests of rooted trees on [n] for n = 1..max_n (OEIS A000272 from index 1)"""
    _require_natural("max_n", max_n)
    return [cayley_rooted_forest_count(n) for n in range(1, max_n + 1)]
