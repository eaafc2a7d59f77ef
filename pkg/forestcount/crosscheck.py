"""
Cross-Checks
Formula-vs-oracle and bijection checks run alongside the involution verifier
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

from forestcount.enumeration import (
    DEFAULT_LIMIT,
    count_stream,
    enumerate_all_rooted_forests,
    enumerate_ppr_forests,
    enumerate_rooted_forests,
    enumerate_unrooted_forests,
)
from forestcount.exactmath import (
    cayley_rooted_forest_count,
    rooted_forest_count_specified_roots,
    takacs_count,
    takacs_count_eq1,
    takacs_term,
)
from forestcount.forest_model import (
    canonical_encode,
    encode_unrooted,
    encoding_hex,
    from_unrooted,
    is_special,
    to_unrooted,
)
from forestcount.observability import instrument_operation


@dataclass
class CrossCheckReport:
    n: int
    round_trips_ok: bool = True
    formula_ok: bool = True
    rooted_ok: bool = True
    first_counterexample: Optional[str] = None
    mismatches: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.round_trips_ok and self.formula_ok and self.rooted_ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            'round_trips_ok': self.round_trips_ok,
            'formula_ok': self.formula_ok,
            'rooted_ok': self.rooted_ok,
            'first_counterexample': self.first_counterexample,
            'mismatches': list(self.mismatches),
            'passed': self.passed,
        }


def check_round_trips(n: int, limit: int = DEFAULT_LIMIT) -> Tuple[bool, Optional[str]]:
    """
    to_unrooted(from_unrooted(g)) = g for every unrooted forest on [n], and
    from_unrooted(to_unrooted(f)) = f for every special PPR n-forest
    """
    for g in enumerate_unrooted_forests(n, limit):
        if to_unrooted(from_unrooted(g)) != g:
            return False, encoding_hex(encode_unrooted(g))

    for f in enumerate_ppr_forests(n, 0, limit):
        if is_special(f) and from_unrooted(to_unrooted(f)) != f:
            return False, encoding_hex(canonical_encode(f))

    return True, None


def check_formula_vs_oracle(n: int, limit: int = DEFAULT_LIMIT) -> List[str]:
    """Every disagreement between the closed forms and enumeration (empty when all agree)"""
    mismatches = []

    expected = takacs_count(n)
    enumerated = count_stream(enumerate_unrooted_forests(n, limit))
    if enumerated != expected:
        mismatches.append(f"unrooted forests: formula {expected}, enumeration {enumerated}")

    if n >= 1:
        rational = takacs_count_eq1(n)
        if rational != expected:
            mismatches.append(f"rational form {rational} != term sum {expected}")

    for j in range(n // 2 + 1):
        term = takacs_term(n, j)
        enumerated = count_stream(enumerate_ppr_forests(n, j, limit))
        if enumerated != term.magnitude or term.sign != (-1) ** j:
            mismatches.append(f"pair-count {j}: term {term}, enumeration {enumerated}")

    return mismatches


def check_rooted_formulas(m: int, limit: int = DEFAULT_LIMIT) -> List[str]:
    """Moon's formula for every nonempty root set of [1, m], plus Cayley's count"""
    mismatches = []
    if m == 0:
        return mismatches

    vertices = range(1, m + 1)
    for k in range(1, m + 1):
        expected = rooted_forest_count_specified_roots(m, k)
        for roots in combinations(vertices, k):
            enumerated = count_stream(enumerate_rooted_forests(m, roots, limit))
            if enumerated != expected:
                mismatches.append(f"roots {list(roots)} on [1,{m}]: formula {expected}, enumeration {enumerated}")

    expected = cayley_rooted_forest_count(m)
    enumerated = count_stream(enumerate_all_rooted_forests(m, limit))
    if enumerated != expected:
        mismatches.append(f"rooted forests on [1,{m}]: formula {expected}, enumeration {enumerated}")

    return mismatches


@instrument_operation("run_checks")
def run_checks(n: int, limit: int = DEFAULT_LIMIT) -> CrossCheckReport:
    """All non-involution checks for one n"""
    report = CrossCheckReport(n=n)

    report.round_trips_ok, report.first_counterexample = check_round_trips(n, limit)

    formula_mismatches = check_formula_vs_oracle(n, limit)
    report.formula_ok = not formula_mismatches

    rooted_mismatches = check_rooted_formulas(n, limit)
    report.rooted_ok = not rooted_mismatches

    report.mismatches = formula_mismatches + rooted_mismatches
    return report
