"""
Involution
The weight-reversing involution on PPR forests and its exhaustive verifier

Given a PPR forest:
- a  = smallest vertex outside T0, u = root of a's tree, v = u's partner
- a' = smallest descendant of an inversion-initiating child of 0,
  v' = the child of 0 above a', u' = the child of v' on the path to a'

The smaller of a, a' decides the move. Merge hangs v under 0 and u under v,
dropping the pair {u, v}. Split cuts the links 0-v' and v'-u' and adds the
pair {u', v'}. Forests with neither site are special and are fixed points.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from forestcount.enumeration import DEFAULT_LIMIT, enumerate_ppr_forests, ppr_partitions
from forestcount.errors import InvariantViolation
from forestcount.exactmath import SignedCount, takacs_count
from forestcount.forest_model import (
    ROOT,
    PPRForest,
    canonical_encode,
    child_lists,
    encoding_hex,
    require_valid_ppr,
    root_of,
    validate_ppr,
)
from forestcount.observability import instrument_operation, log_event, record_verification_failure

DEFAULT_VERIFY_MAX_N = 6


# ============================================================================
# Actions
# ============================================================================

@dataclass(frozen=True)
class MergeSite:
    a: int
    u: int
    v: int


@dataclass(frozen=True)
class SplitSite:
    a_prime: int
    v_prime: int
    u_prime: int


@dataclass(frozen=True)
class Special:
    """The forest is special and is left unchanged"""


SPECIAL = Special()

InvolutionAction = Union[Special, MergeSite, SplitSite]


def describe_action(action: InvolutionAction) -> str:
    """One-line annotation: special | merge a=.. u=.. v=.. | split a'=.. v'=.. u'=.."""
    if isinstance(action, MergeSite):
        return f"merge a={action.a} u={action.u} v={action.v}"
    if isinstance(action, SplitSite):
        return f"split a'={action.a_prime} v'={action.v_prime} u'={action.u_prime}"
    return "special"


# ============================================================================
# Site Finders
# ============================================================================

def _subtree(kids: List[List[int]], top: int) -> List[int]:
    """Proper descendants of top"""
    found: List[int] = []
    stack = list(kids[top])
    while stack:
        w = stack.pop()
        found.append(w)
        stack.extend(kids[w])
    return found


def find_merge_site(f: PPRForest) -> Optional[MergeSite]:
    """(a, u, v) for the smallest vertex outside T0; None when there are no pairs"""
    if not f.pairs:
        return None

    partners: Dict[int, int] = {}
    for r, s in f.pairs:
        partners[r] = s
        partners[s] = r

    # every vertex outside T0 belongs to some paired tree
    for a in range(1, f.n + 1):
        u = root_of(f, a)
        if u != 0:
            return MergeSite(a=a, u=u, v=partners[u])

    raise InvariantViolation("forest has pairs but no vertex outside T0")


def find_split_site(f: PPRForest) -> Optional[SplitSite]:
    """(a', v', u') for the smallest descendant of an inversion-initiating child of 0"""
    kids = child_lists(f.parent)
    best: Optional[Tuple[int, int]] = None
    for c in kids[0]:
        below = _subtree(kids, c)
        if not below:
            continue
        smallest = min(below)
        # inversion-initiating iff something below c is smaller than c
        if smallest < c and (best is None or smallest < best[0]):
            best = (smallest, c)

    if best is None:
        return None

    a_prime, v_prime = best
    u_prime = a_prime
    while f.parent[u_prime] != v_prime:
        u_prime = f.parent[u_prime]
    return SplitSite(a_prime=a_prime, v_prime=v_prime, u_prime=u_prime)


def classify(f: PPRForest) -> InvolutionAction:
    """Special, or the site of whichever of a, a' is smaller"""
    merge = find_merge_site(f)
    split = find_split_site(f)

    if merge is None and split is None:
        return SPECIAL
    if merge is not None and split is not None:
        if merge.a == split.a_prime:
            raise InvariantViolation(
                f"a and a' coincide at vertex {merge.a}; T0 and the paired trees overlap"
            )
        return merge if merge.a < split.a_prime else split
    return merge if merge is not None else split


# ============================================================================
# The Map
# ============================================================================

def _perform(f: PPRForest, action: InvolutionAction) -> PPRForest:
    if isinstance(action, MergeSite):
        parent = list(f.parent)
        parent[action.v] = 0
        parent[action.u] = action.v
        dropped = tuple(sorted((action.u, action.v)))
        pairs = tuple(pair for pair in f.pairs if pair != dropped)
        return PPRForest(f.n, parent, pairs)

    if isinstance(action, SplitSite):
        parent = list(f.parent)
        parent[action.v_prime] = ROOT
        parent[action.u_prime] = ROOT
        return PPRForest(f.n, parent, f.pairs + ((action.u_prime, action.v_prime),))

    return f


def apply_with_action(f: PPRForest) -> Tuple[InvolutionAction, PPRForest]:
    """Validate f, classify it, and return the action together with its image"""
    require_valid_ppr(f)
    action = classify(f)
    return action, _perform(f, action)


def apply(f: PPRForest) -> PPRForest:
    """The involution; the identity on special forests"""
    return apply_with_action(f)[1]


# ============================================================================
# Exhaustive Verification
# ============================================================================

@dataclass
class VerificationReport:
    """Outcome of checking the involution on every PPR n-forest"""
    n: int
    total_ppr: int = 0
    per_pair_count: List[int] = field(default_factory=list)
    special_count: int = 0
    signed_sum: SignedCount = field(default_factory=lambda: SignedCount(1, 0))
    involution_ok: bool = True
    sign_reversal_ok: bool = True
    fixed_points_ok: bool = True
    duality_ok: bool = True
    first_counterexample: Optional[str] = None
    expected_count: Optional[int] = None

    @property
    def checks_ok(self) -> bool:
        return self.involution_ok and self.sign_reversal_ok and self.fixed_points_ok and self.duality_ok

    @property
    def passed(self) -> bool:
        return (
            self.checks_ok
            and int(self.signed_sum) == self.special_count
            and (self.expected_count is None or self.special_count == self.expected_count)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'total_ppr': self.total_ppr,
            'per_pair_count': list(self.per_pair_count),
            'special_count': self.special_count,
            'signed_sum': int(self.signed_sum),
            'involution_ok': self.involution_ok,
            'sign_reversal_ok': self.sign_reversal_ok,
            'fixed_points_ok': self.fixed_points_ok,
            'duality_ok': self.duality_ok,
            'first_counterexample': self.first_counterexample,
            'passed': self.passed,
        }


@dataclass
class _Tally:
    """Partial results over one branch of the PPR search"""
    per_pair_count: List[int]
    special_count: int = 0
    involution_ok: bool = True
    sign_reversal_ok: bool = True
    fixed_points_ok: bool = True
    duality_ok: bool = True
    first_bad: Optional[bytes] = None

    def fail(self, encoding: bytes):
        if self.first_bad is None or encoding < self.first_bad:
            self.first_bad = encoding

    def merge(self, other: '_Tally'):
        self.per_pair_count = [x + y for x, y in zip(self.per_pair_count, other.per_pair_count)]
        self.special_count += other.special_count
        self.involution_ok &= other.involution_ok
        self.sign_reversal_ok &= other.sign_reversal_ok
        self.fixed_points_ok &= other.fixed_points_ok
        self.duality_ok &= other.duality_ok
        if other.first_bad is not None:
            self.fail(other.first_bad)


def _expected_dual(action: InvolutionAction) -> InvolutionAction:
    if isinstance(action, MergeSite):
        return SplitSite(a_prime=action.a, v_prime=action.v, u_prime=action.u)
    if isinstance(action, SplitSite):
        return MergeSite(a=action.a_prime, u=action.u_prime, v=action.v_prime)
    return SPECIAL


def _verify_branch(task: Tuple[int, int, Tuple]) -> _Tally:
    n, limit, prefix = task
    tally = _Tally(per_pair_count=[0] * (n // 2 + 1))

    for f in enumerate_ppr_forests(n, None, limit, prefix=prefix):
        tally.per_pair_count[len(f.pairs)] += 1
        key = canonical_encode(f)

        if validate_ppr(f) is not None:
            tally.involution_ok = False
            tally.fail(key)
            continue

        action = classify(f)
        image = _perform(f, action)
        special = action is SPECIAL
        if special:
            tally.special_count += 1

        # the image must be valid before it can be mapped back
        if validate_ppr(image) is not None:
            tally.involution_ok = False
            tally.fail(key)
            continue

        back_action = classify(image)
        if canonical_encode(_perform(image, back_action)) != key:
            tally.involution_ok = False
            tally.fail(key)

        if (image == f) != special:
            tally.fixed_points_ok = False
            tally.fail(key)

        if not special:
            if abs(len(image.pairs) - len(f.pairs)) != 1:
                tally.sign_reversal_ok = False
                tally.fail(key)
            if back_action != _expected_dual(action):
                tally.duality_ok = False
                tally.fail(key)

    return tally


@instrument_operation("verify_involution")
def verify_involution(n: int, limit: int = DEFAULT_LIMIT, workers: int = 1) -> VerificationReport:
    """
    Check the involution on every PPR n-forest

    Confirms apply(apply(f)) = f, a pair-count change of exactly one on
    non-special forests, fixed points = special forests, Merge/Split
    duality, and that the signed total equals the special count and the
    closed-form count. workers > 1 splits the search by vertex 1's parent;
    the report is identical either way.
    """
    # raises CapacityError / DomainError before any work is scheduled
    enumerate_ppr_forests(n, None, limit)

    tasks = [(n, limit, prefix) for prefix in ppr_partitions(n)]
    if workers <= 1 or len(tasks) == 1:
        branches = [_verify_branch(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            branches = list(executor.map(_verify_branch, tasks))

    tally = branches[0]
    for branch in branches[1:]:
        tally.merge(branch)

    signed = SignedCount.from_int(sum((-1) ** j * c for j, c in enumerate(tally.per_pair_count)))
    report = VerificationReport(
        n=n,
        total_ppr=sum(tally.per_pair_count),
        per_pair_count=tally.per_pair_count,
        special_count=tally.special_count,
        signed_sum=signed,
        involution_ok=tally.involution_ok,
        sign_reversal_ok=tally.sign_reversal_ok,
        fixed_points_ok=tally.fixed_points_ok,
        duality_ok=tally.duality_ok,
        first_counterexample=encoding_hex(tally.first_bad) if tally.first_bad is not None else None,
        expected_count=takacs_count(n),
    )

    log_event("involution_verified", {"forest.n": n, "verification.passed": report.passed})
    if not report.passed:
        record_verification_failure(n)
    return report
