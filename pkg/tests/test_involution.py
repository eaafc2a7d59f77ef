"""
Test Involution

Site finders, the map itself, and the exhaustive verifier.
"""

import pytest

from forestcount import involution
from forestcount.enumeration import enumerate_ppr_forests
from forestcount.errors import CapacityError, InvariantViolation, ValidationError
from forestcount.exactmath import SignedCount
from forestcount.forest_model import ROOT, PPRForest, descendants, is_inversion_initiating, is_special, weight
from forestcount.involution import (
    SPECIAL,
    MergeSite,
    SplitSite,
    apply,
    apply_with_action,
    classify,
    describe_action,
    find_merge_site,
    find_split_site,
    verify_involution,
)


# ============================================================================
# Site Finders
# ============================================================================

class TestSites:
    """a, u, v and a', v', u' on hand-traced forests"""

    def test_merge_site_absent_without_pairs(self, star_n2):
        assert find_merge_site(star_n2) is None

    def test_merge_site(self, paired_n2):
        assert find_merge_site(paired_n2) == MergeSite(a=1, u=1, v=2)

    def test_merge_site_below_a_paired_root(self):
        # Arrange
        f = PPRForest(4, (ROOT, 0, 3, ROOT, ROOT), ((3, 4),))

        # Act & Assert
        assert find_merge_site(f) == MergeSite(a=2, u=3, v=4)

    def test_split_site_absent_when_children_are_regular(self, path_n2):
        assert find_split_site(path_n2) is None

    def test_split_site(self, inverted_n2):
        assert find_split_site(inverted_n2) == SplitSite(a_prime=1, v_prime=2, u_prime=1)

    def test_split_site_deeper(self):
        f = PPRForest(4, (ROOT, 3, 1, 0, 0), ())
        assert find_split_site(f) == SplitSite(a_prime=1, v_prime=3, u_prime=1)

    def test_split_site_picks_the_child_above_a_prime(self):
        # 0 -> 4 -> 3 -> 1 and 0 -> 2; a' = 1, v' = 4, u' = 3
        f = PPRForest(4, (ROOT, 3, 0, 4, 0), ())
        assert find_split_site(f) == SplitSite(a_prime=1, v_prime=4, u_prime=3)

    @pytest.mark.parametrize("n", range(6))
    def test_a_prime_ignores_whether_v_prime_counts_as_its_own_descendant(self, n):
        for f in enumerate_ppr_forests(n):
            site = find_split_site(f)
            candidates = [
                min(descendants(f, c) | {c})
                for c in range(1, n + 1)
                if f.parent[c] == 0 and is_inversion_initiating(f, c)
            ]
            assert (site is None) == (not candidates)
            if site is not None:
                assert site.a_prime == min(candidates)


class TestClassify:
    """Special, Merge or Split"""

    def test_special(self, star_n2):
        assert classify(star_n2) is SPECIAL

    def test_split(self, inverted_n2):
        assert classify(inverted_n2) == SplitSite(1, 2, 1)

    def test_merge(self, paired_n2):
        assert classify(paired_n2) == MergeSite(1, 1, 2)

    def test_smaller_site_wins(self):
        # T0 = 0 -> 3 -> 1, pair {2}, {4}: a = 2, a' = 1
        f = PPRForest(4, (ROOT, 3, ROOT, 0, ROOT), ((2, 4),))
        assert classify(f) == SplitSite(a_prime=1, v_prime=3, u_prime=1)

    def test_coinciding_sites_are_an_invariant_violation(self, paired_n2, monkeypatch):
        # Arrange
        monkeypatch.setattr(involution, 'find_split_site', lambda f: SplitSite(1, 2, 1))

        # Act & Assert
        with pytest.raises(InvariantViolation):
            classify(paired_n2)

    def test_describe_action(self):
        assert describe_action(SPECIAL) == "special"
        assert describe_action(MergeSite(1, 1, 2)) == "merge a=1 u=1 v=2"
        assert describe_action(SplitSite(1, 2, 1)) == "split a'=1 v'=2 u'=1"


# ============================================================================
# The Map
# ============================================================================

class TestApply:
    """Merge and Split undo each other"""

    def test_merge(self, paired_n2, inverted_n2):
        assert apply(paired_n2) == inverted_n2

    def test_split(self, paired_n2, inverted_n2):
        assert apply(inverted_n2) == paired_n2

    def test_special_is_fixed(self, path_n2):
        assert apply(path_n2) == path_n2
        assert apply(PPRForest(0, (ROOT,), ())) == PPRForest(0, (ROOT,), ())

    def test_duality(self, paired_n2):
        # Act
        action, image = apply_with_action(paired_n2)
        back, original = apply_with_action(image)

        # Assert
        assert action == MergeSite(a=1, u=1, v=2)
        assert back == SplitSite(a_prime=1, v_prime=2, u_prime=1)
        assert original == paired_n2

    def test_rejects_invalid_input(self):
        with pytest.raises(ValidationError, match="unpaired non-zero root"):
            apply(PPRForest(2, (ROOT, ROOT, 0), ()))

    def test_orbits_pair_up_adjacent_pair_counts(self):
        # Arrange
        forests = list(enumerate_ppr_forests(4))

        # Act
        moved = [(f, apply(f)) for f in forests if not is_special(f)]

        # Assert
        assert len(moved) % 2 == 0
        for f, image in moved:
            assert image != f
            assert abs(len(image.pairs) - len(f.pairs)) == 1
            assert weight(image) == -weight(f)
            assert apply(image) == f


# ============================================================================
# Exhaustive Verification
# ============================================================================

class TestVerifyInvolution:
    """Reports from the exhaustive run"""

    def test_n0(self):
        # Act
        report = verify_involution(0)

        # Assert
        assert report.total_ppr == 1
        assert report.per_pair_count == [1]
        assert report.special_count == 1
        assert report.passed

    def test_n1(self):
        report = verify_involution(1)
        assert (report.total_ppr, report.special_count, int(report.signed_sum)) == (1, 1, 1)
        assert report.passed

    def test_n2(self):
        # Act
        report = verify_involution(2)

        # Assert
        assert report.total_ppr == 4
        assert report.special_count == 2
        assert report.per_pair_count == [3, 1]
        assert report.signed_sum == SignedCount(1, 2)
        assert report.checks_ok
        assert report.first_counterexample is None

    def test_n5(self):
        report = verify_involution(5)
        assert report.total_ppr == 2451
        assert report.per_pair_count == [1296, 1080, 75]
        assert report.special_count == 291
        assert int(report.signed_sum) == 291
        assert report.passed

    @pytest.mark.slow
    def test_n6(self):
        report = verify_involution(6)
        assert report.total_ppr == 33832
        assert report.per_pair_count == [16807, 15435, 1575, 15]
        assert report.special_count == 2932
        assert report.passed

    def test_parallel_report_is_identical(self):
        # Act
        sequential = verify_involution(4, workers=1)
        parallel = verify_involution(4, workers=3)

        # Assert
        assert parallel.to_dict() == sequential.to_dict()

    def test_report_document(self):
        # Act
        document = verify_involution(2).to_dict()

        # Assert
        assert document == {
            'n': 2,
            'total_ppr': 4,
            'per_pair_count': [3, 1],
            'special_count': 2,
            'signed_sum': 2,
            'involution_ok': True,
            'sign_reversal_ok': True,
            'fixed_points_ok': True,
            'duality_ok': True,
            'first_counterexample': None,
            'passed': True,
        }

    def test_capacity(self):
        with pytest.raises(CapacityError):
            verify_involution(9)

    def test_broken_map_is_reported(self, monkeypatch):
        """A map that never moves anything fails the fixed-point check"""
        # Arrange
        monkeypatch.setattr(involution, '_perform', lambda f, action: f)

        # Act
        report = verify_involution(2)

        # Assert
        assert not report.fixed_points_ok
        assert not report.passed
        assert report.first_counterexample is not None
