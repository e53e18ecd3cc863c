import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roughrank.errors import DomainError
from roughrank.rouge import (
    RougeScore,
    lcs_length,
    rouge_l,
    rouge_n,
    rouge_su,
    score_all,
)


def brute_force_lcs(a, b) -> int:
    """Enumerate every subsequence of a, keep those embeddable in b."""

    def is_subsequence(sub, seq):
        it = iter(seq)
        return all(x in it for x in sub)

    best = 0
    for k in range(min(len(a), len(b)), 0, -1):
        for positions in itertools.combinations(range(len(a)), k):
            if is_subsequence([a[p] for p in positions], b):
                return k
    return best


class TestRougeN:
    def test_identical(self):
        s = rouge_n(["a", "b"], [["a", "b"]], 1)
        assert s.recall == s.precision == s.f1 == 1.0

    def test_hand_unigram(self):
        s = rouge_n(["the", "cat", "sat"], [["the", "cat", "slept"]], 1)
        assert s.recall == pytest.approx(2 / 3)
        assert s.precision == pytest.approx(2 / 3)
        assert s.f1 == pytest.approx(2 / 3)

    def test_disjoint_bigrams(self):
        s = rouge_n(["a", "b"], [["c", "d"]], 2)
        assert s.recall == s.precision == s.f1 == 0.0

    def test_clipping(self):
        # candidate repeats a token more often than the reference holds it
        s = rouge_n(["a", "a", "a"], [["a", "b"]], 1)
        assert s.recall == pytest.approx(1 / 2)
        assert s.precision == pytest.approx(1 / 3)

    def test_empty_candidate(self):
        s = rouge_n([], [["a"]], 1)
        assert s.recall == s.precision == s.f1 == 0.0

    def test_empty_references_rejected(self):
        with pytest.raises(DomainError):
            rouge_n(["a"], [], 1)

    def test_bad_n(self):
        with pytest.raises(DomainError):
            rouge_n(["a"], [["a"]], 0)

    def test_multi_reference_max(self):
        refs = [["x", "y"], ["the", "cat"]]
        s = rouge_n(["the", "cat"], refs, 1)
        assert s.recall == 1.0

    def test_candidate_shorter_than_n(self):
        s = rouge_n(["a"], [["a", "b"]], 2)
        assert s.recall == s.precision == 0.0


class TestRougeL:
    def test_identical(self):
        s = rouge_l(["a", "b", "c"], [["a", "b", "c"]])
        assert s.recall == s.precision == s.f1 == 1.0

    def test_hand_lcs(self):
        s = rouge_l(["a", "b", "c", "d"], [["a", "c", "b", "d"]])
        assert s.recall == pytest.approx(3 / 4)
        assert s.precision == pytest.approx(3 / 4)

    def test_disjoint(self):
        s = rouge_l(["a", "b"], [["c", "d"]])
        assert s.recall == s.precision == s.f1 == 0.0

    def test_best_f1_reference_wins(self):
        # one ref matches fully, another only partially
        s = rouge_l(["a", "b"], [["a", "x", "y", "z"], ["a", "b"]])
        assert s.recall == 1.0 and s.precision == 1.0

    def test_recall_precision_same_reference(self):
        # triple must come from a single reference, not a mix
        refs = [["a", "b", "c", "d", "e", "f"], ["a", "b"]]
        s = rouge_l(["a", "b", "c"], refs)
        # ref1: lcs 3, r=1/2, p=1 (f1 2/3); ref2: lcs 2, r=1, p=2/3 (f1 4/5)
        assert s.recall == pytest.approx(1.0)
        assert s.precision == pytest.approx(2 / 3)

    def test_empty_candidate(self):
        s = rouge_l([], [["a"]])
        assert s.f1 == 0.0

    def test_empty_references_rejected(self):
        with pytest.raises(DomainError):
            rouge_l(["a"], [])


class TestLcs:
    def test_empty(self):
        assert lcs_length([], ["a"]) == 0
        assert lcs_length(["a"], []) == 0

    def test_known_value(self):
        assert lcs_length(list("abcd"), list("acbd")) == 3

    def test_exhaustive_short(self):
        alphabet = ["x", "y", "z"]
        for la in range(4):
            for lb in range(4):
                for a in itertools.product(alphabet, repeat=la):
                    for b in itertools.product(alphabet, repeat=lb):
                        assert lcs_length(list(a), list(b)) == brute_force_lcs(a, b)

    @given(
        st.lists(st.sampled_from("xyz"), max_size=8),
        st.lists(st.sampled_from("xyz"), max_size=8),
    )
    @settings(max_examples=500)
    def test_matches_brute_force(self, a, b):
        assert lcs_length(a, b) == brute_force_lcs(a, b)


class TestRougeSU:
    def test_identical(self):
        s = rouge_su(["a", "b", "c"], [["a", "b", "c"]])
        assert s.recall == s.precision == s.f1 == 1.0

    def test_hand_skip_bigrams(self):
        s = rouge_su(["a", "b", "c"], [["a", "c", "b"]])
        assert s.recall == pytest.approx(5 / 6)
        assert s.precision == pytest.approx(5 / 6)

    def test_single_token_reduces_to_rouge1(self):
        s = rouge_su(["a"], [["a"]])
        r1 = rouge_n(["a"], [["a"]], 1)
        assert (s.recall, s.precision) == (r1.recall, r1.precision)

    def test_max_skip_zero_is_unigrams(self):
        cand = ["a", "b", "c", "a"]
        refs = [["b", "a", "a"], ["c", "c", "b"]]
        s = rouge_su(cand, refs, max_skip=0)
        r1 = rouge_n(cand, refs, 1)
        assert s.recall == pytest.approx(r1.recall)
        assert s.precision == pytest.approx(r1.precision)

    def test_max_skip_limits_distance(self):
        # with max_skip=1 only adjacent pairs count
        s = rouge_su(["a", "b", "c"], [["a", "b", "c"]], max_skip=1)
        assert s.recall == 1.0
        far = rouge_su(["a", "x", "b"], [["a", "b"]], max_skip=1)
        # cand units: a,x,b,ax,xb; ref units: a,b,ab -> overlap a,b
        assert far.recall == pytest.approx(2 / 3)

    def test_empty_candidate(self):
        s = rouge_su([], [["a"]])
        assert s.f1 == 0.0

    def test_negative_skip_rejected(self):
        with pytest.raises(DomainError):
            rouge_su(["a"], [["a"]], max_skip=-1)

    def test_empty_references_rejected(self):
        with pytest.raises(DomainError):
            rouge_su(["a"], [])


class TestScoreAll:
    def test_metric_names(self):
        scores = score_all(["a", "b"], [["a", "b"]])
        assert list(scores) == ["rouge1", "rouge2", "rougeL", "rougeSU"]
        assert all(s.metric == name for name, s in scores.items())


class TestScoreValidation:
    def test_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            RougeScore(metric="rouge1", recall=1.2, precision=0.0, f1=0.0)


tokens_strategy = st.lists(st.sampled_from(["a", "b", "c", "d"]), max_size=12)
nonempty_refs = st.lists(tokens_strategy, min_size=1, max_size=3)


class TestProperties:
    @given(tokens_strategy, nonempty_refs)
    @settings(max_examples=300)
    def test_scores_in_unit_interval(self, cand, refs):
        for score in score_all(cand, refs).values():
            assert 0.0 <= score.recall <= 1.0
            assert 0.0 <= score.precision <= 1.0
            assert 0.0 <= score.f1 <= 1.0

    @given(tokens_strategy)
    @settings(max_examples=200)
    def test_self_comparison_is_perfect(self, cand):
        for name, score in score_all(cand, [cand]).items():
            if not cand or (name == "rouge2" and len(cand) < 2):
                continue  # no units of that order exist
            assert score.recall == score.precision == 1.0

    @given(tokens_strategy, tokens_strategy)
    @settings(max_examples=200)
    def test_symmetric_inputs_swap_recall_precision(self, a, b):
        forward = rouge_n(a, [b], 1)
        backward = rouge_n(b, [a], 1)
        assert forward.recall == pytest.approx(backward.precision)
        assert forward.precision == pytest.approx(backward.recall)

    @given(tokens_strategy, tokens_strategy.filter(lambda t: len(t) > 0))
    @settings(max_examples=200)
    def test_appending_missing_ref_token_never_raises_recall_numerator(
        self, cand, ref
    ):
        missing = "zz"
        assert missing not in cand
        base = rouge_n(cand, [ref], 1)
        extended = rouge_n(cand, [ref + [missing]], 1)
        # numerator fixed while the denominator grows
        assert extended.recall <= base.recall + 1e-12

    @given(tokens_strategy, nonempty_refs)
    @settings(max_examples=200)
    def test_f1_is_harmonic_mean(self, cand, refs):
        for score in score_all(cand, refs).values():
            if score.recall + score.precision == 0:
                assert score.f1 == 0.0
            else:
                expected = (
                    2
                    * score.recall
                    * score.precision
                    / (score.recall + score.precision)
                )
                assert score.f1 == pytest.approx(expected)
