"""ROUGE-1/2/L/SU scoring against one or more reference token lists.

Multi-reference handling is best-match: recall and precision are each the
max over references (rouge_l keeps the whole triple from the reference with
the best f1).  No stemming or stopword removal happens here; callers
tokenize however they like.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import DomainError

METRICS = ("rouge1", "rouge2", "rougeL", "rougeSU")


@dataclass(frozen=True)
class RougeScore:
    metric: str
    recall: float
    precision: float
    f1: float

    def __post_init__(self) -> None:
        for name in ("recall", "precision", "f1"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{name} {v} outside [0,1]")


def _f1(recall: float, precision: float) -> float:
    if recall + precision == 0.0:
        return 0.0
    return 2 * recall * precision / (recall + precision)


def _score(metric: str, recall: float, precision: float) -> RougeScore:
    return RougeScore(
        metric=metric, recall=recall, precision=precision, f1=_f1(recall, precision)
    )


def _ngrams(tokens, n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _clipped_overlap(cand: Counter, ref: Counter) -> int:
    return sum(min(count, ref[unit]) for unit, count in cand.items() if unit in ref)


def _check_references(references) -> None:
    if not references:
        raise DomainError("at least one reference is required")


def rouge_n(candidate, references, n: int = 1) -> RougeScore:
    """Clipped n-gram co-occurrence score."""
    if n < 1:
        raise DomainError("n must be at least 1")
    _check_references(references)
    metric = f"rouge{n}"
    if not candidate:
        return _score(metric, 0.0, 0.0)
    cand_counts = _ngrams(candidate, n)
    cand_total = sum(cand_counts.values())
    best_recall = 0.0
    best_precision = 0.0
    for ref in references:
        ref_counts = _ngrams(ref, n)
        ref_total = sum(ref_counts.values())
        overlap = _clipped_overlap(cand_counts, ref_counts)
        if ref_total:
            best_recall = max(best_recall, overlap / ref_total)
        if cand_total:
            best_precision = max(best_precision, overlap / cand_total)
    return _score(metric, best_recall, best_precision)


def lcs_length(a, b) -> int:
    """Classic quadratic DP, two rows."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate, references) -> RougeScore:
    """Longest-common-subsequence score; the reference with the best f1 wins."""
    _check_references(references)
    if not candidate:
        return _score("rougeL", 0.0, 0.0)
    best = (0.0, 0.0, 0.0)
    for ref in references:
        ell = lcs_length(candidate, ref)
        recall = ell / len(ref) if ref else 0.0
        precision = ell / len(candidate)
        f1 = _f1(recall, precision)
        if f1 > best[0]:
            best = (f1, recall, precision)
    return _score("rougeL", best[1], best[2])


def _su_units(tokens, max_skip: int) -> Counter:
    units: Counter = Counter((t,) for t in tokens)
    for i in range(len(tokens)):
        for j in range(i + 1, min(i + max_skip, len(tokens) - 1) + 1):
            units[(tokens[i], tokens[j])] += 1
    return units


def rouge_su(candidate, references, max_skip: int = 4) -> RougeScore:
    """Skip-bigram plus unigram score.

    Units are unigrams and in-order pairs at positional distance <= max_skip
    (adjacent tokens are distance 1, so max_skip=0 degenerates to unigrams).
    """
    if max_skip < 0:
        raise DomainError("max_skip must be nonnegative")
    _check_references(references)
    if not candidate:
        return _score("rougeSU", 0.0, 0.0)
    cand_counts = _su_units(candidate, max_skip)
    cand_total = sum(cand_counts.values())
    best_recall = 0.0
    best_precision = 0.0
    for ref in references:
        ref_counts = _su_units(ref, max_skip)
        ref_total = sum(ref_counts.values())
        overlap = _clipped_overlap(cand_counts, ref_counts)
        if ref_total:
            best_recall = max(best_recall, overlap / ref_total)
        if cand_total:
            best_precision = max(best_precision, overlap / cand_total)
    return _score("rougeSU", best_recall, best_precision)


def score_all(candidate, references, max_skip: int = 4) -> dict[str, RougeScore]:
    """The four standard metrics in report order."""
    return {
        "rouge1": rouge_n(candidate, references, 1),
        "rouge2": rouge_n(candidate, references, 2),
        "rougeL": rouge_l(candidate, references),
        "rougeSU": rouge_su(candidate, references, max_skip=max_skip),
    }
