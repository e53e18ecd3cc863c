"""Desk-scale supervised learners used ahead of rank post-processing.

Five methods: plain k-nearest-neighbour, fuzzy kNN, fuzzy-rough kNN,
Gaussian naive Bayes, and LEM1 rule induction on symbolic attributes.
All prediction-time ties break toward the `relevant` class so the ranking
stage never starves for candidates on a knife-edge vote.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .discretize import Binning, apply_bins, fit_bins
from .errors import ConfigurationError, DataError, DomainError, InternalError
from .features import NON_RELEVANT, RELEVANT
from .rough import DecisionTable, _parse_symbol, indiscernibility_partition, lower_approximation

CLASSIFIER_NAMES = ("knn", "fuzzy_nn", "fuzzy_rough_nn", "naive_bayes", "lem1")

Symbol = int | str


@dataclass(frozen=True)
class TrainingSet:
    """Feature rows with their decision labels.

    table is an optional symbolic view of the same rows for rule learners.
    """

    features: np.ndarray
    labels: tuple[str, ...]
    table: DecisionTable | None = None

    def __post_init__(self) -> None:
        feats = np.asarray(self.features, dtype=float)
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "labels", tuple(self.labels))
        if feats.ndim != 2:
            raise DataError("feature matrix must be two-dimensional")
        if feats.shape[0] == 0:
            raise DomainError("training set is empty")
        if feats.shape[0] != len(self.labels):
            raise DataError("row count differs from label count")
        if not np.all(np.isfinite(feats)):
            raise DataError("non-finite feature value")
        if self.table is not None and self.table.n_objects != feats.shape[0]:
            raise DataError("table view row count differs from feature rows")

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def classes(self) -> tuple[str, ...]:
        seen: list[str] = []
        for label in self.labels:
            if label not in seen:
                seen.append(label)
        return tuple(seen)

    def majority_class(self) -> str:
        counts = Counter(self.labels)
        top = max(counts.values())
        tied = [c for c, n in counts.items() if n == top]
        if RELEVANT in tied:
            return RELEVANT
        return tied[0]


def _prefer_relevant(scored: list[tuple[str, float]]) -> str:
    """argmax over (class, score); exact score ties go to `relevant`,
    then to the earlier entry."""
    best = max(s for _, s in scored)
    tied = [c for c, s in scored if s == best]
    if RELEVANT in tied:
        return RELEVANT
    return tied[0]


def _neighbour_order(train: TrainingSet, query: np.ndarray) -> tuple[list[int], np.ndarray]:
    q = np.asarray(query, dtype=float)
    if q.shape != (train.features.shape[1],):
        raise DataError(
            f"query has shape {q.shape}, expected ({train.features.shape[1]},)"
        )
    dists = np.linalg.norm(train.features - q, axis=1)
    order = sorted(range(train.n_rows), key=lambda i: (dists[i], i))
    return order, dists


def _check_k(train: TrainingSet, k: int) -> None:
    if not 1 <= k <= train.n_rows:
        raise DomainError(f"k={k} outside 1..{train.n_rows}")


def knn_predict(train: TrainingSet, query, k: int) -> str:
    """Majority vote among the k nearest by Euclidean distance.

    Distance ties prefer the lower training index; vote ties prefer
    `relevant`, then the nearest neighbour's class.
    """
    _check_k(train, k)
    order, _ = _neighbour_order(train, query)
    chosen = order[:k]
    votes = Counter(train.labels[i] for i in chosen)
    top = max(votes.values())
    tied = {c for c, n in votes.items() if n == top}
    if len(tied) == 1:
        return next(iter(tied))
    if RELEVANT in tied:
        return RELEVANT
    for i in chosen:
        if train.labels[i] in tied:
            return train.labels[i]
    raise InternalError("vote bookkeeping broke")


def fuzzy_nn_predict(
    train: TrainingSet, query, k: int, m: float = 2.0
) -> tuple[str, dict[str, float]]:
    """Distance-weighted memberships u(c) = sum of w over class-c neighbours
    / sum of w, with w = d^(-2/(m-1)).  A zero-distance neighbour short
    circuits to its class with membership 1."""
    _check_k(train, k)
    if m <= 1.0:
        raise DomainError("m must exceed 1")
    order, dists = _neighbour_order(train, query)
    chosen = order[:k]
    memberships = {c: 0.0 for c in train.classes}
    for i in chosen:
        if dists[i] == 0.0:
            memberships = {c: 0.0 for c in train.classes}
            memberships[train.labels[i]] = 1.0
            return train.labels[i], memberships
    weights = [float(dists[i]) ** (-2.0 / (m - 1.0)) for i in chosen]
    total = sum(weights)
    for i, w in zip(chosen, weights):
        memberships[train.labels[i]] += w / total
    winner = _prefer_relevant(list(memberships.items()))
    return winner, memberships


def _rescale(features: np.ndarray, lo: np.ndarray, span: np.ndarray) -> np.ndarray:
    scaled = np.where(span > 0, (features - lo) / np.where(span > 0, span, 1.0), 0.0)
    return np.clip(scaled, 0.0, 1.0)


def frnn_predict(train: TrainingSet, query, k: int) -> str:
    """Fuzzy-rough nearest neighbour with crisp classes.

    Features are min/max rescaled to [0,1] on the training range (queries
    clamp to the edges).  Similarity is the mean of per-attribute
    1 - |x - y|.  For each class the lower and upper memberships over the
    k most similar neighbours combine as (L+U)/2; ties prefer `relevant`.
    """
    _check_k(train, k)
    q = np.asarray(query, dtype=float)
    if q.shape != (train.features.shape[1],):
        raise DataError(
            f"query has shape {q.shape}, expected ({train.features.shape[1]},)"
        )
    lo = train.features.min(axis=0)
    span = train.features.max(axis=0) - lo
    scaled_train = _rescale(train.features, lo, span)
    scaled_q = _rescale(q.reshape(1, -1), lo, span)[0]
    if not (np.all(np.isfinite(scaled_q)) and np.all(np.isfinite(scaled_train))):
        raise InternalError("rescaled features are not finite")
    if scaled_train.min() < 0.0 or scaled_train.max() > 1.0:
        raise InternalError("rescaled features left [0,1]")
    sims = 1.0 - np.abs(scaled_train - scaled_q).mean(axis=1)
    order = sorted(range(train.n_rows), key=lambda i: (-sims[i], i))
    chosen = order[:k]
    scores: list[tuple[str, float]] = []
    for c in train.classes:
        lower = min(
            max(1.0 - sims[i], 1.0 if train.labels[i] == c else 0.0) for i in chosen
        )
        upper = max(
            min(float(sims[i]), 1.0 if train.labels[i] == c else 0.0) for i in chosen
        )
        scores.append((c, (lower + upper) / 2.0))
    return _prefer_relevant(scores)


@dataclass(frozen=True)
class GaussianNBModel:
    classes: tuple[str, ...]
    priors: np.ndarray
    means: np.ndarray
    variances: np.ndarray

    def __post_init__(self) -> None:
        if np.any(self.variances <= 0):
            raise InternalError("variance floor failed")


def naive_bayes_train(train: TrainingSet, var_floor: float = 1e-9) -> GaussianNBModel:
    """Per (class, feature) Gaussians with a variance floor, priors from
    class frequencies."""
    if var_floor <= 0:
        raise ConfigurationError("variance floor must be positive")
    classes = train.classes
    labels = np.array(train.labels)
    priors = np.empty(len(classes))
    means = np.empty((len(classes), train.features.shape[1]))
    variances = np.empty_like(means)
    for idx, c in enumerate(classes):
        rows = train.features[labels == c]
        priors[idx] = rows.shape[0] / train.n_rows
        means[idx] = rows.mean(axis=0)
        variances[idx] = np.maximum(rows.var(axis=0, ddof=0), var_floor)
    return GaussianNBModel(
        classes=classes, priors=priors, means=means, variances=variances
    )


def naive_bayes_predict(model: GaussianNBModel, query) -> str:
    q = np.asarray(query, dtype=float)
    scores: list[tuple[str, float]] = []
    for idx, c in enumerate(model.classes):
        log_lik = -0.5 * np.sum(
            np.log(2.0 * np.pi * model.variances[idx])
            + (q - model.means[idx]) ** 2 / model.variances[idx]
        )
        scores.append((c, float(np.log(model.priors[idx]) + log_lik)))
    return _prefer_relevant(scores)


@dataclass(frozen=True)
class Rule:
    conditions: tuple[tuple[str, Symbol], ...]
    decision: str
    support: int

    def __post_init__(self) -> None:
        if not self.conditions:
            raise DataError("rule needs at least one condition")
        if self.support < 1:
            raise DataError("support must be positive")

    def matches(self, row: dict) -> bool:
        return all(row.get(attr) == value for attr, value in self.conditions)

    def to_text(self) -> str:
        conds = " & ".join(f"{a}={v}" for a, v in self.conditions)
        return f"{conds} => {self.decision} [support={self.support}]"


_RULE_RE = re.compile(
    r"^(?P<conds>.+?)\s*=>\s*(?P<decision>\S+)\s*\[support=(?P<support>\d+)\]$"
)


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]

    def to_text(self) -> str:
        return "\n".join(r.to_text() for r in self.rules) + ("\n" if self.rules else "")

    @classmethod
    def from_text(cls, text: str) -> "RuleSet":
        rules: list[Rule] = []
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            m = _RULE_RE.match(line.strip())
            if m is None:
                raise DataError(f"line {line_no}: unparseable rule")
            conditions = []
            for part in m.group("conds").split("&"):
                attr, sep, value = part.strip().partition("=")
                if not sep or not attr.strip():
                    raise DataError(f"line {line_no}: bad condition {part.strip()!r}")
                conditions.append((attr.strip(), _parse_symbol(value.strip())))
            rules.append(
                Rule(
                    conditions=tuple(conditions),
                    decision=m.group("decision"),
                    support=int(m.group("support")),
                )
            )
        return cls(rules=tuple(rules))


def _acceptable(table: DecisionTable, attrs, lowers: dict[str, frozenset[int]]) -> bool:
    """A reduced attribute set stays acceptable when each of its blocks that
    touches a class's lower approximation lies inside it."""
    if attrs:
        blocks = indiscernibility_partition(table, attrs).blocks
    else:
        blocks = (frozenset(range(table.n_objects)),)
    for block in blocks:
        for lower in lowers.values():
            if block & lower and not block <= lower:
                return False
    return True


def lem1_train(table: DecisionTable) -> RuleSet:
    """Global covering by greedy attribute dropping, then one certain rule
    per covering block that sits inside a class's lower approximation.

    Inconsistent blocks (same attribute values, mixed classes) end up in no
    lower approximation and yield no rule.  An empty covering yields an
    empty rule set; callers fall back to the majority class.
    """
    if table.decision is None:
        raise ConfigurationError("table has no decision column")
    classes = sorted(set(table.decision), key=str)
    lowers = {
        c: lower_approximation(
            table,
            table.attributes,
            frozenset(i for i, d in enumerate(table.decision) if d == c),
        )
        for c in classes
    }
    covering = list(table.attributes)
    for attr in table.attributes:
        candidate = [a for a in covering if a != attr]
        if _acceptable(table, candidate, lowers):
            covering = candidate
    if not covering:
        return RuleSet(rules=())
    rules: list[Rule] = []
    for block in indiscernibility_partition(table, covering).blocks:
        decision = None
        for c, lower in lowers.items():
            if block <= lower:
                decision = c
                break
        if decision is None:
            continue
        member = min(block)
        conditions = tuple(
            (a, table.values[member][table.attr_index(a)]) for a in covering
        )
        rules.append(Rule(conditions=conditions, decision=decision, support=len(block)))
    return RuleSet(rules=tuple(rules))


def lem1_predict(rules: RuleSet, row: dict, fallback: str) -> str:
    """Highest-support matching rule wins; ties prefer `relevant`, then the
    earlier rule; no match falls back to the training majority."""
    matching = [r for r in rules.rules if r.matches(row)]
    if not matching:
        return fallback
    top = max(r.support for r in matching)
    tied = [r for r in matching if r.support == top]
    for r in tied:
        if r.decision == RELEVANT:
            return RELEVANT
    return tied[0].decision


class KNNClassifier:
    """fit/predict wrapper over knn_predict."""

    def __init__(self, k: int = 3):
        self.k = k
        self.train_: TrainingSet | None = None

    def fit(self, features, labels) -> "KNNClassifier":
        self.train_ = TrainingSet(features=np.asarray(features, float), labels=tuple(labels))
        return self

    def predict(self, query) -> str:
        if self.train_ is None:
            raise ConfigurationError("classifier is not fitted")
        return knn_predict(self.train_, query, min(self.k, self.train_.n_rows))


class FuzzyNNClassifier:
    def __init__(self, k: int = 3, m: float = 2.0):
        self.k = k
        self.m = m
        self.train_: TrainingSet | None = None

    def fit(self, features, labels) -> "FuzzyNNClassifier":
        self.train_ = TrainingSet(features=np.asarray(features, float), labels=tuple(labels))
        return self

    def predict(self, query) -> str:
        if self.train_ is None:
            raise ConfigurationError("classifier is not fitted")
        label, _ = fuzzy_nn_predict(
            self.train_, query, min(self.k, self.train_.n_rows), self.m
        )
        return label

    def memberships(self, query) -> dict[str, float]:
        if self.train_ is None:
            raise ConfigurationError("classifier is not fitted")
        _, u = fuzzy_nn_predict(
            self.train_, query, min(self.k, self.train_.n_rows), self.m
        )
        return u


class FuzzyRoughNNClassifier:
    def __init__(self, k: int = 3):
        self.k = k
        self.train_: TrainingSet | None = None

    def fit(self, features, labels) -> "FuzzyRoughNNClassifier":
        self.train_ = TrainingSet(features=np.asarray(features, float), labels=tuple(labels))
        return self

    def predict(self, query) -> str:
        if self.train_ is None:
            raise ConfigurationError("classifier is not fitted")
        return frnn_predict(self.train_, query, min(self.k, self.train_.n_rows))


class GaussianNBClassifier:
    def __init__(self, var_floor: float = 1e-9):
        self.var_floor = var_floor
        self.model_: GaussianNBModel | None = None

    def fit(self, features, labels) -> "GaussianNBClassifier":
        train = TrainingSet(features=np.asarray(features, float), labels=tuple(labels))
        self.model_ = naive_bayes_train(train, var_floor=self.var_floor)
        return self

    def predict(self, query) -> str:
        if self.model_ is None:
            raise ConfigurationError("classifier is not fitted")
        return naive_bayes_predict(self.model_, query)


class LEM1Classifier:
    """Rule induction over discretized features.

    fit bins the continuous matrix, builds a symbolic decision table, and
    induces certain rules; predict discretizes the query with the same cuts.
    """

    def __init__(self, n_bins: int = 3, strategy: str = "equal_frequency"):
        self.n_bins = n_bins
        self.strategy = strategy
        self.binning_: Binning | None = None
        self.rules_: RuleSet | None = None
        self.fallback_: str | None = None
        self.attributes_: tuple[str, ...] = ()

    def fit(self, features, labels) -> "LEM1Classifier":
        train = TrainingSet(features=np.asarray(features, float), labels=tuple(labels))
        self.binning_ = fit_bins(
            train.features, n_bins=self.n_bins, strategy=self.strategy
        )
        codes = apply_bins(self.binning_, train.features)
        self.attributes_ = tuple(f"f{j + 1}" for j in range(codes.shape[1]))
        table = DecisionTable(
            object_ids=tuple(f"r{i + 1}" for i in range(codes.shape[0])),
            attributes=self.attributes_,
            values=tuple(tuple(int(v) for v in row) for row in codes),
            decision=train.labels,
        )
        self.rules_ = lem1_train(table)
        self.fallback_ = train.majority_class()
        return self

    def predict(self, query) -> str:
        if self.rules_ is None or self.binning_ is None or self.fallback_ is None:
            raise ConfigurationError("classifier is not fitted")
        codes = apply_bins(self.binning_, np.asarray(query, float).reshape(1, -1))[0]
        row = {a: int(v) for a, v in zip(self.attributes_, codes)}
        return lem1_predict(self.rules_, row, self.fallback_)


def build_classifier(name: str, **params):
    """Factory keyed by the names the command line accepts."""
    builders = {
        "knn": KNNClassifier,
        "fuzzy_nn": FuzzyNNClassifier,
        "fuzzy_rough_nn": FuzzyRoughNNClassifier,
        "naive_bayes": GaussianNBClassifier,
        "lem1": LEM1Classifier,
    }
    if name not in builders:
        raise ConfigurationError(
            f"unknown classifier {name!r}; choose from {', '.join(CLASSIFIER_NAMES)}"
        )
    try:
        return builders[name](**params)
    except TypeError:
        raise ConfigurationError(f"bad parameters for {name}: {params!r}") from None
