"""End-to-end extractive summarization: tag, train, classify, rank, assemble.

A corpus is a directory of clusters, each holding docs/*.txt (one document
per file) and refs/*.txt (reference summaries).  Training tags sentences by
ROUGE-1 recall against the references; at summarize time a classifier
predicts the relevant set X, the relevant sentences are re-ranked by
aggregate rank measure over a discretized-embedding decision table, and a
greedy packer fills the word budget.  Everything is deterministic: reruns
on identical inputs produce byte-identical outputs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .classifiers import CLASSIFIER_NAMES, TrainingSet, build_classifier
from .discretize import Binning, apply_bins, fit_bins
from .errors import ConfigurationError, DataError, DomainError
from .features import (
    NON_RELEVANT,
    RELEVANT,
    SentenceRecord,
    WordVectors,
    featurize_cluster,
    tokenize,
)
from .rouge import METRICS, RougeScore, rouge_n, score_all
from .rough import DecisionTable, RankScore, rank_objects

RANKING_MODES = ("none", "pawlak", "aggregate")
REPORT_SECTIONS = ("unranked", "ranked", "percent_change")


@dataclass(frozen=True)
class PipelineConfig:
    """One summarization run: classifier choice, ranking mode, budget."""

    classifier: str = "knn"
    ranking: str = "aggregate"
    word_budget: int = 100
    top_fraction: float = 0.2
    knn_k: int = 3
    fuzzy_m: float = 2.0
    var_floor: float = 1e-9
    n_bins: int = 3
    binning_strategy: str = "equal_frequency"
    cohesion_mode: str = "mean"
    max_skip: int = 4

    def __post_init__(self) -> None:
        if self.classifier not in CLASSIFIER_NAMES:
            raise ConfigurationError(
                f"unknown classifier {self.classifier!r}; "
                f"choose from {', '.join(CLASSIFIER_NAMES)}"
            )
        if self.ranking not in RANKING_MODES:
            raise ConfigurationError(
                f"unknown ranking mode {self.ranking!r}; "
                f"choose from {', '.join(RANKING_MODES)}"
            )
        if self.word_budget < 1:
            raise ConfigurationError("word budget must be positive")
        if not 0.0 < self.top_fraction < 1.0:
            raise ConfigurationError("top_fraction must lie strictly in (0,1)")
        if self.knn_k < 1:
            raise ConfigurationError("k must be positive")
        if self.fuzzy_m <= 1.0:
            raise ConfigurationError("m must exceed 1")
        if self.max_skip < 0:
            raise ConfigurationError("max_skip must be nonnegative")


@dataclass(frozen=True)
class ExperimentConfig:
    """Grid run over several classifiers, ranked and unranked."""

    classifiers: tuple[str, ...] = CLASSIFIER_NAMES
    word_budget: int = 100
    top_fraction: float = 0.2
    knn_k: int = 3
    fuzzy_m: float = 2.0
    var_floor: float = 1e-9
    n_bins: int = 3
    binning_strategy: str = "equal_frequency"
    cohesion_mode: str = "mean"
    max_skip: int = 4

    def __post_init__(self) -> None:
        if not self.classifiers:
            raise ConfigurationError("at least one classifier is required")
        for name in self.classifiers:
            if name not in CLASSIFIER_NAMES:
                raise ConfigurationError(f"unknown classifier {name!r}")

    def pipeline_config(self, classifier: str, ranking: str) -> PipelineConfig:
        return PipelineConfig(
            classifier=classifier,
            ranking=ranking,
            word_budget=self.word_budget,
            top_fraction=self.top_fraction,
            knn_k=self.knn_k,
            fuzzy_m=self.fuzzy_m,
            var_floor=self.var_floor,
            n_bins=self.n_bins,
            binning_strategy=self.binning_strategy,
            cohesion_mode=self.cohesion_mode,
            max_skip=self.max_skip,
        )


@dataclass
class Cluster:
    cluster_id: str
    docs: dict[str, str]
    refs: tuple[str, ...]


@dataclass
class SummaryResult:
    """Selected sentences plus enough diagnostics to audit the run."""

    cluster_id: str
    selected_ids: tuple[str, ...]
    ranked_ids: tuple[str, ...]
    relevant_ids: tuple[str, ...]
    summary_text: str
    word_count: int
    word_budget: int
    scores: dict[str, Fraction] | None = None
    used_fallback: bool = False
    notes: tuple[str, ...] = ()
    rouge: dict[str, RougeScore] | None = None

    def __post_init__(self) -> None:
        if self.word_count > self.word_budget:
            raise DataError("summary exceeds its word budget")
        if len(set(self.selected_ids)) != len(self.selected_ids):
            raise DataError("duplicate sentence selected")
        if self.word_count != len(self.summary_text.split()):
            raise DataError("word count disagrees with summary text")


def list_clusters(root) -> list[str]:
    """Sorted cluster directory names under the corpus root."""
    names = []
    for entry in sorted(os.listdir(root)):
        if os.path.isdir(os.path.join(root, entry, "docs")):
            names.append(entry)
    if not names:
        raise DataError(f"{root}: no cluster directories with docs/ found")
    return names


def _read_text_dir(path) -> list[tuple[str, str]]:
    if not os.path.isdir(path):
        return []
    out = []
    for name in sorted(os.listdir(path)):
        if not name.endswith(".txt"):
            continue
        with open(os.path.join(path, name), encoding="utf-8") as fh:
            out.append((name[: -len(".txt")], fh.read()))
    return out


def load_cluster(root, cluster_id: str) -> Cluster:
    base = os.path.join(root, cluster_id)
    docs = _read_text_dir(os.path.join(base, "docs"))
    if not docs:
        raise DataError(f"{base}/docs: no .txt documents")
    refs = _read_text_dir(os.path.join(base, "refs"))
    return Cluster(
        cluster_id=cluster_id,
        docs=dict(docs),
        refs=tuple(text for _, text in refs),
    )


def load_corpus(root) -> list[Cluster]:
    return [load_cluster(root, cid) for cid in list_clusters(root)]


def featurize(
    cluster: Cluster,
    vectors: WordVectors,
    sentiment_lexicon=None,
    noun_lexicon=None,
    cohesion_mode: str = "mean",
) -> list[SentenceRecord]:
    return featurize_cluster(
        cluster.cluster_id,
        cluster.docs,
        vectors,
        sentiment_lexicon=sentiment_lexicon,
        noun_lexicon=noun_lexicon,
        cohesion_mode=cohesion_mode,
    )


def tag_training_sentences(
    records: list[SentenceRecord], references, top_fraction: float = 0.2
) -> list[SentenceRecord]:
    """Label the ceil(top_fraction * S) sentences with the highest ROUGE-1
    recall against the references relevant, the rest non-relevant.  Ties at
    the cutoff go to the earlier cluster position."""
    if not references:
        raise ConfigurationError("training labels need at least one reference")
    if not 0.0 < top_fraction < 1.0:
        raise ConfigurationError("top_fraction must lie strictly in (0,1)")
    if not records:
        return records
    ref_tokens = [tokenize(r) for r in references]
    recalls = [rouge_n(r.tokens, ref_tokens, 1).recall for r in records]
    order = sorted(range(len(records)), key=lambda i: (-recalls[i], i))
    n_top = math.ceil(top_fraction * len(records))
    top = set(order[:n_top])
    for i, record in enumerate(records):
        record.label = RELEVANT if i in top else NON_RELEVANT
    return records


def build_training_set(records: list[SentenceRecord]) -> TrainingSet:
    if not records:
        raise DataError("no training sentences")
    if any(r.label is None for r in records):
        raise DataError("unlabeled sentence in training data")
    return TrainingSet(
        features=np.vstack([r.features for r in records]),
        labels=tuple(r.label for r in records),
    )


def make_classifier(config: PipelineConfig):
    params = {
        "knn": {"k": config.knn_k},
        "fuzzy_nn": {"k": config.knn_k, "m": config.fuzzy_m},
        "fuzzy_rough_nn": {"k": config.knn_k},
        "naive_bayes": {"var_floor": config.var_floor},
        "lem1": {"n_bins": config.n_bins, "strategy": config.binning_strategy},
    }
    return build_classifier(config.classifier, **params[config.classifier])


def train_on_corpus(
    train_clusters: list[Cluster],
    vectors: WordVectors,
    config: PipelineConfig,
    sentiment_lexicon=None,
    noun_lexicon=None,
):
    """Tag every training cluster and fit the configured classifier on the
    pooled sentences."""
    pooled: list[SentenceRecord] = []
    for cluster in train_clusters:
        records = featurize(
            cluster,
            vectors,
            sentiment_lexicon=sentiment_lexicon,
            noun_lexicon=noun_lexicon,
            cohesion_mode=config.cohesion_mode,
        )
        tag_training_sentences(records, cluster.refs, config.top_fraction)
        pooled.extend(records)
    train = build_training_set(pooled)
    return make_classifier(config).fit(train.features, train.labels)


def classify_records(records: list[SentenceRecord], classifier) -> frozenset[int]:
    """Predict a label for every record in place; return predicted-relevant
    indices."""
    relevant = set()
    for i, record in enumerate(records):
        record.label = classifier.predict(record.features)
        if record.label == RELEVANT:
            relevant.add(i)
    return frozenset(relevant)


def build_decision_system(
    records: list[SentenceRecord],
    binning: Binning | None = None,
    n_bins: int = 3,
    strategy: str = "equal_frequency",
) -> tuple[DecisionTable, Binning]:
    """Symbolic table over discretized embedding dimensions e1..eD with the
    classifier-assigned labels as decision."""
    if not records:
        raise DataError("no sentences to build a decision system from")
    if any(r.label is None for r in records):
        raise DataError("decision system needs labels on every sentence")
    matrix = np.vstack([r.embedding for r in records])
    if binning is None:
        binning = fit_bins(matrix, n_bins=n_bins, strategy=strategy)
    codes = apply_bins(binning, matrix)
    table = DecisionTable(
        object_ids=tuple(r.sentence_id for r in records),
        attributes=tuple(f"e{j + 1}" for j in range(codes.shape[1])),
        values=tuple(tuple(int(v) for v in row) for row in codes),
        decision=tuple(r.label for r in records),
    )
    return table, binning


def rank_post_process(
    table: DecisionTable, relevant, measure: str = "aggregate"
) -> list[tuple[int, RankScore]]:
    """Rank the relevant sentences by rank measure against their own set,
    descending, earlier row on ties."""
    members = frozenset(relevant)
    if not members:
        raise DomainError("relevant set is empty")
    ranked = rank_objects(table, table.attributes, members, measure=measure)
    return [(i, score) for i, score in ranked if i in members]


def assemble_summary(
    ranked_records: list[SentenceRecord],
    word_budget: int,
    cluster_id: str = "",
    scores: dict[str, Fraction] | None = None,
    relevant_ids: tuple[str, ...] = (),
    used_fallback: bool = False,
    notes: tuple[str, ...] = (),
) -> SummaryResult:
    """Greedy packer: walk the ranked list, keep any sentence that still fits
    the budget, then emit the kept ones in document order."""
    if word_budget < 1:
        raise ConfigurationError("word budget must be positive")
    chosen: list[SentenceRecord] = []
    running = 0
    for record in ranked_records:
        if running + record.n_words <= word_budget:
            chosen.append(record)
            running += record.n_words
    chosen.sort(key=lambda r: (r.doc_id, r.index_in_doc))
    text = " ".join(r.text for r in chosen)
    if not chosen:
        notes = notes + ("empty summary: budget below every sentence length",)
    return SummaryResult(
        cluster_id=cluster_id,
        selected_ids=tuple(r.sentence_id for r in chosen),
        ranked_ids=tuple(r.sentence_id for r in ranked_records),
        relevant_ids=relevant_ids,
        summary_text=text,
        word_count=running,
        word_budget=word_budget,
        scores=scores,
        used_fallback=used_fallback,
        notes=notes,
    )


def summarize_cluster(
    cluster: Cluster,
    records: list[SentenceRecord],
    classifier,
    config: PipelineConfig,
) -> SummaryResult:
    """Classify, optionally re-rank the relevant set, and pack the budget."""
    relevant = classify_records(records, classifier)
    notes: tuple[str, ...] = ()
    used_fallback = False
    scores: dict[str, Fraction] | None = None
    if not relevant:
        candidates = list(range(len(records)))
        used_fallback = True
        notes = (
            "classifier marked no sentence relevant: fell back to document order",
        )
    elif config.ranking == "none":
        candidates = sorted(relevant)
    else:
        table, _ = build_decision_system(
            records, n_bins=config.n_bins, strategy=config.binning_strategy
        )
        ranked = rank_post_process(table, relevant, measure=config.ranking)
        candidates = [i for i, _ in ranked]
        scores = {records[i].sentence_id: s.value for i, s in ranked}
    return assemble_summary(
        [records[i] for i in candidates],
        config.word_budget,
        cluster_id=cluster.cluster_id,
        scores=scores,
        relevant_ids=tuple(records[i].sentence_id for i in sorted(relevant)),
        used_fallback=used_fallback,
        notes=notes,
    )


def evaluate_summary(
    summary_text: str, references, max_skip: int = 4
) -> dict[str, RougeScore]:
    if not references:
        raise DomainError("evaluation needs at least one reference")
    ref_tokens = [tokenize(r) for r in references]
    return score_all(tokenize(summary_text), ref_tokens, max_skip=max_skip)


def _percent_change(unranked: float, ranked: float) -> float:
    if ranked == unranked:
        return 0.0
    if unranked == 0.0:
        return 0.0
    return 100.0 * (ranked - unranked) / unranked


def summarize_corpus(
    train_clusters: list[Cluster],
    test_clusters: list[Cluster],
    vectors: WordVectors,
    config: PipelineConfig,
    sentiment_lexicon=None,
    noun_lexicon=None,
) -> tuple[dict[str, SummaryResult], str]:
    """Train once, summarize every test cluster in both ranked and unranked
    mode, and build a per-cluster report.

    Returns the results for the requested ranking mode keyed by cluster id,
    plus the report CSV text comparing the two modes.
    """
    classifier = train_on_corpus(
        train_clusters,
        vectors,
        config,
        sentiment_lexicon=sentiment_lexicon,
        noun_lexicon=noun_lexicon,
    )
    unranked_cfg = replace(config, ranking="none")
    ranked_cfg = config if config.ranking != "none" else replace(config, ranking="aggregate")
    requested: dict[str, SummaryResult] = {}
    lines = ["cluster,metric,unranked_recall,ranked_recall,percent_change"]
    sums: dict[str, list[float]] = {m: [0.0, 0.0] for m in METRICS}
    for cluster in test_clusters:
        if not cluster.refs:
            raise DataError(
                f"cluster {cluster.cluster_id}: no reference summaries to score"
            )
        records = featurize(
            cluster,
            vectors,
            sentiment_lexicon=sentiment_lexicon,
            noun_lexicon=noun_lexicon,
            cohesion_mode=config.cohesion_mode,
        )
        both: dict[str, SummaryResult] = {}
        for mode_name, mode_cfg in (("unranked", unranked_cfg), ("ranked", ranked_cfg)):
            result = summarize_cluster(cluster, records, classifier, mode_cfg)
            result.rouge = evaluate_summary(
                result.summary_text, cluster.refs, max_skip=config.max_skip
            )
            both[mode_name] = result
        requested[cluster.cluster_id] = (
            both["unranked"] if config.ranking == "none" else both["ranked"]
        )
        for metric in METRICS:
            u = both["unranked"].rouge[metric].recall
            r = both["ranked"].rouge[metric].recall
            sums[metric][0] += u
            sums[metric][1] += r
            lines.append(
                f"{cluster.cluster_id},{metric},{u:.6f},{r:.6f},"
                f"{_percent_change(u, r):.6f}"
            )
    n = len(test_clusters)
    for metric in METRICS:
        u, r = sums[metric][0] / n, sums[metric][1] / n
        lines.append(f"mean,{metric},{u:.6f},{r:.6f},{_percent_change(u, r):.6f}")
    return requested, "\n".join(lines) + "\n"


def write_outputs(out_dir, results: dict[str, SummaryResult], report: str) -> None:
    """Write every summary and the report in one pass, after all computation
    succeeded; nothing is written if the caller errors out earlier."""
    os.makedirs(out_dir, exist_ok=True)
    for cluster_id, result in results.items():
        path = os.path.join(out_dir, f"{cluster_id}.summary.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(result.summary_text + "\n")
    with open(os.path.join(out_dir, "report.csv"), "w", encoding="utf-8") as fh:
        fh.write(report)


@dataclass(frozen=True)
class ExperimentReport:
    """metric x classifier grid, one block per section."""

    classifiers: tuple[str, ...]
    metrics: tuple[str, ...]
    values: dict[tuple[str, str, str], float]
    n_clusters: int

    def cell(self, section: str, metric: str, classifier: str) -> float:
        return self.values[(section, metric, classifier)]

    def to_csv(self) -> str:
        lines = ["section,metric," + ",".join(self.classifiers)]
        for section in REPORT_SECTIONS:
            for metric in self.metrics:
                row = [
                    f"{self.values[(section, metric, c)]:.6f}"
                    for c in self.classifiers
                ]
                lines.append(f"{section},{metric}," + ",".join(row))
        return "\n".join(lines) + "\n"


def run_experiment(
    train_clusters: list[Cluster],
    test_clusters: list[Cluster],
    vectors: WordVectors,
    config: ExperimentConfig,
    sentiment_lexicon=None,
    noun_lexicon=None,
) -> ExperimentReport:
    """Mean ROUGE recall over test clusters for every classifier, with and
    without rank post-processing, plus the percent change between the two."""
    if not test_clusters:
        raise DataError("no test clusters")
    values: dict[tuple[str, str, str], float] = {}
    for name in config.classifiers:
        train_cfg = config.pipeline_config(name, "aggregate")
        classifier = train_on_corpus(
            train_clusters,
            vectors,
            train_cfg,
            sentiment_lexicon=sentiment_lexicon,
            noun_lexicon=noun_lexicon,
        )
        totals = {("unranked", m): 0.0 for m in METRICS}
        totals.update({("ranked", m): 0.0 for m in METRICS})
        for cluster in test_clusters:
            if not cluster.refs:
                raise DataError(
                    f"cluster {cluster.cluster_id}: no reference summaries to score"
                )
            records = featurize(
                cluster,
                vectors,
                sentiment_lexicon=sentiment_lexicon,
                noun_lexicon=noun_lexicon,
                cohesion_mode=config.cohesion_mode,
            )
            for section, ranking in (("unranked", "none"), ("ranked", "aggregate")):
                result = summarize_cluster(
                    cluster,
                    list(records),
                    classifier,
                    config.pipeline_config(name, ranking),
                )
                rouge = evaluate_summary(
                    result.summary_text, cluster.refs, max_skip=config.max_skip
                )
                for metric in METRICS:
                    totals[(section, metric)] += rouge[metric].recall
        n = len(test_clusters)
        for metric in METRICS:
            u = totals[("unranked", metric)] / n
            r = totals[("ranked", metric)] / n
            values[("unranked", metric, name)] = u
            values[("ranked", metric, name)] = r
            values[("percent_change", metric, name)] = _percent_change(u, r)
    return ExperimentReport(
        classifiers=tuple(config.classifiers),
        metrics=METRICS,
        values=values,
        n_clusters=len(test_clusters),
    )
