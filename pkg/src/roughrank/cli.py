"""Command line front end for the package.

Four subcommands: ``rank`` scores a decision-table CSV against a target
class, ``demo-example1`` walks the bundled six-object example, ``summarize``
runs the full train-classify-rank-pack pipeline over a corpus tree, and
``evaluate`` prints ROUGE scores for a summary file against a directory of
references.

Exit codes: 0 success, 2 configuration error (bad flags, bad names, bad
config keys), 3 I/O error, 4 data or domain error (malformed files, empty
target sets).  Commands compute everything before writing anything, so a
failing run leaves no partial output files.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .classifiers import CLASSIFIER_NAMES
from .discretize import STRATEGIES
from .errors import ConfigurationError, DataError, DomainError
from .features import (
    COHESION_MODES,
    load_noun_lexicon,
    load_sentiment_lexicon,
    load_word_vectors,
    tokenize,
)
from .pipeline import (
    RANKING_MODES,
    PipelineConfig,
    load_corpus,
    summarize_corpus,
    write_outputs,
)
from .rough import (
    DecisionTable,
    _parse_symbol,
    aggregate_rank_measure,
    indiscernibility_partition,
    rank_measure,
    rank_objects,
)
from .rouge import METRICS, rouge_l, rouge_n, rouge_su

# the worked six-object example that the demo subcommand reproduces
_EXAMPLE1_IDS = ("x1", "x2", "x3", "x4", "x5", "x6")
_EXAMPLE1_ATTRS = ("a1", "a2", "a3")
_EXAMPLE1_VALUES = (
    (0, 1, 1),
    (0, 1, 0),
    (0, 0, 0),
    (1, 1, 1),
    (0, 1, 0),
    (0, 2, 1),
)
_EXAMPLE1_TARGET = ("x2", "x5")

# metric spelled with its default skip distance in some write-ups
_METRIC_ALIASES = {"rougeSU4": "rougeSU"}

_SUMMARIZE_DEFAULTS = {
    "classifier": "knn",
    "rank": "aggregate",
    "words": 100,
    "top_fraction": 0.2,
    "k": 3,
    "m": 2.0,
    "bins": 3,
    "strategy": "equal_frequency",
    "cohesion": "mean",
    "max_skip": 4,
}
# config key -> (argparse dest, cast applied to config-file strings)
_SUMMARIZE_OPTIONS = {
    "classifier": ("classifier", str),
    "rank": ("rank_mode", str),
    "words": ("words", int),
    "top_fraction": ("top_fraction", float),
    "k": ("k", int),
    "m": ("m", float),
    "bins": ("bins", int),
    "strategy": ("strategy", str),
    "cohesion": ("cohesion", str),
    "max_skip": ("max_skip", int),
}

_EVALUATE_DEFAULTS = {"metrics": ",".join(METRICS), "skip": 4}
_EVALUATE_OPTIONS = {
    "metrics": ("metrics", str),
    "skip": ("skip", int),
}


@dataclass(frozen=True)
class RunConfig:
    """One summarize invocation after merging flags over the config file
    over built-in defaults.

    Numeric ranges are enforced when :meth:`pipeline_config` builds the
    pipeline configuration, which happens before any input is read.
    """

    corpus: str
    train: str
    glove: str
    out: str
    lexicon: str | None = None
    nouns: str | None = None
    classifier: str = "knn"
    rank: str = "aggregate"
    words: int = 100
    top_fraction: float = 0.2
    k: int = 3
    m: float = 2.0
    bins: int = 3
    strategy: str = "equal_frequency"
    cohesion: str = "mean"
    max_skip: int = 4

    def pipeline_config(self) -> PipelineConfig:
        return PipelineConfig(
            classifier=self.classifier,
            ranking=self.rank,
            word_budget=self.words,
            top_fraction=self.top_fraction,
            knn_k=self.k,
            fuzzy_m=self.m,
            n_bins=self.bins,
            binning_strategy=self.strategy,
            cohesion_mode=self.cohesion,
            max_skip=self.max_skip,
        )


def example1_table() -> DecisionTable:
    """The demo's information system: six objects, three ternary attributes."""
    return DecisionTable.from_rows(_EXAMPLE1_IDS, _EXAMPLE1_ATTRS, _EXAMPLE1_VALUES)


def _two_decimals(value: Fraction) -> str:
    """Render a score the way the worked example prints it: truncated to
    two decimals (2/3 shows as 0.66, not 0.67) with trailing zeros dropped.
    """
    hundredths = (value.numerator * 100) // value.denominator
    text = f"{hundredths // 100}.{hundredths % 100:02d}"
    return text.rstrip("0").rstrip(".")


def _read_config_file(path) -> dict[str, str]:
    """Parse ``key=value`` lines; blank lines and # comments are skipped."""
    pairs: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DataError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            pairs[key.strip()] = value.strip()
    return pairs


def _merge_options(args, options, defaults) -> dict:
    """Resolve each option as flag value, else config-file value, else default."""
    file_config = _read_config_file(args.config) if args.config else {}
    unknown = set(file_config) - set(options)
    if unknown:
        raise ConfigurationError(
            f"unknown config key(s): {', '.join(sorted(unknown))}; "
            f"expected {', '.join(sorted(options))}"
        )
    resolved = {}
    for key, (dest, cast) in options.items():
        flag_value = getattr(args, dest)
        if flag_value is not None:
            resolved[key] = flag_value
        elif key in file_config:
            try:
                resolved[key] = cast(file_config[key])
            except ValueError:
                raise ConfigurationError(
                    f"config key {key}: cannot read {file_config[key]!r} "
                    f"as {cast.__name__}"
                ) from None
        else:
            resolved[key] = defaults[key]
    return resolved


def _select_column(table: DecisionTable, name: str):
    """Column of symbols for an attribute name or the decision column."""
    if name == "decision":
        if table.decision is None:
            raise ConfigurationError("table has no decision column")
        return table.decision
    if name in table.attributes:
        j = table.attributes.index(name)
        return tuple(row[j] for row in table.values)
    known = ", ".join(table.attributes)
    if table.decision is not None:
        known += ", decision"
    raise ConfigurationError(f"unknown column {name!r}; table has {known}")


def _parse_attr_list(table: DecisionTable, spec: str | None):
    if spec is None:
        return table.attributes
    attrs = tuple(name.strip() for name in spec.split(",") if name.strip())
    if not attrs:
        raise ConfigurationError("--attrs must name at least one attribute")
    unknown = [name for name in attrs if name not in table.attributes]
    if unknown:
        raise ConfigurationError(f"unknown attribute(s): {', '.join(unknown)}")
    return attrs


def _format_block(table: DecisionTable, block) -> str:
    return "{" + ",".join(table.object_ids[i] for i in sorted(block)) + "}"


def cmd_rank(args) -> int:
    table = DecisionTable.from_csv(args.table)
    column = _select_column(table, args.class_col)
    wanted = _parse_symbol(args.class_value)
    members = [i for i, symbol in enumerate(column) if symbol == wanted]
    if not members:
        raise DomainError(
            f"no object has {args.class_col} = {args.class_value}; "
            "the target set is empty"
        )
    attrs = _parse_attr_list(table, args.attrs)
    lines = ["object,score,exact"]
    for index, score in rank_objects(table, attrs, members, measure=args.measure):
        value = score.value
        lines.append(f"{table.object_ids[index]},{_two_decimals(value)},{value}")
    print("\n".join(lines))
    return 0


def cmd_demo_example1(args) -> int:
    table = example1_table()
    attrs = table.attributes
    target = frozenset(
        i for i, oid in enumerate(table.object_ids) if oid in _EXAMPLE1_TARGET
    )
    out = []

    out.append("Table 1: six objects, three ternary attributes")
    out.append("id," + ",".join(attrs))
    for i, oid in enumerate(table.object_ids):
        out.append(oid + "," + ",".join(str(cell) for cell in table.values[i]))
    out.append("")

    partition = indiscernibility_partition(table, attrs)
    blocks = sorted(partition.blocks, key=min)
    out.append(
        "Partition by {%s}: %s"
        % (",".join(attrs), " ".join(_format_block(table, b) for b in blocks))
    )
    out.append("Target X = " + _format_block(table, target))
    out.append("")

    # x1's aggregate score, spelled out one attribute at a time
    terms = []
    for attr in attrs:
        block = indiscernibility_partition(table, (attr,)).block_containing(0)
        terms.append(f"{len(block & target)}/{len(target)}")
    aggregate = aggregate_rank_measure(table, attrs, 0, target)
    out.append("Aggregate score of x1 against X:")
    out.append(f"(1/{len(attrs)})({' + '.join(terms)}) = {aggregate.value}")
    out.append("")

    out.append("Table 2: rank and aggregate scores against X")
    out.append("id,rank,aggregate,exact")
    for i, oid in enumerate(table.object_ids):
        rank = rank_measure(table, attrs, i, target)
        aggregate = aggregate_rank_measure(table, attrs, i, target)
        out.append(
            f"{oid},{_two_decimals(rank.value)},"
            f"{_two_decimals(aggregate.value)},{aggregate.value}"
        )
    out.append("")

    order = rank_objects(table, attrs, target, measure="aggregate")
    out.append(
        "Aggregate ranking: " + ", ".join(table.object_ids[i] for i, _ in order)
    )
    print("\n".join(out))
    return 0


def cmd_summarize(args) -> int:
    resolved = _merge_options(args, _SUMMARIZE_OPTIONS, _SUMMARIZE_DEFAULTS)
    run = RunConfig(
        corpus=args.corpus,
        train=args.train,
        glove=args.glove,
        out=args.out,
        lexicon=args.lexicon,
        nouns=args.nouns,
        **resolved,
    )
    config = run.pipeline_config()

    vectors = load_word_vectors(run.glove)
    sentiment = load_sentiment_lexicon(run.lexicon) if run.lexicon else None
    nouns = load_noun_lexicon(run.nouns) if run.nouns else None
    train_clusters = load_corpus(run.train)
    test_clusters = load_corpus(run.corpus)

    results, report = summarize_corpus(
        train_clusters,
        test_clusters,
        vectors,
        config,
        sentiment_lexicon=sentiment,
        noun_lexicon=nouns,
    )
    write_outputs(run.out, results, report)

    for cluster_id in sorted(results):
        result = results[cluster_id]
        path = os.path.join(run.out, f"{cluster_id}.summary.txt")
        print(
            f"{cluster_id}: {result.word_count} words, "
            f"{len(result.selected_ids)} sentences -> {path}"
        )
        for note in result.notes:
            print(f"{cluster_id}: note: {note}", file=sys.stderr)
    print(f"report: {os.path.join(run.out, 'report.csv')}")
    return 0


def _read_reference_dir(path) -> list[str]:
    names = sorted(name for name in os.listdir(path) if name.endswith(".txt"))
    if not names:
        raise DataError(f"no .txt reference files in {path}")
    texts = []
    for name in names:
        with open(os.path.join(path, name), encoding="utf-8") as handle:
            texts.append(handle.read())
    return texts


def _parse_metric_list(spec: str) -> list[str]:
    metrics = []
    for raw in spec.split(","):
        name = raw.strip()
        if not name:
            continue
        name = _METRIC_ALIASES.get(name, name)
        if name not in METRICS:
            raise ConfigurationError(
                f"unknown metric {raw.strip()!r}; choose from {', '.join(METRICS)} "
                "(rougeSU4 is accepted for rougeSU)"
            )
        if name not in metrics:
            metrics.append(name)
    if not metrics:
        raise ConfigurationError("no metrics requested")
    return metrics


def _compute_metric(metric: str, candidate, references, max_skip: int):
    if metric == "rouge1":
        return rouge_n(candidate, references, n=1)
    if metric == "rouge2":
        return rouge_n(candidate, references, n=2)
    if metric == "rougeL":
        return rouge_l(candidate, references)
    return rouge_su(candidate, references, max_skip=max_skip)


def cmd_evaluate(args) -> int:
    resolved = _merge_options(args, _EVALUATE_OPTIONS, _EVALUATE_DEFAULTS)
    metrics = _parse_metric_list(resolved["metrics"])
    skip = resolved["skip"]
    if skip < 0:
        raise ConfigurationError("skip must be nonnegative")

    with open(args.summary, encoding="utf-8") as handle:
        summary_text = handle.read()
    references = _read_reference_dir(args.refs)

    candidate = tokenize(summary_text)
    reference_tokens = [tokenize(text) for text in references]
    lines = ["metric,recall,precision,f1"]
    for metric in metrics:
        score = _compute_metric(metric, candidate, reference_tokens, skip)
        lines.append(
            f"{metric},{score.recall:.6f},{score.precision:.6f},{score.f1:.6f}"
        )
    print("\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roughrank",
        description=(
            "Rank-measure scoring over decision tables and an extractive "
            "multi-document summarization pipeline built on it."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rank = sub.add_parser(
        "rank", help="score every object of a decision-table CSV against a target class"
    )
    rank.add_argument(
        "--table",
        required=True,
        help="decision table CSV with header id,<attr>,...[,decision]",
    )
    rank.add_argument(
        "--class-col",
        required=True,
        help="column whose value picks the target set X (an attribute or 'decision')",
    )
    rank.add_argument(
        "--class-value", required=True, help="symbol selecting the members of X"
    )
    rank.add_argument(
        "--attrs",
        help="comma-separated attribute subset to condition on (default: all attributes)",
    )
    rank.add_argument(
        "--measure",
        choices=("rank", "aggregate", "pawlak"),
        default="aggregate",
        help="scoring measure (default: aggregate)",
    )
    rank.set_defaults(func=cmd_rank)

    demo = sub.add_parser(
        "demo-example1",
        help="walk the bundled six-object example end to end",
    )
    demo.set_defaults(func=cmd_demo_example1)

    summarize = sub.add_parser(
        "summarize", help="train on one corpus tree and summarize another"
    )
    summarize.add_argument(
        "--corpus",
        required=True,
        help="corpus to summarize: <root>/<cluster>/docs/*.txt and refs/*.txt",
    )
    summarize.add_argument(
        "--train", required=True, help="training corpus root with the same layout"
    )
    summarize.add_argument(
        "--glove",
        required=True,
        help="word vector text file: token followed by its coordinates, one per line",
    )
    summarize.add_argument(
        "--lexicon",
        help="optional sentiment lexicon TSV: token, positive score, negative score",
    )
    summarize.add_argument(
        "--nouns", help="optional noun lexicon, one lowercase token per line"
    )
    summarize.add_argument(
        "--out", required=True, help="output directory for summaries and report.csv"
    )
    summarize.add_argument(
        "--config",
        help="optional key=value config file; flags override it, it overrides defaults",
    )
    summarize.add_argument(
        "--classifier",
        choices=CLASSIFIER_NAMES,
        help="sentence classifier (default: knn)",
    )
    summarize.add_argument(
        "--rank",
        dest="rank_mode",
        choices=RANKING_MODES,
        help="post-classification ranking measure (default: aggregate)",
    )
    summarize.add_argument(
        "--words", type=int, help="summary word budget (default: 100)"
    )
    summarize.add_argument(
        "--top-fraction",
        type=float,
        help="fraction of sentences tagged relevant during training (default: 0.2)",
    )
    summarize.add_argument(
        "--k",
        type=int,
        help="neighbour count for knn, fuzzy_nn and fuzzy_rough_nn (default: 3)",
    )
    summarize.add_argument(
        "--m",
        type=float,
        help="fuzzy_nn membership exponent, must exceed 1 (default: 2.0)",
    )
    summarize.add_argument(
        "--bins",
        type=int,
        help="discretization bins for lem1 and the decision system (default: 3)",
    )
    summarize.add_argument(
        "--strategy",
        choices=STRATEGIES,
        help="discretization strategy (default: equal_frequency)",
    )
    summarize.add_argument(
        "--cohesion",
        choices=COHESION_MODES,
        help="cohesion aggregation over pairwise similarities (default: mean)",
    )
    summarize.add_argument(
        "--max-skip",
        type=int,
        help="skip distance for the report's rougeSU column (default: 4)",
    )
    summarize.set_defaults(func=cmd_summarize)

    evaluate = sub.add_parser(
        "evaluate", help="score one summary file against a directory of references"
    )
    evaluate.add_argument(
        "--summary", required=True, help="candidate summary text file"
    )
    evaluate.add_argument(
        "--refs", required=True, help="directory holding reference summaries (*.txt)"
    )
    evaluate.add_argument(
        "--config",
        help="optional key=value config file; flags override it, it overrides defaults",
    )
    evaluate.add_argument(
        "--metrics",
        help=(
            "comma-separated metrics out of rouge1,rouge2,rougeL,rougeSU "
            "(default: all four; rougeSU4 is accepted for rougeSU)"
        ),
    )
    evaluate.add_argument(
        "--skip", type=int, help="max skip distance for rougeSU (default: 4)"
    )
    evaluate.set_defaults(func=cmd_evaluate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DataError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entrypoint() -> None:
    sys.exit(main())
