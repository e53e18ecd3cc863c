"""Run the classifier x ranking grid over a corpus tree and print the report.

The grid holds mean ROUGE recall over the test clusters for every
classifier, once without rank post-processing and once with aggregate
ranking, plus the percent change between the two.  With no flags it runs
over the bundled synthetic corpus:

    python3 scripts/run_experiment.py
    python3 scripts/run_experiment.py --classifiers knn,naive_bayes --words 60
    python3 scripts/run_experiment.py --data /path/to/corpus --out grid.csv
"""

import argparse
import os
import sys

from roughrank.classifiers import CLASSIFIER_NAMES
from roughrank.features import (
    load_noun_lexicon,
    load_sentiment_lexicon,
    load_word_vectors,
)
from roughrank.pipeline import ExperimentConfig, load_corpus, run_experiment

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEFAULT_DATA = os.path.join(REPO_ROOT, "data", "synthetic")


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--data",
        default=DEFAULT_DATA,
        help="corpus root holding train/, test/, vectors.txt, "
        "sentiment.tsv and nouns.txt (default: the bundled synthetic corpus)",
    )
    parser.add_argument(
        "--classifiers",
        default=",".join(CLASSIFIER_NAMES),
        help="comma-separated classifier names (default: all five)",
    )
    parser.add_argument("--words", type=int, default=100, help="summary word budget")
    parser.add_argument(
        "--out", help="also write the grid CSV to this file (default: stdout only)"
    )
    return parser.parse_args()


def main():
    args = parse_args()
    names = tuple(n.strip() for n in args.classifiers.split(",") if n.strip())
    config = ExperimentConfig(classifiers=names, word_budget=args.words)

    vectors = load_word_vectors(os.path.join(args.data, "vectors.txt"))
    sentiment_path = os.path.join(args.data, "sentiment.tsv")
    nouns_path = os.path.join(args.data, "nouns.txt")
    sentiment = (
        load_sentiment_lexicon(sentiment_path)
        if os.path.exists(sentiment_path)
        else None
    )
    nouns = load_noun_lexicon(nouns_path) if os.path.exists(nouns_path) else None
    train_clusters = load_corpus(os.path.join(args.data, "train"))
    test_clusters = load_corpus(os.path.join(args.data, "test"))

    report = run_experiment(
        train_clusters,
        test_clusters,
        vectors,
        config,
        sentiment_lexicon=sentiment,
        noun_lexicon=nouns,
    )
    csv_text = report.to_csv()
    sys.stdout.write(csv_text)
    print(
        f"# {report.n_clusters} test clusters, budget {args.words} words",
        file=sys.stderr,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        print(f"# wrote {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
