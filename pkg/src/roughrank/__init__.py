"""Rough-set rank measures with an extractive summarization pipeline.

The core is exact-rational scoring of objects in a decision table by how
much of a target set their indiscernibility blocks capture; around it sit
sentence features, desk-scale classifiers, ROUGE scoring, and a pipeline
that re-ranks classifier-selected sentences before packing a word budget.
"""

from .classifiers import (
    CLASSIFIER_NAMES,
    FuzzyNNClassifier,
    FuzzyRoughNNClassifier,
    GaussianNBClassifier,
    KNNClassifier,
    LEM1Classifier,
    Rule,
    RuleSet,
    TrainingSet,
    build_classifier,
    frnn_predict,
    fuzzy_nn_predict,
    knn_predict,
    lem1_predict,
    lem1_train,
    naive_bayes_predict,
    naive_bayes_train,
)
from .cli import RunConfig, build_parser, entrypoint, main
from .discretize import Binning, apply_bins, fit_bins, load_binning, save_binning
from .errors import (
    ConfigurationError,
    DataError,
    DomainError,
    InternalError,
    RoughRankError,
)
from .features import (
    NON_RELEVANT,
    RELEVANT,
    SentenceRecord,
    WordVectors,
    cohesion_score,
    embed_sentence,
    featurize_cluster,
    load_noun_lexicon,
    load_sentiment_lexicon,
    load_word_vectors,
    noun_presence,
    numeric_presence,
    sentence_position_score,
    sentiment_score,
    split_sentences,
    tf_isf_score,
    tokenize,
)
from .pipeline import (
    Cluster,
    ExperimentConfig,
    ExperimentReport,
    PipelineConfig,
    SummaryResult,
    assemble_summary,
    build_decision_system,
    build_training_set,
    evaluate_summary,
    list_clusters,
    load_cluster,
    load_corpus,
    rank_post_process,
    run_experiment,
    summarize_cluster,
    summarize_corpus,
    tag_training_sentences,
    train_on_corpus,
    write_outputs,
)
from .rough import (
    DecisionTable,
    Partition,
    RankScore,
    aggregate_rank_measure,
    boundary_region,
    indiscernibility_partition,
    lower_approximation,
    membership_pawlak,
    rank_measure,
    rank_objects,
    upper_approximation,
)
from .rouge import RougeScore, lcs_length, rouge_l, rouge_n, rouge_su, score_all

__version__ = "0.1.0"
