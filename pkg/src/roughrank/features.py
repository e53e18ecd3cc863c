"""Sentence segmentation, tokenization, and the six per-sentence features.

Feature vector layout, in order: position, sentiment, cohesion, tf_isf,
noun_count, numeric_count.  Embeddings are mean-pooled word vectors loaded
from a plain-text file (one line per token).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DataError, DomainError

RELEVANT = "relevant"
NON_RELEVANT = "non_relevant"

FEATURE_NAMES = (
    "position",
    "sentiment",
    "cohesion",
    "tf_isf",
    "noun_count",
    "numeric_count",
)

COHESION_MODES = ("mean", "sum")

# words that end with '.' without ending a sentence
_ABBREVIATIONS = frozenset(
    {
        "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "Rev.", "Gen.", "Sen.", "Rep.",
        "St.", "Mt.", "Jr.", "Sr.", "vs.", "etc.", "e.g.", "i.e.", "cf.",
        "U.S.", "U.K.", "U.N.", "Inc.", "Ltd.", "Corp.", "Co.", "No.",
        "Fig.", "Vol.", "Dept.", "Univ.", "approx.",
        "Jan.", "Feb.", "Mar.", "Apr.", "Jun.", "Jul.", "Aug.", "Sep.",
        "Sept.", "Oct.", "Nov.", "Dec.",
    }
)

_TOKEN_RE = re.compile(r"[^\W_]+")
_NUMERIC_RE = re.compile(r"\d+(\.\d+)?")
_BOUNDARY_RE = re.compile(r"[.!?]+\s+")


def split_sentences(text: str) -> list[str]:
    """Rule-based splitter: break after ./!/? followed by whitespace and an
    uppercase letter or digit, unless the preceding word is a known
    abbreviation.  Empty segments are dropped."""
    pieces: list[str] = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        nxt = text[m.end()] if m.end() < len(text) else ""
        if not (nxt.isupper() or nxt.isdigit()):
            continue
        tail = re.search(r"(\S+)$", text[: m.end()].rstrip())
        if tail and tail.group(1) in _ABBREVIATIONS:
            continue
        pieces.append(text[start : m.end()].strip())
        start = m.end()
    pieces.append(text[start:].strip())
    return [p for p in pieces if p]


def tokenize(sentence: str) -> list[str]:
    """Lowercase and split on non-alphanumeric runs; numbers survive as tokens."""
    return _TOKEN_RE.findall(sentence.lower())


def sentence_position_score(i: int, n: int) -> float:
    """Positional importance 2(N-i)/(N(N+1)) for the i-th of N sentences, 1-based."""
    if not 1 <= i <= n:
        raise DomainError(f"sentence index {i} outside 1..{n}")
    return 2 * (n - i) / (n * (n + 1))


def sentiment_score(tokens, lexicon) -> float:
    """Fraction of tokens the lexicon marks subjective (positive or negative)."""
    if not tokens:
        return 0.0
    hits = 0
    for t in tokens:
        scores = lexicon.get(t)
        if scores is not None and scores[0] != scores[1]:
            hits += 1
    return hits / len(tokens)


def _cosine(u: np.ndarray, v: np.ndarray) -> float:
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v)) / (nu * nv)


def cohesion_score(target: int, embeddings, mode: str = "mean") -> float:
    """Similarity of one sentence to the rest of its document.

    mean averages cosine similarity over the other sentences; sum adds them
    up without normalizing.  A single-sentence document scores 0.
    """
    if mode not in COHESION_MODES:
        raise ConfigurationError(f"unknown cohesion mode {mode!r}")
    if not 0 <= target < len(embeddings):
        raise DomainError(f"target {target} outside document of {len(embeddings)}")
    others = [e for j, e in enumerate(embeddings) if j != target]
    if not others:
        return 0.0
    total = sum(_cosine(embeddings[target], e) for e in others)
    if mode == "sum":
        return total
    return total / len(others)


def tf_isf_score(tokens, corpus_tokens) -> float:
    """Sum over distinct sentence tokens of tf * ln(S / sf), where S is the
    number of sentences in the cluster and sf counts sentences containing
    the token."""
    if not tokens:
        return 0.0
    n_sentences = len(corpus_tokens)
    if n_sentences == 0:
        raise DomainError("empty corpus")
    total = 0.0
    for t in set(tokens):
        sf = sum(1 for sent in corpus_tokens if t in sent)
        if sf == 0:
            raise DomainError(f"token {t!r} missing from its own corpus")
        total += tokens.count(t) * math.log(n_sentences / sf)
    return total


def noun_presence(text: str, tokens, noun_lexicon=None) -> int:
    """Proper-noun count: capitalized words past the first position, plus any
    tokens listed in an optional noun lexicon.  The two counts are added, so
    a lexicon noun that is also capitalized counts twice; callers wanting
    unique nouns should pass one source or the other."""
    count = 0
    words = text.split()
    for pos, word in enumerate(words):
        stripped = word.lstrip("\"'([{<`“‘")
        if pos > 0 and stripped[:1].isupper():
            count += 1
    if noun_lexicon:
        count += sum(1 for t in tokens if t in noun_lexicon)
    return count


def numeric_presence(tokens) -> int:
    """Count of integer or decimal tokens."""
    return sum(1 for t in tokens if _NUMERIC_RE.fullmatch(t))


@dataclass
class WordVectors:
    """token -> fixed-dimension embedding map."""

    vectors: dict[str, np.ndarray]
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DataError("vector dimension must be positive")
        for token, vec in self.vectors.items():
            if vec.shape != (self.dim,):
                raise DataError(f"vector for {token!r} has wrong dimension")

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def get(self, token: str):
        return self.vectors.get(token)

    def __len__(self) -> int:
        return len(self.vectors)


def embed_sentence(tokens, vectors: WordVectors) -> np.ndarray:
    """Mean-pooled embedding; all-out-of-vocabulary sentences map to zero."""
    found = [vectors.get(t) for t in tokens]
    found = [v for v in found if v is not None]
    if not found:
        return np.zeros(vectors.dim)
    return np.mean(found, axis=0)


def load_word_vectors(path) -> WordVectors:
    """Parse `token v1 v2 ... vD` lines, one per token."""
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            token = parts[0]
            try:
                vec = np.array([float(p) for p in parts[1:]], dtype=float)
            except ValueError:
                raise DataError(f"{path}:{line_no}: bad vector component") from None
            if vec.size == 0:
                raise DataError(f"{path}:{line_no}: token without components")
            if dim is None:
                dim = vec.size
            elif vec.size != dim:
                raise DataError(
                    f"{path}:{line_no}: dimension {vec.size}, expected {dim}"
                )
            vectors[token] = vec
    if dim is None:
        raise DataError(f"{path}: no vectors found")
    return WordVectors(vectors=vectors, dim=dim)


def load_sentiment_lexicon(path) -> dict[str, tuple[float, float]]:
    """Parse tab-separated `token<TAB>pos<TAB>neg` lines with scores in [0,1]."""
    lexicon: dict[str, tuple[float, float]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise DataError(f"{path}:{line_no}: expected 3 tab-separated fields")
            token = parts[0]
            try:
                pos, neg = float(parts[1]), float(parts[2])
            except ValueError:
                raise DataError(f"{path}:{line_no}: bad score") from None
            if not (0.0 <= pos <= 1.0 and 0.0 <= neg <= 1.0):
                raise DataError(f"{path}:{line_no}: scores must lie in [0,1]")
            lexicon[token] = (pos, neg)
    return lexicon


def load_noun_lexicon(path) -> frozenset[str]:
    """One noun per line, matched case-insensitively against tokens."""
    nouns = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip().lower()
            if word:
                nouns.add(word)
    return frozenset(nouns)


@dataclass
class SentenceRecord:
    """One sentence with its provenance, features, and embedding."""

    cluster_id: str
    doc_id: str
    index_in_doc: int
    text: str
    tokens: list[str]
    features: np.ndarray
    embedding: np.ndarray
    label: str | None = None

    def __post_init__(self) -> None:
        if self.index_in_doc < 1:
            raise DataError("index_in_doc is 1-based")
        if not np.all(np.isfinite(self.features)):
            raise DataError(f"non-finite feature for {self.sentence_id}")
        if self.label not in (None, RELEVANT, NON_RELEVANT):
            raise DataError(f"unknown label {self.label!r}")

    @property
    def sentence_id(self) -> str:
        return f"{self.doc_id}:{self.index_in_doc}"

    @property
    def n_words(self) -> int:
        return len(self.text.split())


def featurize_cluster(
    cluster_id: str,
    docs: dict[str, str],
    vectors: WordVectors,
    sentiment_lexicon=None,
    noun_lexicon=None,
    cohesion_mode: str = "mean",
) -> list[SentenceRecord]:
    """Split, tokenize, embed, and score every sentence of a cluster.

    docs maps doc_id to raw text; iteration order decides document order.
    tf-isf statistics come from the whole cluster, position and cohesion
    from the sentence's own document.
    """
    if sentiment_lexicon is None:
        sentiment_lexicon = {}
    per_doc: list[tuple[str, list[str], list[list[str]], list[np.ndarray]]] = []
    for doc_id, text in docs.items():
        sentences = split_sentences(text)
        token_lists = [tokenize(s) for s in sentences]
        embeddings = [embed_sentence(toks, vectors) for toks in token_lists]
        per_doc.append((doc_id, sentences, token_lists, embeddings))

    corpus_tokens = [toks for _, _, lists, _ in per_doc for toks in lists]
    records: list[SentenceRecord] = []
    for doc_id, sentences, token_lists, embeddings in per_doc:
        n = len(sentences)
        for idx, (text, toks, emb) in enumerate(
            zip(sentences, token_lists, embeddings)
        ):
            feats = np.array(
                [
                    sentence_position_score(idx + 1, n),
                    sentiment_score(toks, sentiment_lexicon),
                    cohesion_score(idx, embeddings, mode=cohesion_mode),
                    tf_isf_score(toks, corpus_tokens),
                    float(noun_presence(text, toks, noun_lexicon)),
                    float(numeric_presence(toks)),
                ]
            )
            records.append(
                SentenceRecord(
                    cluster_id=cluster_id,
                    doc_id=doc_id,
                    index_in_doc=idx + 1,
                    text=text,
                    tokens=toks,
                    features=feats,
                    embedding=emb,
                )
            )
    return records
