"""Word-level segmentation baseline.

Strips all spaces and re-segments the character stream into the most
probable word sequence under a mixed unigram/bigram model.  States of
the dynamic program are word occurrences (span plus word), so bigram
transitions are exact; characters no known word covers are emitted as
single-character fallback words with a vanishing probability.
"""
from __future__ import annotations

from math import log
from pathlib import Path

from .corpus import strip_spaces
from .errors import DataError

MAX_WORD_LEN = 20
FALLBACK_PROB = 1e-12


class WordTables:
    """Unigram and bigram word counts with probability helpers."""

    def __init__(self):
        self.unigrams: dict[str, int] = {}
        self.total = 0
        self.bigrams: dict[tuple[str, str], int] = {}
        self.preceded: dict[str, int] = {}  # times a word had a successor

    def observe(self, tokens: list[str]) -> None:
        for token in tokens:
            if len(token) > MAX_WORD_LEN:
                continue
            self.unigrams[token] = self.unigrams.get(token, 0) + 1
            self.total += 1
        # adjacency only between directly neighbouring kept tokens
        for a, b in zip(tokens, tokens[1:]):
            if len(a) <= MAX_WORD_LEN and len(b) <= MAX_WORD_LEN:
                self.bigrams[(a, b)] = self.bigrams.get((a, b), 0) + 1
                self.preceded[a] = self.preceded.get(a, 0) + 1

    def unigram_prob(self, word: str) -> float:
        count = self.unigrams.get(word)
        if count is None:
            return FALLBACK_PROB
        return count / self.total

    def transition_prob(self, prev: str, word: str) -> float:
        """Mean of the unigram probability and the conditional bigram
        probability, so unseen bigrams back off smoothly."""
        pair = self.bigrams.get((prev, word))
        bigram = pair / self.preceded[prev] if pair else 0.0
        return 0.5 * (self.unigram_prob(word) + bigram)

    # -- serialization -------------------------------------------------

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for word in sorted(self.unigrams):
                fh.write("%s\t%d\n" % (word, self.unigrams[word]))
            for a, b in sorted(self.bigrams):
                fh.write("%s\t%s\t%d\n" % (a, b, self.bigrams[(a, b)]))

    @classmethod
    def load(cls, path: str | Path) -> "WordTables":
        tables = cls()
        with open(path, encoding="utf-8") as fh:
            for number, raw in enumerate(fh, 1):
                line = raw.rstrip("\n")
                if not line:
                    continue
                fields = line.split("\t")
                try:
                    if len(fields) == 2:
                        tables.unigrams[fields[0]] = int(fields[1])
                        tables.total += int(fields[1])
                    elif len(fields) == 3:
                        count = int(fields[2])
                        tables.bigrams[(fields[0], fields[1])] = count
                        tables.preceded[fields[0]] = (
                            tables.preceded.get(fields[0], 0) + count)
                    else:
                        raise ValueError("needs 2 or 3 fields")
                except ValueError as exc:
                    raise DataError("bad table line %d: %s" % (number, exc)) from exc
        return tables


def build_word_tables(sequences) -> WordTables:
    tables = WordTables()
    for seq in sequences:
        tokens = seq.split()
        if tokens:
            tables.observe(tokens)
    if not tables.total:
        raise DataError("no words to learn from")
    return tables


def _candidates(stream: str, start: int, tables: WordTables) -> list[str]:
    words = []
    for end in range(start + 1, min(start + MAX_WORD_LEN, len(stream)) + 1):
        word = stream[start:end]
        if word in tables.unigrams:
            words.append(word)
    if stream[start] not in tables.unigrams:
        words.append(stream[start])  # fallback single character
    return words


def _better(a, b) -> bool:
    """Path preference: higher score, then fewer words, then the
    lexicographically smaller segmented text."""
    if a[0] != b[0]:
        return a[0] > b[0]
    if a[1] != b[1]:
        return a[1] < b[1]
    return a[2] < b[2]


def viterbi_segment(text: str, tables: WordTables) -> str:
    """Best segmentation of the space-stripped text, linear in its
    length for a fixed maximum word length."""
    stream = strip_spaces(text)
    if not stream:
        return ""
    # by_end[end][word] = best (score, n_words, segmented prefix) over
    # paths whose last word is `word` ending at `end`
    by_end: dict[int, dict[str, tuple[float, int, str]]] = {}
    for word in _candidates(stream, 0, tables):
        value = (log(tables.unigram_prob(word)), 1, word)
        bucket = by_end.setdefault(len(word), {})
        if word not in bucket or _better(value, bucket[word]):
            bucket[word] = value
    for at in range(1, len(stream)):
        arriving = by_end.get(at)
        if not arriving:
            continue
        for word in _candidates(stream, at, tables):
            bucket = by_end.setdefault(at + len(word), {})
            for prev, (score, n_words, prefix) in arriving.items():
                value = (score + log(tables.transition_prob(prev, word)),
                         n_words + 1, prefix + " " + word)
                if word not in bucket or _better(value, bucket[word]):
                    bucket[word] = value
    final = None
    for value in by_end[len(stream)].values():
        if final is None or _better(value, final):
            final = value
    return final[2]


def brute_force_segment(text: str, tables: WordTables) -> str:
    """Enumerate every segmentation of the stream; exponential oracle for
    cross-checking the dynamic program on short inputs."""
    stream = strip_spaces(text)
    if not stream:
        return ""
    if len(stream) > 15:
        raise ValueError("stream too long for exhaustive segmentation")
    best = None

    def extend(at, prev, score, n_words, prefix):
        nonlocal best
        if at == len(stream):
            value = (score, n_words, prefix)
            if best is None or _better(value, best):
                best = value
            return
        for word in _candidates(stream, at, tables):
            if prev is None:
                extend(len(word), word, log(tables.unigram_prob(word)), 1, word)
            else:
                extend(at + len(word), word,
                       score + log(tables.transition_prob(prev, word)),
                       n_words + 1, prefix + " " + word)

    extend(0, None, 0.0, 0, "")
    return best[2]


def path_score(tables: WordTables, segmented: str) -> float:
    """Log probability of an already segmented text under the tables."""
    words = segmented.split()
    if not words:
        raise ValueError("nothing to score")
    score = log(tables.unigram_prob(words[0]))
    for prev, word in zip(words, words[1:]):
        score += log(tables.transition_prob(prev, word))
    return score
