"""Shared builders for the test suite."""
import random

import pytest

from tokrepair import charlm, bidir
from tokrepair.corpus import CharVocab, build_vocab


ABC_LINES = ["the cat sat on the mat", "a cat and a dog sat", "the dog ran on"]


@pytest.fixture(scope="session")
def abc_vocab():
    return build_vocab(ABC_LINES)


@pytest.fixture(scope="session")
def abc_model(abc_vocab):
    return charlm.train(ABC_LINES, abc_vocab, order=3)


@pytest.fixture(scope="session")
def abc_scorer(abc_vocab):
    return bidir.train_scorer(ABC_LINES, abc_vocab, m=2)


def random_text(rng: random.Random, alphabet: str = "abcde",
                max_stream: int = 12) -> str:
    """A normalized line with a random interior spacing."""
    stream = "".join(rng.choice(alphabet)
                     for _ in range(rng.randint(1, max_stream)))
    parts = [stream[0]]
    for ch in stream[1:]:
        if rng.random() < 0.3:
            parts.append(" ")
        parts.append(ch)
    return "".join(parts)


def random_toy_setup(rng: random.Random, alphabet: str = "abcde"):
    """A small trained model/scorer pair over random training lines."""
    lines = [random_text(rng, alphabet, 16) for _ in range(rng.randint(2, 6))]
    vocab = build_vocab(lines)
    model = charlm.train(lines, vocab, order=rng.choice([2, 3]))
    scorer = bidir.train_scorer(lines, vocab, m=rng.choice([1, 2, 3]))
    return model, scorer
