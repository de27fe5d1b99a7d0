import math
import random

import pytest

from tokrepair import charlm
from tokrepair.charlm import (BACKWARD, FORWARD, NgramCharModel,
                              interpolation_weights)
from tokrepair.corpus import CharVocab, EOS_ID, SOS_ID, build_vocab
from tokrepair.errors import DataError

from conftest import random_text

A, B, SP = 3, 4, 5  # ids in a vocabulary built from "ab ab"


def test_interpolation_weights_double_per_order():
    w = interpolation_weights(2)
    assert w == pytest.approx([0.0, 0.33, 0.66], abs=1e-15)
    w = interpolation_weights(3)
    assert w[2] == pytest.approx(2 * w[1])
    assert w[3] == pytest.approx(4 * w[1])
    assert sum(w) == pytest.approx(0.99)


def test_constructor_validation(abc_vocab):
    with pytest.raises(ValueError):
        NgramCharModel(abc_vocab, 1)
    with pytest.raises(ValueError):
        NgramCharModel(abc_vocab, 3, "sideways")
    with pytest.raises(DataError):
        charlm.train([], abc_vocab)


def test_counts_forward_and_backward():
    vocab = build_vocab(["ab ab"])
    assert vocab.chars == ["a", "b", " "]
    fwd = charlm.train(["ab ab"], vocab, order=2)
    assert fwd._counts[(A, B)] == 2  # hand count: "ab" occurs twice
    bwd = charlm.train(["ab ab"], vocab, order=2, direction=BACKWARD)
    assert bwd._counts[(B, A)] == 2  # reversed corpus "ba ba"


def test_untrained_model_is_uniform(abc_vocab):
    model = NgramCharModel(abc_vocab, 4)
    expect = 1.0 / len(abc_vocab)
    for symbol in range(len(abc_vocab)):
        assert model.prob_next((), symbol) == pytest.approx(expect, abs=1e-15)
        assert model.prob_next((A, B, SP), symbol) == pytest.approx(expect, abs=1e-15)
    assert model.prob_space_then_char((), A) == pytest.approx(expect ** 2)


def test_frozen_probabilities_order3():
    # all values hand-derived from the counts of the single line "ab ab"
    # (vocabulary size 6, weights 0.99/14 * {2, 4, 8})
    vocab = build_vocab(["ab ab"])
    model = charlm.train(["ab ab"], vocab, order=3)
    assert model.prob_next((A, B), SP) == pytest.approx(0.4495238095238095, abs=1e-12)
    assert model.prob_next((), A) == pytest.approx(0.8973809523809524, abs=1e-12)
    # context "bb" unseen at the top order: its weight joins the floor
    assert model.prob_next((B, B), A) == pytest.approx(0.1430952380952381, abs=1e-12)
    assert model.prob_space_then_char((A, B), A) == pytest.approx(
        0.40339410430839, abs=1e-12)


def test_frozen_probability_order2_single_token():
    # "aaaa": P(a|a) = 0.33 * 4/5 + 0.66 * 3/4 + 0.01/5 = 0.761
    vocab = build_vocab(["aaaa"])
    model = charlm.train(["aaaa"], vocab, order=2)
    assert len(vocab) == 5
    assert model.prob_next((3,), 3) == pytest.approx(0.761, abs=1e-12)


def test_space_then_char_is_the_two_step_product(abc_model):
    vocab = abc_model.vocab
    for ctx in [(), (A,), (A, B), (SP, A)]:
        want = (abc_model.prob_next(ctx, vocab.space_id)
                * abc_model.prob_next(
                    abc_model._canonical(ctx)[1:] + (vocab.space_id,), A))
        assert abc_model.prob_space_then_char(ctx, A) == pytest.approx(
            want, abs=0.0)


def test_space_then_char_rejects_backward(abc_vocab):
    model = NgramCharModel(abc_vocab, 2, BACKWARD)
    with pytest.raises(ValueError):
        model.prob_space_then_char((), A)


def test_distribution_sums_to_one():
    rng = random.Random(5)
    lines = [random_text(rng, "abcde", 20) for _ in range(8)]
    vocab = build_vocab(lines)
    model = charlm.train(lines, vocab, order=4)
    n = len(vocab)
    for _ in range(40):
        ctx = tuple(rng.randrange(n) for _ in range(rng.randint(0, 5)))
        total = sum(model.prob_next(ctx, s) for s in range(n))
        assert total == pytest.approx(1.0, abs=1e-9)
        assert all(model.prob_next(ctx, s) > 0 for s in range(n))


def test_backward_equals_forward_on_reversed_corpus():
    rng = random.Random(6)
    lines = [random_text(rng, "abc", 15) for _ in range(5)]
    vocab = build_vocab(lines)
    bwd = charlm.train(lines, vocab, order=3, direction=BACKWARD)
    fwd = charlm.train([l[::-1] for l in lines], vocab, order=3)
    for _ in range(50):
        ctx = tuple(rng.randrange(len(vocab)) for _ in range(2))
        sym = rng.randrange(len(vocab))
        assert bwd.prob_next(ctx, sym) == fwd.prob_next(ctx, sym)


def test_long_context_truncated_short_context_padded(abc_model):
    long_ctx = (B, SP, A, B, SP, A, B)
    assert abc_model.prob_next(long_ctx, SP) == abc_model.prob_next(
        long_ctx[-2:], SP)
    # one-symbol context behaves as if preceded by start-of-sequence
    assert abc_model.prob_next((A,), B) == abc_model.prob_next((SOS_ID, A), B)


def test_eos_is_a_learned_symbol():
    vocab = build_vocab(["ab", "ab"])
    model = charlm.train(["ab", "ab"], vocab, order=2)
    seen = model.prob_next((B,), EOS_ID)
    elsewhere = model.prob_next((A,), EOS_ID)
    assert seen > 0.5 > elsewhere


def test_cache_clears(abc_vocab):
    model = NgramCharModel(abc_vocab, 2)
    model.observe("the cat")
    model.prob_next((A,), B)
    assert model._memo
    model.clear_cache()
    assert not model._memo
    model.prob_next((A,), B)
    model.observe("more text")  # new counts must invalidate the memo
    assert not model._memo


def test_save_load_round_trip(tmp_path, abc_model):
    path = tmp_path / "model.lm"
    abc_model.save(path)
    again = NgramCharModel.load(path)
    assert again.order == abc_model.order
    assert again.direction == abc_model.direction
    assert again.vocab.chars == abc_model.vocab.chars
    assert again._counts == abc_model._counts
    assert again._totals == abc_model._totals
    rng = random.Random(1)
    for _ in range(30):
        ctx = tuple(rng.randrange(len(abc_model.vocab)) for _ in range(2))
        sym = rng.randrange(len(abc_model.vocab))
        assert again.prob_next(ctx, sym) == abc_model.prob_next(ctx, sym)


def test_load_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.lm"
    bad.write_text("", encoding="utf-8")
    with pytest.raises(DataError):
        NgramCharModel.load(bad)
    bad.write_text("OTHER v1 2 forward 5\n# end\n", encoding="utf-8")
    with pytest.raises(DataError):
        NgramCharModel.load(bad)


def test_load_detects_truncation(tmp_path, abc_model):
    path = tmp_path / "model.lm"
    abc_model.save(path)
    text = path.read_text(encoding="utf-8")
    path.write_text(text[:len(text) // 2], encoding="utf-8")
    with pytest.raises(DataError):
        NgramCharModel.load(path)
