import math
import random

import pytest

from tokrepair.beam import (PenaltyConfig, RepairResult, exhaustive_repair,
                            repair_bid, repair_uni, score_sequence)
from tokrepair.bidir import BidirSpaceScorer
from tokrepair.charlm import NgramCharModel
from tokrepair.corpus import CharVocab, strip_spaces
from tokrepair.errors import StreamMismatchError
from tokrepair.metrics import edit_set

from conftest import random_text, random_toy_setup

FREE = PenaltyConfig(0.0, 0.0)
HUGE = PenaltyConfig(1e9, 1e9)


def untrained():
    # every next-symbol probability is exactly 1/7, so whole-sequence
    # scores have the closed form (symbols emitted + 1) * log 7
    return NgramCharModel(CharVocab(["a", "b", "c", " "]), 3)


def test_penalty_validation():
    with pytest.raises(ValueError):
        PenaltyConfig(-0.1, 0.0)
    with pytest.raises(ValueError):
        PenaltyConfig(0.0, -1.0)


def test_beam_width_validation(abc_model):
    with pytest.raises(ValueError):
        repair_uni(abc_model, FREE, "abc", 0)


def test_untrained_model_closed_form_scores():
    model = untrained()
    log7 = math.log(7)
    result = repair_uni(model, FREE, "abc", 8)
    assert result.output == "abc"  # any space costs one extra uniform step
    assert result.score == pytest.approx(4 * log7, abs=1e-9)
    assert result.n_ins == result.n_del == 0

    # keeping the input space emits 5 symbols; dropping it pays the penalty
    kept = repair_uni(model, PenaltyConfig(0.0, 5.0), "a bc", 8)
    assert kept.output == "a bc"
    assert kept.score == pytest.approx(5 * log7, abs=1e-9)
    dropped = repair_uni(model, PenaltyConfig(0.0, 1.0), "a bc", 8)
    assert dropped.output == "abc"
    assert dropped.score == pytest.approx(4 * log7 + 1.0, abs=1e-9)
    assert dropped.n_del == 1 and dropped.n_ins == 0


def test_huge_penalties_reproduce_input(abc_model, abc_scorer):
    rng = random.Random(21)
    for _ in range(100):
        text = random_text(rng, "thecasonmd", 20)
        for result in (repair_uni(abc_model, HUGE, text, 4),
                       repair_bid(abc_model, abc_scorer, HUGE, text, 4)):
            assert result.output == text
            assert result.n_ins == result.n_del == 0


def test_stream_always_preserved(abc_model, abc_scorer):
    rng = random.Random(22)
    for _ in range(200):
        text = random_text(rng, "thecat", 15)
        penalties = PenaltyConfig(rng.uniform(0, 3), rng.uniform(0, 3))
        result = repair_bid(abc_model, abc_scorer, penalties, text,
                            rng.choice([1, 2, 5]))
        assert strip_spaces(result.output) == strip_spaces(text)
        assert "  " not in result.output
        assert not result.output.startswith(" ")
        assert not result.output.endswith(" ")


def test_empty_input(abc_model):
    result = repair_uni(abc_model, FREE, "", 5)
    assert result.output == ""
    assert result.n_ins == result.n_del == 0
    recomputed = score_sequence(abc_model, None, FREE, "", "")
    assert recomputed.score == pytest.approx(result.score, abs=1e-12)


def test_single_character_input(abc_model):
    result = repair_uni(abc_model, FREE, "t", 5)
    assert result.output == "t"
    recomputed = score_sequence(abc_model, None, FREE, "t", "t")
    assert result.score == pytest.approx(recomputed.score, abs=1e-12)


def test_beam_matches_exhaustive_on_toys():
    rng = random.Random(23)
    for case in range(60):
        model, scorer = random_toy_setup(rng)
        text = random_text(rng, "abcde", 10)
        penalties = PenaltyConfig(rng.uniform(0, 5), rng.uniform(0, 5))
        use_scorer = scorer if case % 2 else None
        oracle = exhaustive_repair(model, use_scorer, penalties, text)
        if use_scorer is None:
            beam = repair_uni(model, penalties, text, 4096)
        else:
            beam = repair_bid(model, scorer, penalties, text, 4096)
        assert beam.output == oracle.output
        assert beam.score == pytest.approx(oracle.score, abs=1e-9)
        assert (beam.n_ins, beam.n_del) == (oracle.n_ins, oracle.n_del)


def test_wider_beams_never_score_worse():
    rng = random.Random(24)
    for _ in range(25):
        model, scorer = random_toy_setup(rng)
        text = random_text(rng, "abcd", 11)
        penalties = PenaltyConfig(rng.uniform(0, 2), rng.uniform(0, 2))
        scores = [repair_bid(model, scorer, penalties, text, width).score
                  for width in (1, 2, 3, 8, 64, 2048)]
        for narrow, wide in zip(scores, scores[1:]):
            assert wide <= narrow + 1e-12
        oracle = exhaustive_repair(model, scorer, penalties, text)
        assert scores[-1] == pytest.approx(oracle.score, abs=1e-9)


def test_higher_insert_penalty_never_inserts_more():
    rng = random.Random(25)
    for _ in range(20):
        model, _ = random_toy_setup(rng)
        text = strip_spaces(random_text(rng, "abc", 9))
        last = None
        for p_ins in (0.0, 0.5, 1.5, 4.0, 12.0):
            n_ins = exhaustive_repair(model, None,
                                      PenaltyConfig(p_ins, 0.0), text).n_ins
            if last is not None:
                assert n_ins <= last
            last = n_ins


def test_constant_half_scorer_shifts_score_only():
    # an untrained scorer answers 1/2 at every boundary, which adds
    # log 2 per interior boundary to every branch alike
    rng = random.Random(26)
    for _ in range(25):
        model, _ = random_toy_setup(rng)
        flat = BidirSpaceScorer(2)
        text = random_text(rng, "abcde", 10)
        penalties = PenaltyConfig(rng.uniform(0, 4), rng.uniform(0, 4))
        uni = repair_uni(model, penalties, text, 64)
        bid = repair_bid(model, flat, penalties, text, 64)
        assert bid.output == uni.output
        boundaries = len(strip_spaces(text)) - 1
        assert bid.score == pytest.approx(
            uni.score + boundaries * math.log(2), abs=1e-9)


def test_score_decomposition(abc_model, abc_scorer):
    rng = random.Random(27)
    for _ in range(60):
        text = random_text(rng, "thecasonm", 25)
        penalties = PenaltyConfig(rng.uniform(0, 4), rng.uniform(0, 4))
        result = repair_bid(abc_model, abc_scorer, penalties, text, 5)
        recomputed = score_sequence(abc_model, abc_scorer, penalties,
                                    result.output, text)
        assert recomputed.score == pytest.approx(result.score, abs=1e-9)
        assert (recomputed.n_ins, recomputed.n_del) == (result.n_ins,
                                                        result.n_del)


def test_score_sequence_counts_edits(abc_model):
    result = score_sequence(abc_model, None, PenaltyConfig(2.0, 3.0),
                            "the cat", "th ecat")
    assert result.n_ins == 1 and result.n_del == 1
    base = score_sequence(abc_model, None, FREE, "the cat", "th ecat")
    assert result.score == pytest.approx(base.score + 2.0 + 3.0, abs=1e-12)
    # and at zero penalties the original's spacing is irrelevant
    other = score_sequence(abc_model, None, FREE, "the cat", "thecat")
    assert other.score == pytest.approx(base.score, abs=0.0)


def test_score_sequence_rejects_stream_mismatch(abc_model):
    with pytest.raises(StreamMismatchError):
        score_sequence(abc_model, None, FREE, "the cat", "the hat")


def test_exhaustive_guards_length(abc_model):
    with pytest.raises(ValueError):
        exhaustive_repair(abc_model, None, FREE, "x" * 21)


def test_edit_counts_match_edit_set(abc_model, abc_scorer):
    rng = random.Random(28)
    for _ in range(50):
        text = random_text(rng, "thecas", 12)
        penalties = PenaltyConfig(rng.uniform(0, 2), rng.uniform(0, 2))
        result = repair_bid(abc_model, abc_scorer, penalties, text, 5)
        edits = edit_set(text, result.output)
        assert result.n_ins == sum(kind == "ins" for _, kind in edits)
        assert result.n_del == sum(kind == "del" for _, kind in edits)
