"""Tokenization repair: fix missing and spurious spaces in text.

The package trains character n-gram language models over clean text and
uses penalized beam search to re-decide the spacing of a corrupted line
while leaving its non-space characters untouched.
"""
from .baselines import WordTables, build_word_tables, viterbi_segment
from .beam import (PenaltyConfig, RepairResult, exhaustive_repair, repair_bid,
                   repair_uni, score_sequence)
from .bidir import BidirSpaceScorer, train_scorer
from .charlm import BACKWARD, FORWARD, NgramCharModel, train
from .corpus import (CharVocab, build_vocab, is_clean, load_corpus, normalize,
                     render_spacing, space_profile, split, strip_spaces)
from .errors import DataError, StreamMismatchError
from .metrics import (TokenEvalReport, benchmark_stats, classify_errors,
                      edit_set, lcs_tokens, micro_report,
                      micro_spelling_report, sequence_accuracy,
                      spelling_fscore, token_fscore)
from .noise import (NOSPACE, OCR, TYPO, NoiseStats, OcrNoiseSpec,
                    TypoNoiseSpec, generate_benchmark, inject_ocr,
                    inject_training_noise, inject_typos, remove_all_spaces)
from .penalty import (DecisionRecord, TuneResult, apply_rule, build_records,
                      load_penalties, save_penalties, simulate_decisions, tune)

__version__ = "0.1.0"

__all__ = [
    "BACKWARD",
    "BidirSpaceScorer",
    "CharVocab",
    "DataError",
    "DecisionRecord",
    "FORWARD",
    "NOSPACE",
    "NgramCharModel",
    "NoiseStats",
    "OCR",
    "OcrNoiseSpec",
    "PenaltyConfig",
    "RepairResult",
    "StreamMismatchError",
    "TYPO",
    "TokenEvalReport",
    "TuneResult",
    "TypoNoiseSpec",
    "WordTables",
    "apply_rule",
    "benchmark_stats",
    "build_records",
    "build_vocab",
    "build_word_tables",
    "classify_errors",
    "edit_set",
    "exhaustive_repair",
    "generate_benchmark",
    "inject_ocr",
    "inject_training_noise",
    "inject_typos",
    "is_clean",
    "lcs_tokens",
    "load_corpus",
    "load_penalties",
    "micro_report",
    "micro_spelling_report",
    "normalize",
    "remove_all_spaces",
    "render_spacing",
    "repair_bid",
    "repair_uni",
    "save_penalties",
    "score_sequence",
    "sequence_accuracy",
    "simulate_decisions",
    "space_profile",
    "spelling_fscore",
    "split",
    "strip_spaces",
    "token_fscore",
    "train",
    "train_scorer",
    "tune",
    "viterbi_segment",
]
