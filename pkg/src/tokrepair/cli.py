"""Command-line interface.

Subcommands cover the whole workflow: train models, corrupt clean text
into benchmarks, tune penalties, repair, evaluate, and run the word
segmentation baseline.  Exit codes: 0 success, 2 usage error (argparse),
3 data error.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import baselines, beam, bidir, charlm, metrics, noise, penalty
from .corpus import load_corpus, normalize, split, write_sequences
from .errors import DataError


def _read_lines(path):
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh]


def _read_pairs(path):
    pairs = []
    for number, line in enumerate(_read_lines(path), 1):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise DataError("%s line %d: expected corrupt<TAB>truth" % (path, number))
        pairs.append((fields[0], fields[1]))
    if not pairs:
        raise DataError("%s holds no records" % path)
    return pairs


def _write_pairs(path, pairs):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for corrupt, truth in pairs:
            fh.write("%s\t%s\n" % (corrupt, truth))


def _load_penalties(args) -> beam.PenaltyConfig:
    if args.penalties is not None:
        return penalty.load_penalties(args.penalties)
    return beam.PenaltyConfig(args.insert_penalty, args.delete_penalty)


# -- subcommands -------------------------------------------------------

def cmd_train(args) -> int:
    sequences = load_corpus(args.corpus)
    if not sequences:
        raise DataError("corpus %s is empty after filtering" % args.corpus)
    if args.noisy:
        rules = noise.load_rules(args.rules) if args.rules else noise.DEFAULT_RULES
        noisy = []
        for index, seq in enumerate(sequences):
            rng = random.Random(args.seed ^ index)
            noisy.append(noise.inject_training_noise(seq, rules, rng=rng))
        sequences = noisy
    from .corpus import build_vocab
    vocab = build_vocab(sequences, args.vocab_size)
    model = charlm.train(sequences, vocab, order=args.order)
    model.save(args.model)
    print("model: order %d, %d symbols -> %s" % (args.order, len(vocab), args.model))
    if args.scorer:
        scorer = bidir.train_scorer(sequences, vocab, m=args.context)
        scorer.save(args.scorer)
        print("scorer: %d-gram context -> %s" % (args.context, args.scorer))
    return 0


def cmd_tune(args) -> int:
    model = charlm.NgramCharModel.load(args.model)
    scorer = bidir.BidirSpaceScorer.load(args.scorer) if args.scorer else None
    pairs = [(normalize(c), normalize(t)) for c, t in _read_pairs(args.pairs)]
    if not penalty.benchmark_has_spaces(pairs):
        # nothing in the input spacing to preserve: repair unpenalized
        result = penalty.TuneResult(beam.PenaltyConfig(0.0, 0.0), float("nan"))
        print("no spaces anywhere in the corrupt text; penalties forced to 0 0")
    else:
        records, rejected = penalty.build_records(model, scorer, pairs)
        if rejected:
            print("rejected %d pairs with mismatched characters" % rejected)
        if not records:
            raise DataError("no usable tuning pairs")
        result = penalty.tune(records)
        print("grid best: insert %.1f delete %.1f (simulated accuracy %.4f)"
              % (result.penalties.insert_penalty,
                 result.penalties.delete_penalty, result.accuracy))
    penalty.save_penalties(args.out, result.penalties)
    print("penalties -> %s" % args.out)
    return 0


def cmd_repair(args) -> int:
    model = charlm.NgramCharModel.load(args.model)
    scorer = None
    variant = args.variant
    if args.scorer:
        scorer = bidir.BidirSpaceScorer.load(args.scorer)
        variant = variant or "bid"
    variant = variant or "uni"
    if variant == "bid" and scorer is None:
        raise DataError("bidirectional repair needs --scorer")
    penalties = _load_penalties(args)
    lines = _read_lines(args.input)
    out = []
    for line in lines:
        line = normalize(line)
        if variant == "bid":
            result = beam.repair_bid(model, scorer, penalties, line, args.beam_width)
        else:
            result = beam.repair_uni(model, penalties, line, args.beam_width)
        out.append(result.output)
    if args.out:
        write_sequences(args.out, out)
        print("repaired %d lines -> %s" % (len(out), args.out))
    else:
        for line in out:
            print(line)
    return 0


def _typo_spec(args) -> noise.TypoNoiseSpec:
    table = noise.load_misspellings(args.misspellings) if args.misspellings else {}
    return noise.TypoNoiseSpec(misspell_prob=args.misspell_prob,
                               misspellings=table,
                               space_error_rate=args.space_error_rate,
                               random_edit_prob=args.random_edit_prob,
                               seed=args.seed)


def cmd_corrupt(args) -> int:
    truths = load_corpus(args.truth)
    if not truths:
        raise DataError("no usable truth lines in %s" % args.truth)
    if args.kind == noise.OCR:
        rules = noise.load_rules(args.rules) if args.rules else noise.DEFAULT_RULES
        spec = noise.OcrNoiseSpec(hyphen_prob=args.hyphen_prob,
                                  span_start_prob=args.span_start_prob,
                                  rules=tuple(rules), seed=args.seed)
    else:
        spec = _typo_spec(args)
    records = noise.generate_benchmark(truths, spec, args.kind)
    _write_pairs(args.out, records)
    stats = metrics.benchmark_stats(records)
    print("benchmark -> %s" % args.out)
    print("sequences:       %d" % stats.sequences)
    print("with errors:     %d" % stats.erroneous)
    print("spurious spaces: %d" % stats.spurious)
    print("missing spaces:  %d" % stats.missing)
    return 0


def cmd_evaluate(args) -> int:
    pairs = _read_pairs(args.benchmark)
    predictions = [line for line in _read_lines(args.predictions)]
    while predictions and predictions[-1] == "":
        predictions.pop()
    if len(predictions) != len(pairs):
        raise DataError("%d predictions for %d benchmark records"
                        % (len(predictions), len(pairs)))
    triples = [(c, t, p) for (c, t), p in zip(pairs, predictions)]
    rows = []
    if args.mode == "tokenization":
        try:
            report = metrics.micro_report(triples)
        except Exception as exc:
            raise DataError("prediction stream mismatch: %s" % exc) from exc
        accuracy = metrics.sequence_accuracy([(p, t) for _, t, p in triples])
        print("edits: TP %d  FP %d  FN %d" % (report.tp, report.fp, report.fn))
        print("micro F-score:     %.4f" % report.fscore)
        print("sequence accuracy: %.4f" % accuracy)
        rows = [("tp", report.tp), ("fp", report.fp), ("fn", report.fn),
                ("fscore", "%.6f" % report.fscore),
                ("sequence_accuracy", "%.6f" % accuracy)]
    else:
        report = metrics.micro_spelling_report(triples)
        classes = metrics.ErrorClassCounts()
        for corrupt, truth, _ in triples:
            piece = metrics.classify_errors(corrupt, truth)
            classes.tokenization += piece.tokenization
            classes.spelling += piece.spelling
            classes.mixed += piece.mixed
        print("tokens: TP %d  FP %d  FN %d" % (report.tp, report.fp, report.fn))
        print("micro F-score: %.4f" % report.fscore)
        print("error classes: %d tokenization, %d spelling, %d mixed"
              % (classes.tokenization, classes.spelling, classes.mixed))
        rows = [("tp", report.tp), ("fp", report.fp), ("fn", report.fn),
                ("fscore", "%.6f" % report.fscore),
                ("tokenization_errors", classes.tokenization),
                ("spelling_errors", classes.spelling),
                ("mixed_errors", classes.mixed)]
    if args.tsv:
        with open(args.tsv, "w", encoding="utf-8", newline="\n") as fh:
            for key, value in rows:
                fh.write("%s\t%s\n" % (key, value))
        print("report -> %s" % args.tsv)
    return 0


def cmd_baseline(args) -> int:
    tables = baselines.WordTables.load(args.tables)
    if not tables.total:
        raise DataError("word table %s is empty" % args.tables)
    out = [baselines.viterbi_segment(normalize(line), tables)
           for line in _read_lines(args.input)]
    if args.out:
        write_sequences(args.out, out)
        print("segmented %d lines -> %s" % (len(out), args.out))
    else:
        for line in out:
            print(line)
    return 0


def cmd_train_baseline(args) -> int:
    sequences = load_corpus(args.corpus)
    tables = baselines.build_word_tables(sequences)
    tables.save(args.out)
    print("%d distinct words -> %s" % (len(tables.unigrams), args.out))
    return 0


def cmd_split(args) -> int:
    sequences = load_corpus(args.corpus)
    values = []
    for part in args.fractions.split(","):
        part = part.strip()
        values.append(int(part) if part.isdigit() else float(part))
    parts = split(sequences, values, seed=args.seed)
    names = ["train", "tune", "dev", "test"]
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, chunk in zip(names, parts):
        write_sequences(outdir / ("%s.txt" % name), chunk)
        print("%s: %d lines" % (name, len(chunk)))
    return 0


def cmd_pipeline(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    benchmark = outdir / "benchmark.tsv"
    predictions = outdir / "repaired.txt"

    corrupt_args = argparse.Namespace(
        truth=args.truth, kind=args.kind, out=str(benchmark), seed=args.seed,
        rules=args.rules, hyphen_prob=args.hyphen_prob,
        span_start_prob=args.span_start_prob, misspellings=args.misspellings,
        misspell_prob=args.misspell_prob, space_error_rate=args.space_error_rate,
        random_edit_prob=args.random_edit_prob)
    cmd_corrupt(corrupt_args)

    pairs = _read_pairs(benchmark)
    with open(outdir / "corrupt.txt", "w", encoding="utf-8", newline="\n") as fh:
        for corrupt, _ in pairs:
            fh.write(corrupt + "\n")
    repair_args = argparse.Namespace(
        model=args.model, scorer=args.scorer, variant=args.variant,
        penalties=args.penalties, insert_penalty=args.insert_penalty,
        delete_penalty=args.delete_penalty, beam_width=args.beam_width,
        input=str(outdir / "corrupt.txt"), out=str(predictions))
    cmd_repair(repair_args)

    evaluate_args = argparse.Namespace(
        benchmark=str(benchmark), predictions=str(predictions),
        mode="tokenization", tsv=args.tsv)
    return cmd_evaluate(evaluate_args)


# -- parser ------------------------------------------------------------

def _add_corrupt_options(p):
    p.add_argument("--kind", choices=[noise.OCR, noise.TYPO, noise.NOSPACE],
                   default=noise.TYPO)
    p.add_argument("--rules", help="replacement rule TSV for OCR noise")
    p.add_argument("--hyphen-prob", type=float, default=0.035)
    p.add_argument("--span-start-prob", type=float, default=0.058)
    p.add_argument("--misspellings", help="misspelling table TSV")
    p.add_argument("--misspell-prob", type=float, default=0.10)
    p.add_argument("--space-error-rate", type=float, default=0.01)
    p.add_argument("--random-edit-prob", type=float, default=0.0)


def _add_penalty_options(p):
    p.add_argument("--penalties", help="penalties file from `tune`")
    p.add_argument("--insert-penalty", type=float, default=0.0)
    p.add_argument("--delete-penalty", type=float, default=0.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tokrepair",
        description="Repair missing and spurious spaces in text.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a character model and scorer")
    p.add_argument("corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--scorer")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--context", type=int, default=5,
                   help="scorer gram size each side")
    p.add_argument("--vocab-size", type=int, default=200)
    p.add_argument("--noisy", action="store_true",
                   help="inject character noise into the training text")
    p.add_argument("--rules", help="replacement rules for --noisy")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("tune", help="grid-search edit penalties")
    p.add_argument("pairs", help="corrupt<TAB>truth tuning TSV")
    p.add_argument("--model", required=True)
    p.add_argument("--scorer")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("repair", help="repair text line by line")
    p.add_argument("input")
    p.add_argument("--model", required=True)
    p.add_argument("--scorer")
    p.add_argument("--variant", choices=["uni", "bid"])
    p.add_argument("--beam-width", type=int, default=5)
    p.add_argument("--out")
    _add_penalty_options(p)
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("corrupt", help="build a benchmark from clean text")
    p.add_argument("truth")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_corrupt_options(p)
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("evaluate", help="score predictions on a benchmark")
    p.add_argument("benchmark")
    p.add_argument("predictions")
    p.add_argument("--mode", choices=["tokenization", "spelling"],
                   default="tokenization")
    p.add_argument("--tsv", help="also write the report as TSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("baseline", help="word-bigram segmentation baseline")
    p.add_argument("input")
    p.add_argument("--tables", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("train-baseline", help="build baseline word tables")
    p.add_argument("corpus")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_baseline)

    p = sub.add_parser("split", help="partition a corpus")
    p.add_argument("corpus")
    p.add_argument("--outdir", required=True)
    p.add_argument("--fractions", default="0.8,0.1,0.05,0.05")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("pipeline", help="corrupt, repair and evaluate in one go")
    p.add_argument("truth")
    p.add_argument("--model", required=True)
    p.add_argument("--scorer")
    p.add_argument("--variant", choices=["uni", "bid"])
    p.add_argument("--beam-width", type=int, default=5)
    p.add_argument("--outdir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tsv")
    _add_corrupt_options(p)
    _add_penalty_options(p)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())
