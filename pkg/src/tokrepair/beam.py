"""Penalized beam search for tokenization repair.

The search walks the non-space character stream of the input left to
right.  At every interior boundary each live hypothesis forks into a
no-space branch and a space branch, each charged the negative log
probability of what it emits; a penalty is added only when the branch
disagrees with the spacing of the input at that boundary.  The best
`beam_width` hypotheses survive per level, so the whole search is linear
in the input length.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import log

from .corpus import EOS_ID, SOS_ID, render_spacing, space_profile
from .errors import StreamMismatchError


@dataclass(frozen=True)
class PenaltyConfig:
    """Costs for deviating from the input spacing."""
    insert_penalty: float
    delete_penalty: float

    def __post_init__(self):
        if self.insert_penalty < 0 or self.delete_penalty < 0:
            raise ValueError("penalties must be non-negative")


@dataclass(frozen=True)
class RepairResult:
    output: str
    score: float
    n_ins: int  # spaces added relative to the input
    n_del: int  # spaces removed relative to the input


def _push(ctx: tuple[int, ...], symbol: int) -> tuple[int, ...]:
    return ctx[1:] + (symbol,)


def _branch(model, penalties, ctx, char_id, had_space, space_term, put_space):
    """Score one decision at one boundary.

    Returns (score delta, edited flag, new context).  `space_term` is the
    scorer probability of a space at this boundary, or None for the
    purely unidirectional variant.  The float operations here are the
    single scoring path shared by the beam and the exhaustive oracle, so
    both produce bit-identical sums for identical decisions.
    """
    if put_space:
        p = model.prob_space_then_char(ctx, char_id)
        if space_term is not None:
            p = p * space_term
        delta = -log(p)
        edited = not had_space
        if edited:
            delta += penalties.insert_penalty
        ctx = _push(_push(ctx, model.vocab.space_id), char_id)
    else:
        p = model.prob_next(ctx, char_id)
        if space_term is not None:
            p = p * (1.0 - space_term)
        delta = -log(p)
        edited = had_space
        if edited:
            delta += penalties.delete_penalty
        ctx = _push(ctx, char_id)
    return delta, edited, ctx


def _prepare(model, scorer, text):
    stream, before = space_profile(text)
    ids = [model.vocab.id_of(c) for c in stream]
    space_terms = [None] * len(stream)
    if scorer is not None:
        for j in range(1, len(stream)):
            space_terms[j] = scorer.space_prob(ids, j + 1)
    return stream, before, ids, space_terms


def _start_ctx(model) -> tuple[int, ...]:
    return (SOS_ID,) * (model.order - 1)


def _empty_result(model, text) -> RepairResult:
    return RepairResult(text, -log(model.prob_next((), EOS_ID)), 0, 0)


def repair_uni(model, penalties: PenaltyConfig, text: str,
               beam_width: int = 5) -> RepairResult:
    """Repair using the forward model alone."""
    return _repair(model, None, penalties, text, beam_width)


def repair_bid(model, scorer, penalties: PenaltyConfig, text: str,
               beam_width: int = 5) -> RepairResult:
    """Repair with the forward model times the bidirectional space scorer."""
    return _repair(model, scorer, penalties, text, beam_width)


def _repair(model, scorer, penalties, text, beam_width):
    if beam_width < 1:
        raise ValueError("beam width must be positive")
    stream, before, ids, space_terms = _prepare(model, scorer, text)
    if not stream:
        return _empty_result(model, text)

    # state: (score, edits, rank, trail, context, n_ins, n_del).  `trail`
    # is a parent-linked (previous trail, decision) chain, and `rank` is
    # the position of this hypothesis's decision vector in the
    # lexicographic order of the live beam; ties then sort by
    # (parent rank, decision), which equals full-vector order without
    # ever materializing the vectors, keeping each level O(beam width).
    ctx0 = _start_ctx(model)
    first = -log(model.prob_next(ctx0, ids[0]))
    states = [(first, 0, 0, None, _push(ctx0, ids[0]), 0, 0)]
    for j in range(1, len(stream)):
        char_id = ids[j]
        had_space = before[j]
        space_term = space_terms[j]
        candidates = []
        for score, edits, rank, trail, ctx, n_ins, n_del in states:
            delta, edited, ctx2 = _branch(
                model, penalties, ctx, char_id, had_space, space_term, False)
            candidates.append((score + delta, edits + edited, rank * 2,
                               (trail, 0), ctx2, n_ins, n_del + edited))
            delta, edited, ctx2 = _branch(
                model, penalties, ctx, char_id, had_space, space_term, True)
            candidates.append((score + delta, edits + edited, rank * 2 + 1,
                               (trail, 1), ctx2, n_ins + edited, n_del))
        candidates.sort(key=lambda s: s[:3])
        kept = candidates[:beam_width]
        rerank = {key: pos for pos, key in
                  enumerate(sorted(state[2] for state in kept))}
        states = [(score, edits, rerank[key], trail, ctx, n_ins, n_del)
                  for score, edits, key, trail, ctx, n_ins, n_del in kept]

    best = min(((score - log(model.prob_next(ctx, EOS_ID)), edits, rank,
                 trail, n_ins, n_del)
                for score, edits, rank, trail, ctx, n_ins, n_del in states),
               key=lambda s: s[:3])
    score, _, _, trail, n_ins, n_del = best
    decisions = []
    while trail is not None:
        trail, decision = trail
        decisions.append(decision)
    decisions.reverse()
    output = render_spacing(stream, [False] + [bool(d) for d in decisions])
    return RepairResult(output, score, n_ins, n_del)


def exhaustive_repair(model, scorer, penalties: PenaltyConfig,
                      text: str) -> RepairResult:
    """Score every possible spacing of the stream and keep the best.

    Exponential in the stream length; only usable as a ground-truth
    oracle on short inputs.
    """
    stream, before, ids, space_terms = _prepare(model, scorer, text)
    if not stream:
        return _empty_result(model, text)
    if len(stream) > 20:
        raise ValueError("stream too long for exhaustive search")

    ctx0 = _start_ctx(model)
    first = -log(model.prob_next(ctx0, ids[0]))
    ctx1 = _push(ctx0, ids[0])
    best = None
    for decisions in product((0, 1), repeat=len(stream) - 1):
        score, edits, ctx = first, 0, ctx1
        n_ins = n_del = 0
        for j in range(1, len(stream)):
            delta, edited, ctx = _branch(
                model, penalties, ctx, ids[j], before[j], space_terms[j],
                decisions[j - 1])
            score += delta
            edits += edited
            if edited:
                if decisions[j - 1]:
                    n_ins += 1
                else:
                    n_del += 1
        score -= log(model.prob_next(ctx, EOS_ID))
        key = (score, edits, decisions)
        if best is None or key < best[0]:
            best = (key, n_ins, n_del)
    (score, _, decisions), n_ins, n_del = best
    output = render_spacing(stream, [False] + [bool(d) for d in decisions])
    return RepairResult(output, score, n_ins, n_del)


def score_sequence(model, scorer, penalties: PenaltyConfig,
                   candidate: str, original: str) -> RepairResult:
    """Recompute the penalized objective of `candidate` against
    `original` without searching: the full negative log likelihood of
    the candidate (spaces and EOS included), the scorer terms of its
    boundary decisions, and a penalty per disagreement with the input
    spacing."""
    stream, cand_before = space_profile(candidate)
    orig_stream, orig_before = space_profile(original)
    if stream != orig_stream:
        raise StreamMismatchError(
            "candidate and original disagree on non-space characters")
    nll = 0.0
    ctx = _start_ctx(model)
    ids = model.vocab.encode(candidate)
    for symbol in ids[1:]:
        nll -= log(model.prob_next(ctx, symbol))
        ctx = _push(ctx, symbol)
    n_ins = n_del = 0
    if stream:
        nonspace_ids = [model.vocab.id_of(c) for c in stream]
        for j in range(1, len(stream)):
            if scorer is not None:
                p = scorer.space_prob(nonspace_ids, j + 1)
                nll -= log(p if cand_before[j] else 1.0 - p)
            if cand_before[j] and not orig_before[j]:
                n_ins += 1
            elif orig_before[j] and not cand_before[j]:
                n_del += 1
    score = nll + n_ins * penalties.insert_penalty + n_del * penalties.delete_penalty
    return RepairResult(candidate, score, n_ins, n_del)
