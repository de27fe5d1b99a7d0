"""Penalty tuning.

Running the full repair search for every candidate penalty pair would be
hopeless, so tuning simulates the search: for every interior boundary of
a ground-truth line, a two-character lookahead yields the log-probability
gap between spacing and not spacing that boundary.  Whether a penalty
pair would edit the boundary then reduces to comparing the penalty to
that gap, and a 201 x 201 grid can be scored exactly from per-line gap
extremes.
"""
from __future__ import annotations

from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass
from math import log
from pathlib import Path

from .beam import PenaltyConfig, _push, _start_ctx
from .corpus import EOS_ID, space_profile, strip_spaces
from .errors import DataError, StreamMismatchError


@dataclass(frozen=True)
class DecisionRecord:
    """One simulated boundary decision.

    `gap` is log p(space) - log p(no space) under the model; the two
    flags carry the input and ground-truth spacing of the boundary."""
    gap: float
    space_in_input: bool
    space_in_truth: bool
    sequence_id: int


@dataclass(frozen=True)
class TuneResult:
    penalties: PenaltyConfig
    accuracy: float


def simulate_decisions(model, scorer, corrupt: str, truth: str,
                       sequence_id: int = 0) -> list[DecisionRecord]:
    """Simulate every interior boundary decision of one (corrupt, truth)
    pair.  Contexts and the one-symbol lookahead come from the truth;
    the input spacing comes from the corrupt text.  Pass scorer=None for
    the unidirectional variant."""
    truth_stream, truth_before = space_profile(truth)
    corrupt_stream, corrupt_before = space_profile(corrupt)
    if truth_stream != corrupt_stream:
        raise StreamMismatchError("pair disagrees on non-space characters")

    vocab = model.vocab
    space = vocab.space_id
    stream_ids = [vocab.id_of(c) for c in truth_stream]
    # context after each truth prefix that ends in a non-space character
    ctx = _start_ctx(model)
    ctx_after: list[tuple[int, ...]] = []
    for ch in truth:
        ctx = _push(ctx, vocab.id_of(ch))
        if ch != " ":
            ctx_after.append(ctx)

    # the symbol following each stream character in the truth (EOS last)
    truth_ids = [vocab.id_of(c) for c in truth]
    follower = [truth_ids[i + 1] if i + 1 < len(truth) else EOS_ID
                for i, ch in enumerate(truth) if ch != " "]

    records = []
    for k in range(1, len(truth_stream)):
        prev_ctx = ctx_after[k - 1]
        char_id = stream_ids[k]
        p_space = (model.prob_space_then_char(prev_ctx, char_id)
                   * model.prob_next(_push(_push(prev_ctx, space), char_id), follower[k]))
        p_plain = (model.prob_next(prev_ctx, char_id)
                   * model.prob_next(_push(prev_ctx, char_id), follower[k]))
        if scorer is not None:
            p_bi = scorer.space_prob(stream_ids, k + 1)
            p_space *= p_bi
            p_plain *= 1.0 - p_bi
        records.append(DecisionRecord(
            gap=log(p_space) - log(p_plain),
            space_in_input=corrupt_before[k],
            space_in_truth=truth_before[k],
            sequence_id=sequence_id))
    return records


def build_records(model, scorer, pairs) -> tuple[list[DecisionRecord], int]:
    """Simulate a whole tuning set; pairs whose streams disagree are
    skipped and counted."""
    records: list[DecisionRecord] = []
    rejected = 0
    for sequence_id, (corrupt, truth) in enumerate(pairs):
        try:
            records.extend(simulate_decisions(model, scorer, corrupt, truth,
                                              sequence_id))
        except StreamMismatchError:
            rejected += 1
    return records, rejected


def apply_rule(record: DecisionRecord, penalties: PenaltyConfig) -> bool:
    """Spacing the simulated search would choose for one boundary: an
    existing space survives unless the delete penalty is strictly below
    the evidence against it, and a space is added only when the insert
    penalty is strictly below the evidence for it."""
    if record.space_in_input:
        return not penalties.delete_penalty < -record.gap
    return penalties.insert_penalty < record.gap


def grid_accuracy(records, penalties: PenaltyConfig) -> float:
    """Fraction of sequences whose every simulated decision is right."""
    wrong = set()
    sequences = set()
    for r in records:
        sequences.add(r.sequence_id)
        if apply_rule(r, penalties) != r.space_in_truth:
            wrong.add(r.sequence_id)
    if not sequences:
        raise DataError("no decision records")
    return (len(sequences) - len(wrong)) / len(sequences)


def tune(records, grid_max: float = 20.0, step: float = 0.1) -> TuneResult:
    """Pick the penalty pair with the best sequence accuracy over the
    whole grid; ties go to the largest insert+delete sum, then to the
    largest insert penalty, so equally good pairs resolve to the most
    conservative one."""
    if not records:
        raise DataError("no decision records")
    grid = [k * step for k in range(int(round(grid_max / step)) + 1)]
    n = len(grid)
    inf = float("inf")
    # per sequence: the half-open index rectangle of correct penalty pairs
    bounds: dict[int, list[float]] = defaultdict(lambda: [-inf, inf, -inf, inf])
    for r in records:
        cell = bounds[r.sequence_id]
        if r.space_in_input:
            if r.space_in_truth:
                cell[2] = max(cell[2], -r.gap)   # keep: delete penalty >= -gap
            else:
                cell[3] = min(cell[3], -r.gap)   # delete: delete penalty < -gap
        else:
            if r.space_in_truth:
                cell[1] = min(cell[1], r.gap)    # insert: insert penalty < gap
            else:
                cell[0] = max(cell[0], r.gap)    # stay: insert penalty >= gap
    diff = [[0] * (n + 1) for _ in range(n + 1)]
    for ins_lo, ins_hi, del_lo, del_hi in bounds.values():
        i0 = bisect_left(grid, ins_lo) if ins_lo > -inf else 0
        i1 = bisect_left(grid, ins_hi) if ins_hi < inf else n
        d0 = bisect_left(grid, del_lo) if del_lo > -inf else 0
        d1 = bisect_left(grid, del_hi) if del_hi < inf else n
        if i0 >= i1 or d0 >= d1:
            continue
        diff[i0][d0] += 1
        diff[i0][d1] -= 1
        diff[i1][d0] -= 1
        diff[i1][d1] += 1
    best = (-1, -1, -1)
    for i in range(n):
        run = 0
        row = diff[i]
        if i:
            prev = diff[i - 1]
            for j in range(n + 1):
                row[j] += prev[j]
        for j in range(n):
            run += row[j]
            if (run, i + j, i) > best:
                best = (run, i + j, i)
                at = (i, j)
    i, j = at
    return TuneResult(PenaltyConfig(grid[i], grid[j]), best[0] / len(bounds))


def average_penalties(configs) -> PenaltyConfig:
    """Mean of several tuned pairs; the all-round compromise setting."""
    configs = list(configs)
    if not configs:
        raise ValueError("no penalty configurations to average")
    return PenaltyConfig(
        sum(c.insert_penalty for c in configs) / len(configs),
        sum(c.delete_penalty for c in configs) / len(configs))


def benchmark_has_spaces(pairs) -> bool:
    """False when no corrupt line contains a space; such inputs carry no
    usable spacing signal and repair should run unpenalized."""
    return any(" " in corrupt for corrupt, _ in pairs)


def save_penalties(path: str | Path, penalties: PenaltyConfig) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("PENALTIES v1 %r %r\n" % (penalties.insert_penalty,
                                           penalties.delete_penalty))


def load_penalties(path: str | Path) -> PenaltyConfig:
    with open(path, encoding="utf-8") as fh:
        head = fh.readline().split()
    if len(head) != 4 or head[0] != "PENALTIES" or head[1] != "v1":
        raise DataError("not a v1 penalties file")
    try:
        return PenaltyConfig(float(head[2]), float(head[3]))
    except ValueError as exc:
        raise DataError("bad penalty values") from exc
