"""Evaluation metrics for tokenization and spelling benchmarks.

Tokenization quality is scored over boundary edits: the set of space
insertions/deletions needed to turn the corrupt text into the truth is
compared against the set the predictor actually applied.  Spelling
quality is scored over truth tokens matched by longest common
subsequence.  Counts aggregate micro-style: sum first, divide once.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import space_profile, strip_spaces
from .errors import StreamMismatchError

INSERT = "ins"
DELETE = "del"


def edit_set(a: str, b: str) -> frozenset[tuple[int, str]]:
    """Boundary edits that turn the spacing of `a` into the spacing of
    `b`.  Both must share one non-space stream; an edit is (boundary
    index, kind) where boundary i sits before the i-th stream character.
    """
    stream_a, before_a = space_profile(a)
    stream_b, before_b = space_profile(b)
    if stream_a != stream_b:
        raise StreamMismatchError("non-space streams differ")
    edits = set()
    for i in range(1, len(stream_a)):
        if before_b[i] and not before_a[i]:
            edits.add((i, INSERT))
        elif before_a[i] and not before_b[i]:
            edits.add((i, DELETE))
    return frozenset(edits)


def apply_edits(a: str, edits) -> str:
    """Apply boundary edits to `a`; inverse check for `edit_set`."""
    from .corpus import render_spacing
    stream, before = space_profile(a)
    for i, kind in edits:
        before[i] = kind == INSERT
    return render_spacing(stream, before)


@dataclass
class ErrorClassCounts:
    tokenization: int = 0
    spelling: int = 0
    mixed: int = 0


@dataclass
class TokenEvalReport:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    classes: ErrorClassCounts | None = None

    @property
    def fscore(self) -> float:
        # nothing to fix and nothing falsely fixed counts as perfect
        if self.tp == self.fp == self.fn == 0:
            return 1.0
        return 2 * self.tp / (2 * self.tp + self.fp + self.fn)

    def add(self, other: "TokenEvalReport") -> None:
        self.tp += other.tp
        self.fp += other.fp
        self.fn += other.fn


def token_fscore(corrupt: str, truth: str, predicted: str) -> TokenEvalReport:
    """Compare the edits a predictor applied with the edits it should
    have applied, both relative to the corrupt input."""
    needed = edit_set(corrupt, truth)
    applied = edit_set(corrupt, predicted)
    tp = len(needed & applied)
    return TokenEvalReport(tp=tp, fp=len(applied) - tp, fn=len(needed) - tp)


def micro_report(triples) -> TokenEvalReport:
    total = TokenEvalReport()
    for corrupt, truth, predicted in triples:
        total.add(token_fscore(corrupt, truth, predicted))
    return total


def sequence_accuracy(pairs) -> float:
    """Fraction of (predicted, truth) pairs that match exactly."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("no pairs to score")
    return sum(p == t for p, t in pairs) / len(pairs)


def lcs_tokens(a: str, b: str) -> list[tuple[int, int]]:
    """Longest common subsequence of the whitespace tokens of `a` and
    `b`, as (index in a, index in b) pairs.  Among all maximal
    alignments the leftmost one is returned: a match is taken greedily
    whenever doing so still permits an optimal completion."""
    ta, tb = a.split(), b.split()
    n, m = len(ta), len(tb)
    # suffix[i][j] = LCS length of ta[i:], tb[j:]
    suffix = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row, nxt = suffix[i], suffix[i + 1]
        for j in range(m - 1, -1, -1):
            if ta[i] == tb[j]:
                row[j] = nxt[j + 1] + 1
            else:
                row[j] = nxt[j] if nxt[j] >= row[j + 1] else row[j + 1]
    out = []
    i = j = 0
    while i < n and j < m:
        if ta[i] == tb[j] and suffix[i][j] == suffix[i + 1][j + 1] + 1:
            out.append((i, j))
            i += 1
            j += 1
        elif suffix[i + 1][j] >= suffix[i][j + 1]:
            i += 1
        else:
            j += 1
    return out


def _matched_truth(text: str, truth: str) -> set[int]:
    return {j for _, j in lcs_tokens(text, truth)}


def spelling_fscore(corrupt: str, truth: str, predicted: str) -> TokenEvalReport:
    """Token-level spelling score.  Truth tokens absent from the corrupt
    text are the errors; the predictor gets credit for every error it
    restored and is charged for every intact token it broke."""
    erroneous = set(range(len(truth.split()))) - _matched_truth(corrupt, truth)
    fine = set(range(len(truth.split()))) - erroneous
    solved = _matched_truth(predicted, truth)
    return TokenEvalReport(tp=len(erroneous & solved),
                           fp=len(fine - solved),
                           fn=len(erroneous - solved))


def micro_spelling_report(triples) -> TokenEvalReport:
    total = TokenEvalReport()
    for corrupt, truth, predicted in triples:
        total.add(spelling_fscore(corrupt, truth, predicted))
    return total


# -- character alignment -----------------------------------------------

# ops transform c into t: ("match"/"sub", c_pos, t_pos),
# ("del", c_pos, t_gap), ("ins", t_pos)

def char_alignment(c: str, t: str) -> list[tuple]:
    """Minimal unit-cost edit script between two strings, preferring
    diagonal moves (match/substitute) on ties so the script is
    deterministic."""
    n, m = len(c), len(t)
    dist = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dist[i][0] = i
    for j in range(1, m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        ci = c[i - 1]
        row, prev = dist[i], dist[i - 1]
        for j in range(1, m + 1):
            row[j] = min(prev[j - 1] + (ci != t[j - 1]),
                         prev[j] + 1,
                         row[j - 1] + 1)
    ops = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and dist[i][j] == dist[i - 1][j - 1] + (c[i - 1] != t[j - 1]):
            ops.append(("match" if c[i - 1] == t[j - 1] else "sub", i - 1, j - 1))
            i -= 1
            j -= 1
        elif i > 0 and dist[i][j] == dist[i - 1][j] + 1:
            ops.append(("del", i - 1, j))
            i -= 1
        else:
            ops.append(("ins", j - 1))
            j -= 1
    ops.reverse()
    return ops


def _token_spans(text: str) -> list[tuple[int, int]]:
    spans = []
    start = None
    for i, ch in enumerate(text):
        if ch == " ":
            if start is not None:
                spans.append((start, i - 1))
                start = None
        elif start is None:
            start = i
    if start is not None:
        spans.append((start, len(text) - 1))
    return spans


def classify_errors(corrupt: str, truth: str) -> ErrorClassCounts:
    """Classify every erroneous truth token by the kind of edits its
    correction needs: only space edits, only character edits, or both.
    Edits at the separators flanking a token count toward it, so a
    missing space between two tokens marks both as tokenization errors.
    """
    erroneous = sorted(set(range(len(truth.split()))) - _matched_truth(corrupt, truth))
    counts = ErrorClassCounts()
    if not erroneous:
        return counts
    ops = char_alignment(corrupt, truth)
    spans = _token_spans(truth)
    for index in erroneous:
        s, e = spans[index]
        space_edit = char_edit = False
        for op in ops:
            kind = op[0]
            if kind == "match":
                continue
            if kind == "sub":
                _, c_pos, t_pos = op
                if not s - 1 <= t_pos <= e + 1:
                    continue
                sides = (corrupt[c_pos], truth[t_pos])
            elif kind == "del":
                _, c_pos, t_gap = op
                if not s <= t_gap <= e + 1:
                    continue
                sides = (corrupt[c_pos],)
            else:
                _, t_pos = op
                if not s - 1 <= t_pos <= e + 1:
                    continue
                sides = (truth[t_pos],)
            space_edit = space_edit or " " in sides
            char_edit = char_edit or any(ch != " " for ch in sides)
        if space_edit and not char_edit:
            counts.tokenization += 1
        elif char_edit and not space_edit:
            counts.spelling += 1
        else:
            # both kinds, or an alignment quirk with no local edits at all
            counts.mixed += 1
    return counts


@dataclass
class BenchmarkStats:
    sequences: int = 0
    erroneous: int = 0  # sequences with at least one space edit
    spurious: int = 0   # spaces present in the corrupt text but not the truth
    missing: int = 0    # spaces absent from the corrupt text


def benchmark_stats(records) -> BenchmarkStats:
    """Tabulate space-error volume over (corrupt, truth) records.  When
    character noise makes the streams differ, the counts fall back to a
    character alignment."""
    stats = BenchmarkStats()
    for corrupt, truth in records:
        stats.sequences += 1
        if strip_spaces(corrupt) == strip_spaces(truth):
            edits = edit_set(corrupt, truth)
            spurious = sum(kind == DELETE for _, kind in edits)
            missing = sum(kind == INSERT for _, kind in edits)
        else:
            spurious = missing = 0
            for op in char_alignment(corrupt, truth):
                kind = op[0]
                if kind == "del" and corrupt[op[1]] == " ":
                    spurious += 1
                elif kind == "ins" and truth[op[1]] == " ":
                    missing += 1
                elif kind == "sub":
                    if corrupt[op[1]] == " ":
                        spurious += 1
                    elif truth[op[2]] == " ":
                        missing += 1
        stats.spurious += spurious
        stats.missing += missing
        stats.erroneous += bool(spurious or missing)
    return stats
