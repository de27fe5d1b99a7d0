"""Bidirectional space scorer.

For every interior position of a space-free character stream, two
smoothed frequency estimates say how often a space preceded that
position in training text: one from the m symbols to the left, one from
the m symbols to the right.  Both are combined into a single probability
that treats the directions as independent witnesses.
"""
from __future__ import annotations

from pathlib import Path

from .corpus import CharVocab, EOS_ID, SOS_ID, space_profile
from .errors import DataError


class BidirSpaceScorer:
    """Two (m-gram -> space / total counts) tables over symbol ids.

    Left grams are SOS-padded, right grams EOS-padded, so positions near
    either end of a stream still resolve.  Unseen grams fall back to the
    add-alpha prior of 1/2.
    """

    def __init__(self, m: int = 5, alpha: float = 1.0):
        if m < 1:
            raise ValueError("gram size must be positive")
        if alpha <= 0:
            raise ValueError("alpha must be positive for proper probabilities")
        self.m = m
        self.alpha = alpha
        self._left: dict[tuple[int, ...], list[int]] = {}
        self._right: dict[tuple[int, ...], list[int]] = {}

    def _grams(self, ids: list[int], position: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        # position is 1-based: the boundary before the position-th character
        m = self.m
        at = position - 1
        left = ids[max(0, at - m):at]
        if len(left) < m:
            left = [SOS_ID] * (m - len(left)) + left
        right = ids[at:at + m]
        if len(right) < m:
            right = right + [EOS_ID] * (m - len(right))
        return tuple(left), tuple(right)

    def observe(self, ids: list[int], spaced_before: list[bool]) -> None:
        for position in range(1, len(ids) + 1):
            left, right = self._grams(ids, position)
            spaced = spaced_before[position - 1]
            for table, gram in ((self._left, left), (self._right, right)):
                cell = table.get(gram)
                if cell is None:
                    cell = table[gram] = [0, 0]
                cell[0] += spaced
                cell[1] += 1

    def space_prob(self, nonspace_ids: list[int], position: int) -> float:
        """Probability of a space before the position-th (1-based)
        character of a space-free id stream."""
        if not 1 <= position <= len(nonspace_ids):
            raise ValueError("boundary index out of range")
        left, right = self._grams(nonspace_ids, position)
        alpha = self.alpha
        s, t = self._left.get(left, (0, 0))
        p_f = (s + alpha) / (t + 2 * alpha)
        s, t = self._right.get(right, (0, 0))
        p_b = (s + alpha) / (t + 2 * alpha)
        joint = p_f * p_b
        return joint / (joint + (1.0 - p_f) * (1.0 - p_b))

    # -- serialization -------------------------------------------------

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("BIDIR v1 %d %r\n" % (self.m, self.alpha))
            for tag, table in (("F", self._left), ("B", self._right)):
                for gram in sorted(table):
                    spaces, total = table[gram]
                    fh.write("%s\t%s\t%d\t%d\n" % (
                        tag, ",".join(map(str, gram)), spaces, total))
            fh.write("# end\n")

    @classmethod
    def load(cls, path: str | Path) -> "BidirSpaceScorer":
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        if not lines:
            raise DataError("empty scorer file")
        head = lines[0].split()
        if len(head) != 4 or head[0] != "BIDIR" or head[1] != "v1":
            raise DataError("not a v1 scorer file")
        scorer = cls(int(head[2]), float(head[3]))
        if lines[-1] != "# end":
            raise DataError("scorer file truncated")
        for line in lines[1:-1]:
            try:
                tag, gram_text, spaces_text, total_text = line.split("\t")
                gram = tuple(int(v) for v in gram_text.split(","))
                cell = [int(spaces_text), int(total_text)]
            except ValueError as exc:
                raise DataError("bad scorer line: %r" % line) from exc
            if tag == "F":
                scorer._left[gram] = cell
            elif tag == "B":
                scorer._right[gram] = cell
            else:
                raise DataError("bad scorer line: %r" % line)
        return scorer


def train_scorer(sequences, vocab: CharVocab, m: int = 5,
                 alpha: float = 1.0) -> BidirSpaceScorer:
    """Record spacing evidence from every boundary of every line."""
    scorer = BidirSpaceScorer(m, alpha)
    for seq in sequences:
        stream, before = space_profile(seq)
        if not stream:
            continue
        ids = [vocab.id_of(c) for c in stream]
        scorer.observe(ids, before)
    return scorer
