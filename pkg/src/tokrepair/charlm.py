"""Interpolated character n-gram language models.

Probabilities mix maximum-likelihood estimates of every order 1..n with
weights proportional to 2^k, normalized so that 1% of the mass is left
for a uniform floor over the vocabulary.  Orders whose context was never
seen contribute nothing; their weight falls through to the floor, so the
distribution over the vocabulary always sums to one.
"""
from __future__ import annotations

from pathlib import Path

from .corpus import CharVocab, EOS_ID, RESERVED, SOS_ID
from .errors import DataError

FORWARD = "forward"
BACKWARD = "backward"

UNIFORM_WEIGHT = 0.01

# query memo entries are cheap but unbounded input can accumulate; reset
# the cache once it reaches this many entries
_MEMO_LIMIT = 2_000_000


def interpolation_weights(order: int) -> list[float]:
    """Weight of each order 1..n, doubling per order; index 0 is unused."""
    scale = (1.0 - UNIFORM_WEIGHT) / sum(2.0 ** k for k in range(1, order + 1))
    return [0.0] + [scale * 2.0 ** k for k in range(1, order + 1)]


class NgramCharModel:
    """Count-based n-gram model over vocabulary symbol ids.

    Context keys are tuples of ids of length k-1 for order k; the count
    table is keyed by context + (symbol,) so the key length alone
    identifies the order.
    """

    def __init__(self, vocab: CharVocab, order: int, direction: str = FORWARD):
        if order < 2:
            raise ValueError("order must be at least 2")
        if direction not in (FORWARD, BACKWARD):
            raise ValueError("direction must be %r or %r" % (FORWARD, BACKWARD))
        self.vocab = vocab
        self.order = order
        self.direction = direction
        self.weights = interpolation_weights(order)
        self._counts: dict[tuple[int, ...], int] = {}
        self._totals: dict[tuple[int, ...], int] = {}
        self._memo: dict[tuple[int, ...], float] = {}

    # -- training ------------------------------------------------------

    def observe(self, line: str) -> None:
        """Count all n-grams of one line (reversed first for a backward
        model).  The left context is padded with SOS so short histories
        are learned; EOS is counted as an ordinary final symbol."""
        if self.direction == BACKWARD:
            line = line[::-1]
        ids = self.vocab.encode(line)
        padded = [SOS_ID] * (self.order - 1) + ids[1:]
        counts, totals = self._counts, self._totals
        first = self.order - 1
        for i in range(first, len(padded)):
            symbol = padded[i]
            for k in range(self.order):
                ctx = tuple(padded[i - k:i])
                counts[ctx + (symbol,)] = counts.get(ctx + (symbol,), 0) + 1
                totals[ctx] = totals.get(ctx, 0) + 1
        self._memo.clear()

    # -- queries -------------------------------------------------------

    def _canonical(self, context) -> tuple[int, ...]:
        want = self.order - 1
        ctx = tuple(context[-want:]) if context else ()
        if len(ctx) < want:
            ctx = (SOS_ID,) * (want - len(ctx)) + ctx
        return ctx

    def prob_next(self, context, symbol: int) -> float:
        """Interpolated probability of `symbol` after `context` (a sequence
        of symbol ids; shorter histories are SOS-padded, longer ones are
        truncated to the model order)."""
        ctx = self._canonical(context)
        key = ctx + (symbol,)
        memo = self._memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        counts, totals, weights = self._counts, self._totals, self.weights
        skip = len(ctx)
        prob = 0.0
        floor_mass = UNIFORM_WEIGHT
        for k in range(1, self.order + 1):
            sub = ctx[skip - (k - 1):] if k > 1 else ()
            total = totals.get(sub)
            if total:
                prob += weights[k] * counts.get(sub + (symbol,), 0) / total
            else:
                floor_mass += weights[k]
        prob += floor_mass / len(self.vocab)
        if len(memo) >= _MEMO_LIMIT:
            memo.clear()
        memo[key] = prob
        return prob

    def prob_space_then_char(self, context, symbol: int) -> float:
        """Probability of emitting a space and then `symbol`: the product
        of the two chained queries."""
        if self.direction != FORWARD:
            raise ValueError("space-then-char queries need a forward model")
        ctx = self._canonical(context)
        space = self.vocab.space_id
        return self.prob_next(ctx[1:] + (space,), symbol) * self.prob_next(ctx, space)

    def clear_cache(self) -> None:
        self._memo.clear()

    # -- serialization -------------------------------------------------

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("NGRAM v1 %d %s %d\n" % (self.order, self.direction, len(self.vocab)))
            for line in self.vocab.to_lines():
                fh.write(line + "\n")
            for key in sorted(self._counts):
                ctx, symbol = key[:-1], key[-1]
                fh.write("%s\t%d\t%d\n" % (
                    ",".join(map(str, ctx)), symbol, self._counts[key]))
            fh.write("# end\n")

    @classmethod
    def load(cls, path: str | Path) -> "NgramCharModel":
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        if not lines:
            raise DataError("empty model file")
        head = lines[0].split()
        if len(head) != 5 or head[0] != "NGRAM" or head[1] != "v1":
            raise DataError("not a v1 n-gram model file")
        order, direction, vocab_size = int(head[2]), head[3], int(head[4])
        n_chars = vocab_size - RESERVED
        if len(lines) < 1 + n_chars:
            raise DataError("model file truncated in vocabulary")
        vocab = CharVocab.from_lines(lines[1:1 + n_chars])
        model = cls(vocab, order, direction)
        if not lines or lines[-1] != "# end":
            raise DataError("model file truncated")
        for line in lines[1 + n_chars:-1]:
            try:
                ctx_text, symbol_text, count_text = line.split("\t")
                ctx = tuple(int(v) for v in ctx_text.split(",")) if ctx_text else ()
                symbol, count = int(symbol_text), int(count_text)
            except ValueError as exc:
                raise DataError("bad count line: %r" % line) from exc
            model._counts[ctx + (symbol,)] = count
            model._totals[ctx] = model._totals.get(ctx, 0) + count
        return model


def train(sequences, vocab: CharVocab, order: int = 6,
          direction: str = FORWARD) -> NgramCharModel:
    """Count n-grams over a corpus of normalized lines."""
    model = NgramCharModel(vocab, order, direction)
    for seq in sequences:
        model.observe(seq)
    if not model._counts:
        raise DataError("no training material")
    return model
