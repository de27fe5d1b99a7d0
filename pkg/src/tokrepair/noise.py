"""Synthetic OCR and typo noise for benchmark generation.

Every injector owns a `random.Random`; identical seeds give identical
byte output.  Benchmark generation derives one RNG per record (base seed
XOR record index) so records never share random state.
"""
from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import strip_spaces
from .errors import DataError

EPS_FIELD = "<eps>"  # empty rule field marker in TSV files


@dataclass(frozen=True)
class ReplacementRule:
    """Replace `source` with `target`; `frequency` weights the draw when
    several rules match the same position."""
    source: str
    target: str
    frequency: int

    def __post_init__(self):
        if not self.source and not self.target:
            raise ValueError("rule replaces nothing with nothing")
        if " " in self.source or " " in self.target:
            raise ValueError("rules must not contain spaces")
        if self.frequency <= 0:
            raise ValueError("rule frequency must be positive")


@dataclass(frozen=True)
class SpanPoint:
    """Jointly sampled error-span profile: how long a noisy span runs and
    its per-character space and replacement rates."""
    length: int
    ins_rate: float
    del_rate: float
    repl_rate: float


# stand-in profiles for span sampling; real scans can be measured and
# loaded instead
DEFAULT_SPAN_POINTS = (
    SpanPoint(1, 0.00, 0.08, 0.03),
    SpanPoint(1, 0.04, 0.00, 0.06),
    SpanPoint(2, 0.02, 0.05, 0.05),
    SpanPoint(2, 0.00, 0.00, 0.10),
    SpanPoint(2, 0.05, 0.03, 0.02),
    SpanPoint(3, 0.02, 0.02, 0.07),
    SpanPoint(3, 0.03, 0.06, 0.04),
    SpanPoint(4, 0.01, 0.03, 0.06),
    SpanPoint(4, 0.00, 0.05, 0.03),
    SpanPoint(5, 0.03, 0.02, 0.05),
)

# common OCR confusions, weighted roughly by how often scanners make them
DEFAULT_RULES = (
    ReplacementRule("h", "il", 700),
    ReplacementRule("m", "rn", 650),
    ReplacementRule("l", "1", 500),
    ReplacementRule("i", "l", 450),
    ReplacementRule("e", "c", 400),
    ReplacementRule("o", "0", 300),
    ReplacementRule("c", "e", 300),
    ReplacementRule("a", "o", 250),
    ReplacementRule("u", "v", 200),
    ReplacementRule("w", "vv", 150),
    ReplacementRule("t", "f", 120),
    ReplacementRule("d", "cl", 100),
    ReplacementRule("f", "", 60),
    ReplacementRule("", ".", 40),
)


@dataclass
class OcrNoiseSpec:
    hyphen_prob: float = 0.035
    span_start_prob: float = 0.058
    span_points: tuple[SpanPoint, ...] = DEFAULT_SPAN_POINTS
    rules: tuple[ReplacementRule, ...] = DEFAULT_RULES
    seed: int = 0


@dataclass
class TypoNoiseSpec:
    misspell_prob: float = 0.10
    misspellings: dict[str, list[str]] = field(default_factory=dict)
    space_error_rate: float = 0.01  # expected space edits per token
    random_edit_prob: float = 0.0   # per-word chance of a random typo
    seed: int = 0


@dataclass
class NoiseStats:
    """Event counters an injector fills in when given one."""
    tokens: int = 0
    span_starts: int = 0
    hyphenations: int = 0
    misspellings: int = 0
    random_edits: int = 0
    space_insertions: int = 0
    space_deletions: int = 0
    char_replacements: int = 0


def _rule_index(rules):
    by_first: dict[str, list[ReplacementRule]] = {}
    insertions: list[ReplacementRule] = []
    for rule in rules:
        if rule.source:
            by_first.setdefault(rule.source[0], []).append(rule)
        else:
            insertions.append(rule)
    return by_first, insertions


def _replace_chars(token, by_first, insertions, rate, rng, stats):
    """Independent per-character replacement events, frequency-weighted
    among the rules whose source matches at the position."""
    out = []
    i = 0
    while i < len(token):
        if rng.random() < rate:
            matches = [r for r in by_first.get(token[i], ())
                       if token.startswith(r.source, i)]
            matches.extend(insertions)
            if matches:
                rule = rng.choices(matches,
                                   weights=[r.frequency for r in matches])[0]
                if stats:
                    stats.char_replacements += 1
                if rule.source:
                    out.append(rule.target)
                    i += len(rule.source)
                    continue
                out.append(rule.target)
        out.append(token[i])
        i += 1
    return "".join(out)


def _insert_spaces(token, rate, rng, stats):
    parts = [token[0]] if token else []
    for ch in token[1:]:
        if rng.random() < rate:
            parts.append(" ")
            if stats:
                stats.space_insertions += 1
        parts.append(ch)
    return "".join(parts)


def inject_ocr(text: str, spec: OcrNoiseSpec, rng: random.Random | None = None,
               stats: NoiseStats | None = None) -> str:
    """OCR-style corruption: occasional mid-word hyphen breaks, and error
    spans whose length and rates are drawn jointly from `span_points`.
    Span deletions target the separator after each covered token."""
    if rng is None:
        rng = random.Random(spec.seed)
    if not text:
        return text
    by_first, insertions = _rule_index(spec.rules)

    hyphenated: list[str] = []
    for token in text.split(" "):
        if len(token) >= 4 and rng.random() < spec.hyphen_prob:
            at = rng.randrange(1, len(token))
            token = token[:at] + "- " + token[at:]
            if stats:
                stats.hyphenations += 1
                stats.space_insertions += 1
        hyphenated.append(token)
    tokens = " ".join(hyphenated).split(" ")

    span_left = 0
    point = None
    out: list[str] = []
    drop_sep = [False] * len(tokens)
    for index, token in enumerate(tokens):
        if stats:
            stats.tokens += 1
        if rng.random() < spec.span_start_prob:
            point = spec.span_points[rng.randrange(len(spec.span_points))]
            span_left = point.length
            if stats:
                stats.span_starts += 1
        if span_left > 0:
            token = _replace_chars(token, by_first, insertions,
                                   point.repl_rate, rng, stats)
            token = _insert_spaces(token, point.ins_rate, rng, stats)
            if index + 1 < len(tokens) and rng.random() < point.del_rate:
                drop_sep[index] = True
                if stats:
                    stats.space_deletions += 1
            span_left -= 1
        out.append(token)
    parts = [out[0]]
    for index in range(1, len(out)):
        if not drop_sep[index - 1]:
            parts.append(" ")
        parts.append(out[index])
    return "".join(parts)


def _random_edit(word, rng):
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    ops = ["insert", "replace"]
    if len(word) >= 2:
        ops += ["delete", "swap"]
    op = ops[rng.randrange(len(ops))]
    if op == "insert":
        at = rng.randrange(len(word) + 1)
        return word[:at] + alphabet[rng.randrange(26)] + word[at:]
    if op == "replace":
        at = rng.randrange(len(word))
        return word[:at] + alphabet[rng.randrange(26)] + word[at + 1:]
    if op == "delete":
        at = rng.randrange(len(word))
        return word[:at] + word[at + 1:]
    at = rng.randrange(len(word) - 1)
    return word[:at] + word[at + 1] + word[at] + word[at + 2:]


def inject_typos(text: str, spec: TypoNoiseSpec,
                 rng: random.Random | None = None,
                 stats: NoiseStats | None = None) -> str:
    """Human-style corruption: table misspellings, optional random
    spelling errors, then one Bernoulli space edit per token (split at a
    uniform interior position, or merge with the next token)."""
    if rng is None:
        rng = random.Random(spec.seed)
    if not text:
        return text
    words = text.split(" ")
    for i, word in enumerate(words):
        if stats:
            stats.tokens += 1
        if rng.random() < spec.misspell_prob:
            options = spec.misspellings.get(word)
            if options:
                words[i] = options[rng.randrange(len(options))]
                if stats:
                    stats.misspellings += 1
        if spec.random_edit_prob and rng.random() < spec.random_edit_prob:
            words[i] = _random_edit(words[i], rng)
            if stats:
                stats.random_edits += 1

    split_at = [0] * len(words)  # 0 = no split
    merge_next = [False] * len(words)
    for i, word in enumerate(words):
        if rng.random() >= spec.space_error_rate:
            continue
        can_split = len(word) >= 2
        can_merge = i + 1 < len(words)
        if can_split and can_merge:
            do_split = rng.random() < 0.5
        elif can_split or can_merge:
            do_split = can_split
        else:
            continue
        if do_split:
            split_at[i] = rng.randrange(1, len(word))
            if stats:
                stats.space_insertions += 1
        else:
            merge_next[i] = True
            if stats:
                stats.space_deletions += 1

    parts: list[str] = []
    for i, word in enumerate(words):
        if split_at[i]:
            word = word[:split_at[i]] + " " + word[split_at[i]:]
        parts.append(word)
        if i + 1 < len(words) and not merge_next[i]:
            parts.append(" ")
    return "".join(parts)


def inject_training_noise(text: str, rules=DEFAULT_RULES,
                          char_error_prob: float = 0.10,
                          random_edit_prob: float = 0.02,
                          rng: random.Random | None = None,
                          stats: NoiseStats | None = None) -> str:
    """Character noise for model training: uniform per-character
    replacements plus occasional random spelling errors, but never any
    space errors, so spacing statistics stay clean."""
    if rng is None:
        rng = random.Random(0)
    by_first, insertions = _rule_index(rules)
    words = text.split(" ")
    for i, word in enumerate(words):
        word = _replace_chars(word, by_first, insertions, char_error_prob,
                              rng, stats)
        if random_edit_prob and word and rng.random() < random_edit_prob:
            word = _random_edit(word, rng)
            if stats:
                stats.random_edits += 1
        words[i] = word
    return " ".join(w for w in words if w)


def remove_all_spaces(text: str) -> str:
    return strip_spaces(text)


OCR = "ocr"
TYPO = "typo"
NOSPACE = "nospace"


def generate_benchmark(truths, spec, kind: str) -> list[tuple[str, str]]:
    """Corrupt every truth line into a (corrupt, truth) record.  Each
    record uses its own RNG seeded with spec.seed XOR its index, so the
    output is reproducible and order-independent."""
    if kind not in (OCR, TYPO, NOSPACE):
        raise ValueError("unknown benchmark kind %r" % kind)
    records = []
    stats = NoiseStats()
    for index, truth in enumerate(truths):
        rng = random.Random((spec.seed if spec else 0) ^ index)
        if kind == OCR:
            corrupt = inject_ocr(truth, spec, rng, stats)
        elif kind == TYPO:
            corrupt = inject_typos(truth, spec, rng, stats)
        else:
            corrupt = truth
            if isinstance(spec, TypoNoiseSpec) and spec.misspellings:
                quiet = dataclasses.replace(spec, space_error_rate=0.0)
                corrupt = inject_typos(corrupt, quiet, rng, stats)
            corrupt = remove_all_spaces(corrupt)
        records.append((corrupt, truth))
    return records


# -- file formats ------------------------------------------------------

def load_rules(path: str | Path) -> list[ReplacementRule]:
    """TSV rules: source, target, frequency; `<eps>` marks an empty field."""
    rules = []
    with open(path, encoding="utf-8") as fh:
        for number, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise DataError("rule line %d needs 3 fields" % number)
            source = "" if fields[0] == EPS_FIELD else fields[0]
            target = "" if fields[1] == EPS_FIELD else fields[1]
            try:
                rules.append(ReplacementRule(source, target, int(fields[2])))
            except ValueError as exc:
                raise DataError("bad rule on line %d: %s" % (number, exc)) from exc
    return rules


def save_rules(path: str | Path, rules) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rule in rules:
            fh.write("%s\t%s\t%d\n" % (rule.source or EPS_FIELD,
                                       rule.target or EPS_FIELD,
                                       rule.frequency))


def load_misspellings(path: str | Path) -> dict[str, list[str]]:
    """TSV pairs: word, misspelling.  Misspellings containing spaces are
    dropped because they would smuggle in tokenization errors."""
    table: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for number, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise DataError("misspelling line %d needs 2 fields" % number)
            word, wrong = fields
            if " " in wrong or not wrong:
                continue
            table.setdefault(word, []).append(wrong)
    return table


def save_misspellings(path: str | Path, table: dict[str, list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for word in sorted(table):
            for wrong in table[word]:
                fh.write("%s\t%s\n" % (word, wrong))
