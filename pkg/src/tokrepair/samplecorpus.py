"""Deterministic generator of plain English sentences.

Ships with the toolkit so models can be trained and benchmarked without
any external download: the sentences are original, formulaic prose over
a small rural vocabulary, free to use for any purpose.  One seed always
yields the same corpus.
"""
from __future__ import annotations

import random

ADJECTIVES = (
    "old", "young", "quiet", "tired", "heavy", "light", "narrow", "wide",
    "bright", "dark", "gentle", "patient", "careful", "curious", "distant",
    "early", "late", "cold", "warm", "dusty", "silver", "wooden", "broken",
    "faded", "steady", "slow", "quick", "small", "large", "pleasant",
)

PEOPLE = (
    "fisherman", "teacher", "carpenter", "doctor", "sailor", "farmer",
    "painter", "neighbour", "traveller", "shepherd", "merchant", "student",
    "gardener", "miller", "baker", "clerk", "soldier", "weaver", "stranger",
    "child",
)

THINGS = (
    "basket", "lantern", "ladder", "letter", "bucket", "bottle", "blanket",
    "candle", "hammer", "kettle", "mirror", "needle", "parcel", "ribbon",
    "saddle", "shovel", "wagon", "whistle", "book", "map", "coat", "boot",
    "rope", "bell", "coin", "jar", "loaf", "net", "chair", "basin",
)

PLACES = (
    "village", "harbour", "meadow", "orchard", "market", "garden", "kitchen",
    "stable", "chapel", "cottage", "bridge", "forest", "valley", "river",
    "hillside", "courtyard", "workshop", "cellar", "attic", "lane",
)

VERBS_T = (
    "carried", "lifted", "mended", "painted", "borrowed", "counted",
    "gathered", "followed", "watched", "cleaned", "folded", "opened",
    "closed", "dropped", "filled", "emptied", "covered", "measured",
    "weighed", "traded", "bought", "sold", "found", "lost", "kept",
)

VERBS_I = (
    "walked", "waited", "rested", "slept", "smiled", "listened", "whistled",
    "wandered", "stumbled", "hurried", "paused", "turned", "knelt",
    "shivered", "yawned",
)

ADVERBS = (
    "slowly", "quietly", "carefully", "gladly", "barely", "nearly", "often",
    "seldom", "finally", "suddenly", "gently", "patiently", "briskly",
    "calmly", "eagerly",
)

PREPOSITIONS = (
    "along", "across", "behind", "beside", "beneath", "near", "past",
    "through", "toward", "under", "over", "around",
)

TIMES = (
    "in the morning", "before dawn", "after supper", "at noon",
    "during the storm", "all afternoon", "every evening", "that winter",
    "last spring", "by lamplight",
)

CLAUSES = (
    "while the rain fell", "when the bell rang", "as the sun rose",
    "because the road was muddy", "although the wind was cold",
    "until the light faded", "after the work was done",
    "before the frost came", "while the kettle boiled",
    "when the tide went out",
)


def _article(rng, noun_phrase: str) -> str:
    choice = rng.random()
    if choice < 0.55:
        return "the"
    if choice < 0.85:
        return "an" if noun_phrase[0] in "aeiou" else "a"
    return "that" if rng.random() < 0.5 else "every"


def _noun_phrase(rng, pool) -> str:
    if rng.random() < 0.7:
        head = "%s %s" % (rng.choice(ADJECTIVES), rng.choice(pool))
    else:
        head = rng.choice(pool)
    return "%s %s" % (_article(rng, head), head)


def generate_sentence(rng: random.Random) -> str:
    shape = rng.randrange(7)
    if shape == 0:
        body = "%s %s %s %s the %s" % (
            _noun_phrase(rng, PEOPLE), rng.choice(VERBS_T),
            _noun_phrase(rng, THINGS), rng.choice(PREPOSITIONS),
            rng.choice(PLACES))
    elif shape == 1:
        body = "%s, %s %s %s %s the %s" % (
            rng.choice(TIMES), _noun_phrase(rng, PEOPLE),
            rng.choice(VERBS_I), rng.choice(ADVERBS),
            rng.choice(PREPOSITIONS), rng.choice(PLACES))
    elif shape == 2:
        body = "%s and %s %s %s together" % (
            _noun_phrase(rng, PEOPLE), _noun_phrase(rng, PEOPLE),
            rng.choice(VERBS_T), _noun_phrase(rng, THINGS))
    elif shape == 3:
        body = "%s %s %s %s" % (
            _noun_phrase(rng, PEOPLE), rng.choice(VERBS_I),
            rng.choice(ADVERBS), rng.choice(CLAUSES))
    elif shape == 4:
        body = "%s in the %s was %s and %s" % (
            _noun_phrase(rng, THINGS), rng.choice(PLACES),
            rng.choice(ADJECTIVES), rng.choice(ADJECTIVES))
    elif shape == 5:
        body = "%s, %s %s %s %s" % (
            rng.choice(CLAUSES), _noun_phrase(rng, PEOPLE),
            rng.choice(VERBS_T), _noun_phrase(rng, THINGS),
            rng.choice(ADVERBS))
    else:
        body = "%s %s %s %s %s the %s" % (
            _noun_phrase(rng, PEOPLE), rng.choice(ADVERBS),
            rng.choice(VERBS_T), _noun_phrase(rng, THINGS),
            rng.choice(PREPOSITIONS), rng.choice(PLACES))
    return body[0].upper() + body[1:] + "."


def generate_corpus(n_sentences: int, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    return [generate_sentence(rng) for _ in range(n_sentences)]
