"""Deterministic synthetic text generation from a lexicon.

Words are fixture roots plus suffix chains realized through the phonology
rules, so generated text is fully lexicon-covered and round-trips losslessly.
Used for round-trip property tests, BPE training material, and the throughput
corpus.
"""

from __future__ import annotations

import random
from typing import Union

from .decoder import realize_word_pieces
from .lexicon import Lexicon, upper_first

_END = (".", ".", ".", "!", "?")


def random_word(rng: random.Random, lex: Lexicon, max_suffixes: int = 3) -> str:
    entry = rng.choice(lex.roots)
    depth = rng.choices(range(max_suffixes + 1), weights=(30, 40, 22, 8))[0]
    groups = [rng.choice(lex.affixes) for _ in range(depth)]
    return "".join(realize_word_pieces(entry, groups, lex.phonology))


def random_sentence(
    rng: random.Random, lex: Lexicon, rich_whitespace: bool = False
) -> str:
    """One sentence; with ``rich_whitespace`` also tabs, newlines, runs of
    spaces, and random mid-sentence capitalization."""
    words = [random_word(rng, lex) for _ in range(rng.randint(3, 9))]
    words[0] = upper_first(words[0])
    parts = [words[0]]
    for word in words[1:]:
        if rich_whitespace:
            sep = rng.choices((" ", "  ", "\t", "\n", " "), weights=(70, 10, 8, 8, 4))[0]
            if rng.random() < 0.15:
                word = upper_first(word)
        else:
            sep = " "
        if rng.random() < 0.08:
            parts.append(",")
        parts.append(sep)
        parts.append(word)
    parts.append(rng.choice(_END))
    return "".join(parts)


def generate_corpus(
    lex: Lexicon,
    target_chars: int,
    seed: Union[int, random.Random] = 0,
    rich_whitespace: bool = False,
) -> str:
    """Newline-separated sentences totalling at least ``target_chars``."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    parts: list[str] = []
    total = 0
    while total < target_chars:
        sentence = random_sentence(rng, lex, rich_whitespace)
        parts.append(sentence)
        total += len(sentence) + 1
    return "\n".join(parts) + "\n"
