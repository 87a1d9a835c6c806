"""Byte-pair-encoding fallback segmenter.

Symbols are Unicode scalar values, not bytes: the lexicon operates on
characters and byte-level merges would split multi-byte Turkish letters.
Words are already isolated by the encoder, so no end-of-word marker is used.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path
from typing import IO, Iterable, Union

BPE_FORMAT_VERSION = 1


class BpeError(ValueError):
    """Invalid training input or malformed model file."""


class BpeModel:
    """Ordered merge rules plus the subword vocabulary they induce.

    Immutable after construction; safe for concurrent segmentation.
    """

    def __init__(self, alphabet: tuple[str, ...], merges: tuple[tuple[str, str], ...]):
        self.alphabet = alphabet
        self.merges = merges
        self._ranks = {pair: rank for rank, pair in enumerate(merges)}
        # Vocabulary order: alphabet first, then merge outputs by rank,
        # skipping surfaces already present. Subword IDs are implicit from
        # this order within the BPE ID range.
        vocab: list[str] = list(alphabet)
        seen = set(alphabet)
        for left, right in merges:
            joined = left + right
            if joined not in seen:
                seen.add(joined)
                vocab.append(joined)
        self.vocab = tuple(vocab)
        self._vocab_index = {s: i for i, s in enumerate(self.vocab)}

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, surface: str) -> bool:
        return surface in self._vocab_index

    def index(self, surface: str) -> int:
        return self._vocab_index[surface]

    def save(self, path: Union[str, Path]) -> None:
        doc = {
            "format_version": BPE_FORMAT_VERSION,
            "alphabet": list(self.alphabet),
            "merges": [list(pair) for pair in self.merges],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, ensure_ascii=False, indent=1)
            fh.write("\n")


def load_bpe(source: Union[str, Path, IO[bytes], IO[str]]) -> BpeModel:
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            doc = json.load(fh)
    else:
        doc = json.load(source)
    if not isinstance(doc, dict) or doc.get("format_version") != BPE_FORMAT_VERSION:
        raise BpeError(
            f"unsupported or missing format_version (expected {BPE_FORMAT_VERSION})"
        )
    alphabet = tuple(doc.get("alphabet", ()))
    merges = []
    for i, pair in enumerate(doc.get("merges", ())):
        if not isinstance(pair, list) or len(pair) != 2:
            raise BpeError(f"merges[{i}]: expected a [left, right] pair")
        merges.append((pair[0], pair[1]))
    return BpeModel(alphabet, tuple(merges))


def train_bpe(corpus: Iterable[tuple[str, int]], target_size: int) -> BpeModel:
    """Train merges by iterative most-frequent adjacent-pair merging.

    ``corpus`` yields (word, count) pairs. Deterministic: frequency ties break
    lexicographically on the (left, right) pair. Stops when the vocabulary
    reaches ``target_size`` or no pair occurs at least twice.
    """
    words: list[tuple[list[str], int]] = []
    counts: Counter = Counter()
    for word, count in corpus:
        if count <= 0:
            continue
        counts[word] += count
    for word, count in counts.items():
        words.append((list(word), count))
    if not words:
        raise BpeError("empty corpus")

    alphabet = tuple(sorted({ch for word, _ in words for ch in word}))
    if target_size < len(alphabet):
        raise BpeError(
            f"target_size {target_size} below alphabet size {len(alphabet)}"
        )

    vocab = set(alphabet)
    merges: list[tuple[str, str]] = []
    while len(vocab) < target_size:
        pair_counts: Counter = Counter()
        for symbols, count in words:
            for pair in zip(symbols, symbols[1:]):
                pair_counts[pair] += count
        if not pair_counts:
            break
        best = min(pair_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        (left, right), freq = best
        if freq < 2:
            break
        merges.append((left, right))
        joined = left + right
        vocab.add(joined)
        for symbols, _ in words:
            _merge_in_place(symbols, left, right, joined)

    return BpeModel(alphabet, tuple(merges))


def _merge_in_place(symbols: list[str], left: str, right: str, joined: str) -> None:
    i = 0
    out = 0
    n = len(symbols)
    while i < n:
        if i + 1 < n and symbols[i] == left and symbols[i + 1] == right:
            symbols[out] = joined
            i += 2
        else:
            symbols[out] = symbols[i]
            i += 1
        out += 1
    del symbols[out:]


def bpe_segment(word: str, model: BpeModel) -> list[str]:
    """Split ``word`` into subwords by applying merges in rank order.

    Concatenation of the output always equals the input; characters outside
    the training alphabet survive as single out-of-vocabulary symbols for the
    caller to handle.
    """
    symbols = list(word)
    ranks = model._ranks
    while len(symbols) >= 2:
        best_rank = None
        best_pair = None
        for pair in zip(symbols, symbols[1:]):
            rank = ranks.get(pair)
            if rank is not None and (best_rank is None or rank < best_rank):
                best_rank = rank
                best_pair = pair
        if best_pair is None:
            break
        left, right = best_pair
        _merge_in_place(symbols, left, right, left + right)
    return symbols
