"""Hybrid morphological tokenizer for agglutinative languages.

Rule-based root/affix segmentation with phonological normalization, BPE
fallback for out-of-lexicon words, reversible decoding, and linguistic
token-quality metrics.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Union

from .bpe import BpeModel, bpe_segment, load_bpe, train_bpe
from .decoder import (
    DecodeError,
    decode,
    realize_root,
    realize_suffix,
    render_surfaces,
    resolve_token,
)
from .encoder import EncodedText, TokenKind, encode, encode_word, preprocess
from .lexicon import (
    Lexicon,
    LexiconError,
    PhonologyRules,
    load_lexicon,
    longest_root_prefix,
    match_suffix,
    normalize_root_id,
)
from .metrics import MetricsReport, TokenDump, compare, compute_metrics, judge_token

__version__ = "0.1.0"

DATA_DIR = Path(__file__).parent / "data"
BUNDLED_LEXICON = DATA_DIR / "lexicon.json"
BUNDLED_BPE = DATA_DIR / "bpe.json"


class Tokenizer:
    """Convenience facade binding a Lexicon and BpeModel together.

    Holds a word-level memo so repeated words skip re-segmentation; the
    underlying data is immutable, so instances are safe for concurrent reads.
    """

    def __init__(self, lexicon: Lexicon, bpe: Optional[BpeModel] = None):
        if bpe is not None and len(bpe) > lexicon.bpe_block:
            raise LexiconError(
                f"BPE vocabulary ({len(bpe)}) exceeds the lexicon's bpe_block "
                f"({lexicon.bpe_block})"
            )
        self.lexicon = lexicon
        self.bpe = bpe
        self._word_cache: dict = {}

    _BUNDLED = object()  # sentinel: bundled BPE only with the bundled lexicon

    @classmethod
    def load(
        cls,
        lexicon_path: Union[str, Path, None] = None,
        bpe_path: Union[str, Path, None, object] = _BUNDLED,
    ) -> "Tokenizer":
        lexicon = load_lexicon(lexicon_path or BUNDLED_LEXICON)
        if bpe_path is cls._BUNDLED:
            bpe_path = BUNDLED_BPE if lexicon_path is None else None
        bpe = load_bpe(bpe_path) if bpe_path is not None else None
        return cls(lexicon, bpe)

    @property
    def rules(self) -> PhonologyRules:
        return self.lexicon.phonology

    @property
    def vocab_size(self) -> int:
        """Number of assigned IDs (unused BPE reserve excluded)."""
        layout = self.lexicon.id_layout
        used_bpe = len(self.bpe) if self.bpe is not None else 0
        return layout.total - self.lexicon.bpe_block + used_bpe

    def encode(self, text: str) -> EncodedText:
        return encode(text, self.lexicon, self.bpe, word_cache=self._word_cache)

    def encode_surfaces(self, text: str) -> list[str]:
        return render_surfaces(self.encode(text), self.lexicon, self.bpe, self.rules)

    def decode(self, encoded: Union[EncodedText, Sequence[int]]) -> str:
        ids = encoded if isinstance(encoded, EncodedText) else list(encoded)
        return decode(ids, self.lexicon, self.bpe, self.rules)

    def surfaces(self, encoded: Union[EncodedText, Sequence[int]]) -> list[str]:
        ids = encoded if isinstance(encoded, EncodedText) else list(encoded)
        return render_surfaces(ids, self.lexicon, self.bpe, self.rules)

    def surfaces_to_ids(self, tokens: Sequence[str]) -> list[int]:
        """Map surface tokens back to IDs (inverse of encode_surfaces).

        Priority on ambiguous surfaces: special label, root variant, affix
        allomorph (lowest group ID), char, BPE subword.
        """
        lex = self.lexicon
        ids = []
        for pos, token in enumerate(tokens):
            tid = self._surface_to_id(token)
            if tid is None:
                raise DecodeError(f"unresolvable surface {token!r}", pos)
            ids.append(tid)
        return ids

    def _surface_to_id(self, token: str) -> Optional[int]:
        lex = self.lexicon
        if token.startswith("<") and token.endswith(">"):
            label = token[1:-1]
            if label == "unk":
                label = "unknown"
            if label in {s.label for s in lex.specials}:
                return lex.special(label).id
        entry = lex.root_for_surface(token)
        if entry is not None:
            return entry.id
        groups = lex.groups_for_allomorph(token)
        if groups:
            return min(g.id for g in groups)
        if len(token) == 1:
            cid = lex.char_id(token)
            if cid is not None:
                return cid
        if self.bpe is not None and token in self.bpe:
            return lex.id_layout.bpe.start + self.bpe.index(token)
        return None

    def metrics(self, tokens: Sequence[str], name: str = "morphotok") -> MetricsReport:
        return compute_metrics(TokenDump(name, list(tokens)), self.lexicon)


__all__ = [
    "BUNDLED_BPE",
    "BUNDLED_LEXICON",
    "BpeModel",
    "DecodeError",
    "EncodedText",
    "Lexicon",
    "LexiconError",
    "MetricsReport",
    "PhonologyRules",
    "TokenDump",
    "TokenKind",
    "Tokenizer",
    "bpe_segment",
    "compare",
    "compute_metrics",
    "decode",
    "encode",
    "encode_word",
    "judge_token",
    "load_bpe",
    "load_lexicon",
    "longest_root_prefix",
    "match_suffix",
    "normalize_root_id",
    "preprocess",
    "realize_root",
    "realize_suffix",
    "render_surfaces",
    "resolve_token",
    "train_bpe",
]
