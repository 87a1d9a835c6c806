"""Shared token types used by both the encoder and decoder."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TokenKind(str, Enum):
    SPECIAL = "special"
    ROOT = "root"
    SUFFIX = "suffix"
    BPE_SUBWORD = "bpe"
    CHAR = "char"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class EncodedText:
    ids: tuple[int, ...]
    provenance: tuple[TokenKind, ...]

    def __post_init__(self):
        if len(self.ids) != len(self.provenance):
            raise ValueError("ids and provenance must have equal length")

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self):
        return iter(zip(self.ids, self.provenance))
