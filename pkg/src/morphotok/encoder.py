"""Encoding pipeline: preprocessing into word/special/char segments, then
per-word segmentation following the decision flow: whole-word root, longest
root prefix plus suffix chain, remainder-root, and finally BPE fallback.

Root/suffix analyses are accepted only when the decoder's phonological
realization of the chosen IDs reproduces the word exactly; everything else
falls through to BPE, which is verbatim and therefore always lossless.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Optional

from .bpe import BpeModel, bpe_segment
from .decoder import realize_root, realize_suffix, realize_word_pieces
from .lexicon import (
    SPECIAL_CHARS,
    AffixGroup,
    Lexicon,
    fold_case,
    iter_root_prefixes,
    match_suffix,
    upper_first,
)
from .tokens import EncodedText, TokenKind

_CHAR_SPECIALS = {char: label for label, char in SPECIAL_CHARS.items()}


@dataclass(frozen=True)
class PreSegment:
    kind: str  # "word" | "special" | "char"
    payload: str
    uppercase: bool = False


def preprocess(text: str) -> list[PreSegment]:
    """Split NFC-normalized text into word, special, and char segments.

    Each space/newline/tab becomes one special segment per occurrence; runs of
    alphanumeric characters become word payloads (lowercased, with a flag when
    the word began with a capital); everything else becomes char segments.
    """
    text = unicodedata.normalize("NFC", text)
    segments: list[PreSegment] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        label = _CHAR_SPECIALS.get(ch)
        if label is not None:
            segments.append(PreSegment("special", label))
            i += 1
        elif ch.isalnum():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            raw = text[i:j]
            segments.append(
                PreSegment("word", fold_case(raw), uppercase=raw[0].isupper())
            )
            i = j
        else:
            segments.append(PreSegment("char", ch))
            i += 1
    return segments


def reassemble(segments: list[PreSegment]) -> str:
    """Inverse of preprocess for texts within its case-fidelity contract."""
    out = []
    for seg in segments:
        if seg.kind == "special":
            out.append(SPECIAL_CHARS.get(seg.payload, ""))
        elif seg.kind == "word":
            out.append(upper_first(seg.payload) if seg.uppercase else seg.payload)
        else:
            out.append(seg.payload)
    return "".join(out)


def surface_cover(
    fragment: str, lex: Lexicon, memo: dict
) -> Optional[list[tuple[int, TokenKind]]]:
    """Backtracking suffix-chain cover of ``fragment`` on surfaces alone.

    At each step the longest matching allomorph is preferred (lowest group ID
    on equal length, i.e. document order), with the fragment-as-root branch
    tried last. Used by the token-validity judgment, where no realization
    context exists. Returns None when no full cover exists.
    """
    if fragment == "":
        return []
    if fragment in memo:
        return memo[fragment]
    result: Optional[list[tuple[int, TokenKind]]] = None
    for group, _allo, rest in match_suffix(fragment, lex):
        sub = surface_cover(rest, lex, memo)
        if sub is not None:
            result = [(group.id, TokenKind.SUFFIX)] + sub
            break
    if result is None:
        entry = lex.root_for_surface(fragment)
        if entry is not None:
            result = [(entry.id, TokenKind.ROOT)]
    memo[fragment] = result
    return result


def _consistent_cover(
    word: str, fragment: str, lex: Lexicon, memo: dict
) -> Optional[list]:
    """Realization-consistent suffix-chain cover of a word's tail.

    Same preference order as surface_cover, but a matched allomorph only
    counts when it is exactly what the decoder would realize at that position,
    so that decoding the chosen IDs reproduces the word. The trailing-root
    branch accepts canonical surfaces only (a trailing root decodes to its
    canonical form). Elements are (AffixGroup, allomorph) or (RootEntry,
    surface) pairs.
    """
    if fragment == "":
        return []
    key = len(fragment)  # fragment is word[len(word)-key:], fixed per word
    if key in memo:
        return memo[key]
    preceding = word[: len(word) - key]
    result = None
    for group, allo, rest in match_suffix(fragment, lex):
        if realize_suffix(group, preceding, lex.phonology) != allo:
            continue
        sub = _consistent_cover(word, rest, lex, memo)
        if sub is not None:
            result = [(group, allo)] + sub
            break
    if result is None:
        entry = lex.root_for_surface(fragment)
        if entry is not None and entry.canonical == fragment:
            result = [(entry, fragment)]
    memo[key] = result
    return result


def _bpe_pieces(
    fragment: str, lex: Lexicon, bpe: Optional[BpeModel]
) -> list[tuple[int, TokenKind]]:
    """Map a lexicon-uncovered fragment to BPE / char / unknown IDs.

    Consecutive unrepresentable pieces collapse into a single unknown ID, so a
    fully foreign word yields one unknown token.
    """
    pieces = bpe_segment(fragment, bpe) if bpe is not None else list(fragment)
    unknown_id = lex.special("unknown").id
    bpe_start = lex.id_layout.bpe.start
    out: list[tuple[int, TokenKind]] = []
    for piece in pieces:
        if bpe is not None and piece in bpe:
            out.append((bpe_start + bpe.index(piece), TokenKind.BPE_SUBWORD))
            continue
        cid = lex.char_id(piece) if len(piece) == 1 else None
        if cid is not None:
            out.append((cid, TokenKind.CHAR))
        elif not out or out[-1][0] != unknown_id:
            out.append((unknown_id, TokenKind.UNKNOWN))
    return out


def encode_word_tagged(
    word: str, lex: Lexicon, bpe: Optional[BpeModel]
) -> list[tuple[int, TokenKind]]:
    """encode_word carrying token kinds alongside the IDs."""
    rules = lex.phonology
    memo: dict = {}
    for entry, matched, rest in iter_root_prefixes(word, lex):
        cover = _consistent_cover(word, rest, lex, memo)
        if cover is None:
            continue
        first_suffix = (
            cover[0][1] if cover and isinstance(cover[0][0], AffixGroup) else None
        )
        if realize_root(entry, first_suffix, rules) != matched:
            continue
        groups = [item for item, _ in cover if isinstance(item, AffixGroup)]
        trailing = cover[-1][1] if len(groups) != len(cover) else ""
        if "".join(realize_word_pieces(entry, groups, rules)) + trailing != word:
            continue  # canonical-vs-variant realization divergence; very rare
        return [(entry.id, TokenKind.ROOT)] + [
            (
                item.id,
                TokenKind.SUFFIX if isinstance(item, AffixGroup) else TokenKind.ROOT,
            )
            for item, _ in cover
        ]
    # No realization-consistent analysis. Keep the longest root whose
    # canonical form prefixes the word (decoding restores the canonical form,
    # so a variant prefix here would not round-trip) and BPE the rest.
    for entry, matched, rest in iter_root_prefixes(word, lex):
        if matched == entry.canonical:
            return [(entry.id, TokenKind.ROOT)] + _bpe_pieces(rest, lex, bpe)
    return _bpe_pieces(word, lex, bpe)


def encode_word(word: str, lex: Lexicon, bpe: Optional[BpeModel]) -> list[int]:
    """Segment one lowercased word into token IDs per the decision flow."""
    return [tid for tid, _ in encode_word_tagged(word, lex, bpe)]


def encode(
    text: str,
    lex: Lexicon,
    bpe: Optional[BpeModel] = None,
    word_cache: Optional[dict] = None,
) -> EncodedText:
    """Encode arbitrary text; a pure function of (text, lex, bpe).

    ``word_cache`` may be supplied by throughput-sensitive callers; it only
    memoizes encode_word_tagged results for repeated words.
    """
    if bpe is not None and len(bpe) > lex.bpe_block:
        raise ValueError(
            f"BPE vocabulary ({len(bpe)}) exceeds the lexicon's reserved "
            f"bpe_block ({lex.bpe_block})"
        )
    ids: list[int] = []
    kinds: list[TokenKind] = []
    uppercase_id = lex.special("uppercase").id
    unknown_id = lex.special("unknown").id
    for seg in preprocess(text):
        if seg.kind == "special":
            ids.append(lex.special(seg.payload).id)
            kinds.append(TokenKind.SPECIAL)
        elif seg.kind == "char":
            cid = lex.char_id(seg.payload)
            if cid is not None:
                ids.append(cid)
                kinds.append(TokenKind.CHAR)
            else:
                ids.append(unknown_id)
                kinds.append(TokenKind.UNKNOWN)
        else:
            if seg.uppercase:
                ids.append(uppercase_id)
                kinds.append(TokenKind.SPECIAL)
            if word_cache is not None and seg.payload in word_cache:
                tagged = word_cache[seg.payload]
            else:
                tagged = encode_word_tagged(seg.payload, lex, bpe)
                if word_cache is not None:
                    word_cache[seg.payload] = tagged
            for tid, kind in tagged:
                ids.append(tid)
                kinds.append(kind)
    return EncodedText(tuple(ids), tuple(kinds))
