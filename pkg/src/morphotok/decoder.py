"""Decoding pipeline: token IDs back to surface text.

Suffix allomorphs are re-selected from vowel harmony, consonant assimilation,
and onset constraints; root variants (devoiced, haplology-reduced, hiatus-
contracted forms) are restored from the following realized suffix. Case and
whitespace come back from the special tokens.
"""

from __future__ import annotations

from typing import Optional, Union

from .bpe import BpeModel
from .lexicon import (
    SPECIAL_CHARS,
    UNKNOWN_PLACEHOLDER,
    AffixGroup,
    Lexicon,
    PhonologyRules,
    RootEntry,
    upper_first,
)
from .tokens import EncodedText, TokenKind


class DecodeError(ValueError):
    """Raised for IDs that resolve in no vocabulary range."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (token index {position})")
        self.position = position


def realize_suffix(group: AffixGroup, preceding: str, rules: PhonologyRules) -> str:
    """Select the allomorph consistent with the preceding surface.

    Filters: onset constraints (no vowel hiatus; buffer consonants and
    vowel-less allomorphs attach only after vowels), consonant assimilation
    on the onset, then vowel harmony against the last vowel of ``preceding``.
    Falls back to the group's first allomorph when nothing is consistent
    (e.g. invariant suffixes like the progressive).
    """
    last_ch = preceding[-1] if preceding else ""
    ends_vowel = rules.is_vowel(last_ch)
    stem_vowel = rules.last_vowel(preceding)
    voiced_onsets = set(rules.assimilation)
    voiceless_onsets = set(rules.assimilation.values())

    for allo in group.allomorphs:
        onset = allo[0]
        if ends_vowel:
            if rules.is_vowel(onset):
                continue
        elif last_ch:
            if onset in rules.buffer_consonants:
                continue
            if rules.first_vowel(allo) is None:
                continue
        if last_ch:
            if onset in voiced_onsets and last_ch in rules.voiceless_finals:
                continue
            if onset in voiceless_onsets and last_ch not in rules.voiceless_finals:
                continue
        suffix_vowel = rules.first_vowel(allo)
        if suffix_vowel and stem_vowel and not rules.harmonic(suffix_vowel, stem_vowel):
            continue
        return allo
    return group.allomorphs[0]


def realize_root(
    entry: RootEntry, next_suffix: Optional[str], rules: PhonologyRules
) -> str:
    """Surface form of a root given the already-realized following allomorph.

    Canonical when word-final or before a consonant-initial suffix; the
    registered contracted / reduced / devoiced variant when the corresponding
    rule fires. Always returns a registered variant.
    """
    if not next_suffix:
        return entry.canonical
    if entry.hiatus and next_suffix == rules.hiatus_trigger:
        contracted = rules.contracted_form(entry.canonical)
        if contracted in entry.variants:
            return contracted
    if rules.is_vowel(next_suffix[0]):
        if entry.haplology:
            reduced = rules.reduced_form(entry.canonical)
            if reduced in entry.variants:
                return reduced
        devoiced = rules.devoiced_form(entry.canonical)
        if devoiced in entry.variants:
            return devoiced
    return entry.canonical


def realize_word_pieces(
    entry: RootEntry, groups: list[AffixGroup], rules: PhonologyRules
) -> list[str]:
    """Per-token surfaces of a root plus suffix chain.

    The first suffix is realized against the canonical root to decide the
    root's own variant; chained suffixes see the fully realized string so far
    so harmony propagates through the word.
    """
    if not groups:
        return [entry.canonical]
    first = realize_suffix(groups[0], entry.canonical, rules)
    pieces = [realize_root(entry, first, rules)]
    so_far = pieces[0]
    for group in groups:
        allo = realize_suffix(group, so_far, rules)
        pieces.append(allo)
        so_far += allo
    return pieces


def resolve_token(
    tid: int, lex: Lexicon, bpe: Optional[BpeModel], position: int = 0
) -> tuple[TokenKind, object]:
    """Map an ID to its kind and entry, or raise DecodeError with position."""
    layout = lex.id_layout
    if tid in layout.specials:
        special = lex.special_by_id(tid)
        kind = TokenKind.UNKNOWN if special.label == "unknown" else TokenKind.SPECIAL
        return kind, special
    if tid in layout.roots:
        return TokenKind.ROOT, lex.root_by_id(tid)
    if tid in layout.affixes:
        return TokenKind.SUFFIX, lex.affix_by_id(tid)
    if tid in layout.bpe:
        if bpe is None or tid - layout.bpe.start >= len(bpe):
            raise DecodeError(f"id {tid} is in the BPE range but unassigned", position)
        return TokenKind.BPE_SUBWORD, bpe.vocab[tid - layout.bpe.start]
    if tid in layout.chars:
        return TokenKind.CHAR, lex.char_by_id(tid)
    raise DecodeError(f"unresolvable id {tid}", position)


def _realized_stream(
    encoded: Union[EncodedText, list[int]],
    lex: Lexicon,
    bpe: Optional[BpeModel],
    rules: PhonologyRules,
) -> list[tuple[TokenKind, str]]:
    """Resolve IDs and realize morphology; per-token (kind, surface) pairs.

    Special tokens keep their label surface ("<space>"); the caller decides
    whether to print labels or substitute the characters.
    """
    ids = list(encoded.ids) if isinstance(encoded, EncodedText) else list(encoded)
    resolved = [resolve_token(tid, lex, bpe, pos) for pos, tid in enumerate(ids)]
    out: list[tuple[TokenKind, str]] = []
    i = 0
    n = len(resolved)
    while i < n:
        kind, obj = resolved[i]
        if kind == TokenKind.ROOT:
            groups: list[AffixGroup] = []
            j = i + 1
            while j < n and resolved[j][0] == TokenKind.SUFFIX:
                groups.append(resolved[j][1])
                j += 1
            pieces = realize_word_pieces(obj, groups, rules)
            out.append((TokenKind.ROOT, pieces[0]))
            for piece in pieces[1:]:
                out.append((TokenKind.SUFFIX, piece))
            i = j
        elif kind == TokenKind.SUFFIX:
            # Stray suffix with no preceding root: realize against what text
            # the word has accumulated so far (lenient; the encoder never
            # emits this shape).
            prev = out[-1][1] if out and out[-1][0] in _WORD_KINDS else ""
            out.append((TokenKind.SUFFIX, realize_suffix(obj, prev, rules)))
            i += 1
        elif kind == TokenKind.SPECIAL:
            out.append((TokenKind.SPECIAL, obj.surface))
            i += 1
        elif kind == TokenKind.UNKNOWN:
            out.append((TokenKind.UNKNOWN, UNKNOWN_PLACEHOLDER))
            i += 1
        else:  # BPE subword or char: verbatim
            out.append((kind, obj if isinstance(obj, str) else str(obj)))
            i += 1
    return out


_WORD_KINDS = {TokenKind.ROOT, TokenKind.SUFFIX, TokenKind.BPE_SUBWORD}


def render_surfaces(
    encoded: Union[EncodedText, list[int]],
    lex: Lexicon,
    bpe: Optional[BpeModel],
    rules: PhonologyRules,
) -> list[str]:
    """Human-readable token surfaces, specials shown as <label> tokens."""
    return [surface for _, surface in _realized_stream(encoded, lex, bpe, rules)]


def decode(
    encoded: Union[EncodedText, list[int]],
    lex: Lexicon,
    bpe: Optional[BpeModel],
    rules: PhonologyRules,
) -> str:
    """Reconstruct surface text from token IDs.

    The uppercase token capitalizes the first letter of the next emitted
    piece; space/newline/tab map to their characters; the unknown ID emits
    the fixed placeholder (documented as lossy).
    """
    parts: list[str] = []
    pending_cap = False
    for kind, surface in _realized_stream(encoded, lex, bpe, rules):
        if kind == TokenKind.SPECIAL:
            label = surface[1:-1]
            if label == "uppercase":
                pending_cap = True
            else:
                parts.append(SPECIAL_CHARS[label])
            continue
        if kind == TokenKind.UNKNOWN:
            parts.append(surface)
            pending_cap = False
            continue
        if pending_cap:
            parts.append(upper_first(surface))
            pending_cap = False
        else:
            parts.append(surface)
    return "".join(parts)
