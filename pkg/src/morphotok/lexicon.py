"""Vocabulary store: special tokens, roots with phonological variants, affix
allomorph groups, fallback characters, and the phonological rule tables.

The lexicon is loaded from a single JSON document and is immutable afterwards;
all lookup structures are built once at load time and are safe to share across
threads.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterator, Optional, Union

FORMAT_VERSION = 1
MAX_VOCAB = 32768

# The five reserved labels, in canonical document order. They always occupy
# the lowest IDs of the vocabulary.
SPECIAL_LABELS = ("uppercase", "space", "newline", "tab", "unknown")

SPECIAL_CHARS = {"space": " ", "newline": "\n", "tab": "\t"}

UNKNOWN_PLACEHOLDER = "<unk>"


class LexiconError(ValueError):
    """Malformed or internally inconsistent lexicon document."""


def fold_case(text: str) -> str:
    """Lowercase with Turkish dotted/dotless i handling, NFC-normalized.

    'İ' must be mapped before str.lower(), which would otherwise expand it to
    'i' + combining dot.
    """
    text = unicodedata.normalize("NFC", text)
    return text.replace("İ", "i").replace("I", "ı").lower()


def upper_first(word: str) -> str:
    """Capitalize the first character, Turkish-aware (i→İ, ı→I)."""
    if not word:
        return word
    first = word[0]
    if first == "i":
        up = "İ"
    elif first == "ı":
        up = "I"
    else:
        up = first.upper()
    return up + word[1:]


@dataclass(frozen=True)
class SpecialToken:
    id: int
    label: str

    @property
    def surface(self) -> str:
        return f"<{self.label}>"


@dataclass(frozen=True)
class RootEntry:
    id: int
    canonical: str
    variants: frozenset[str]
    is_compound: bool = False
    haplology: bool = False
    hiatus: bool = False


@dataclass(frozen=True)
class AffixGroup:
    id: int
    function_tag: str
    allomorphs: tuple[str, ...]


@dataclass(frozen=True)
class PhonologyRules:
    """Language data driving allomorph selection and root-variant restoration.

    Everything here is data, not code: the realization engine consults these
    tables so the core stays language-independent.
    """

    front_vowels: frozenset[str] = frozenset()
    back_vowels: frozenset[str] = frozenset()
    rounded_vowels: frozenset[str] = frozenset()
    narrow_vowels: frozenset[str] = frozenset()
    voiceless_finals: frozenset[str] = frozenset()
    # word-final voiceless consonant -> voiced counterpart, applied to roots
    # before a vowel-initial suffix (kitap -> kitab)
    devoicing: dict = field(default_factory=dict)
    # suffix-initial voiced consonant -> voiceless counterpart after a
    # voiceless final (d -> t: kitap + dan -> kitaptan)
    assimilation: dict = field(default_factory=dict)
    # onset consonants that only attach after a vowel (buffer y/s/n)
    buffer_consonants: frozenset[str] = frozenset()
    # realized suffix surface that triggers final-vowel contraction on
    # hiatus-flagged roots (oyna + yor -> oynuyor)
    hiatus_trigger: str = "yor"

    @property
    def vowels(self) -> frozenset[str]:
        return self.front_vowels | self.back_vowels

    def is_vowel(self, ch: str) -> bool:
        return ch in self.front_vowels or ch in self.back_vowels

    def last_vowel(self, s: str) -> Optional[str]:
        for ch in reversed(s):
            if self.is_vowel(ch):
                return ch
        return None

    def first_vowel(self, s: str) -> Optional[str]:
        for ch in s:
            if self.is_vowel(ch):
                return ch
        return None

    def harmonic(self, suffix_vowel: str, stem_vowel: str) -> bool:
        """True when suffix_vowel may follow stem_vowel under vowel harmony.

        Wide vowels agree in backness only; narrow vowels additionally agree
        in roundedness.
        """
        if (suffix_vowel in self.back_vowels) != (stem_vowel in self.back_vowels):
            return False
        if suffix_vowel in self.narrow_vowels:
            return (suffix_vowel in self.rounded_vowels) == (stem_vowel in self.rounded_vowels)
        return True

    def devoiced_form(self, surface: str) -> Optional[str]:
        """kitap -> kitab; None when the final consonant does not alternate."""
        if surface and surface[-1] in self.devoicing:
            return surface[:-1] + self.devoicing[surface[-1]]
        return None

    def reduced_form(self, surface: str) -> Optional[str]:
        """Haplology: drop the final-syllable vowel (alın -> aln)."""
        for i in range(len(surface) - 1, -1, -1):
            if self.is_vowel(surface[i]):
                return surface[:i] + surface[i + 1 :]
        return None

    def contracted_form(self, surface: str) -> Optional[str]:
        """Hiatus contraction: narrow the final a/e (oyna -> oynu, de -> di)."""
        if not surface or not self.is_vowel(surface[-1]):
            return None
        stem = surface[:-1]
        anchor = self.last_vowel(stem) or surface[-1]
        back = anchor in self.back_vowels
        rounded = anchor in self.rounded_vowels
        for v in sorted(self.narrow_vowels):
            if (v in self.back_vowels) == back and (v in self.rounded_vowels) == rounded:
                return stem + v
        return None


@dataclass(frozen=True)
class IdLayout:
    """Contiguous ID ranges: [specials | roots | affixes | bpe | chars]."""

    specials: range
    roots: range
    affixes: range
    bpe: range
    chars: range

    @property
    def total(self) -> int:
        return self.chars.stop


class Lexicon:
    """Immutable vocabulary with length-bucketed longest-prefix lookup."""

    def __init__(
        self,
        specials: tuple[SpecialToken, ...],
        roots: tuple[RootEntry, ...],
        affixes: tuple[AffixGroup, ...],
        chars: tuple[str, ...],
        phonology: PhonologyRules,
        bpe_block: int = 0,
    ):
        self.specials = specials
        self.roots = roots
        self.affixes = affixes
        self.chars = chars
        self.phonology = phonology
        self.bpe_block = bpe_block

        n_spec, n_roots, n_affix = len(specials), len(roots), len(affixes)
        affix_end = n_spec + n_roots + n_affix
        self.id_layout = IdLayout(
            specials=range(0, n_spec),
            roots=range(n_spec, n_spec + n_roots),
            affixes=range(n_spec + n_roots, affix_end),
            bpe=range(affix_end, affix_end + bpe_block),
            chars=range(affix_end + bpe_block, affix_end + bpe_block + len(chars)),
        )

        self._special_by_label = {s.label: s for s in specials}
        self._root_by_id = {r.id: r for r in roots}
        self._affix_by_id = {a.id: a for a in affixes}
        self._char_to_id = {c: self.id_layout.chars.start + i for i, c in enumerate(chars)}

        # Roots bucketed by surface length; longer buckets are probed first so
        # the longest matching variant wins.
        root_buckets: dict[int, dict[str, RootEntry]] = {}
        for entry in roots:
            for variant in entry.variants:
                root_buckets.setdefault(len(variant), {})[variant] = entry
        self._root_buckets = root_buckets
        self._root_lengths = tuple(sorted(root_buckets, reverse=True))

        affix_buckets: dict[int, dict[str, list[AffixGroup]]] = {}
        for group in affixes:
            for allo in group.allomorphs:
                affix_buckets.setdefault(len(allo), {}).setdefault(allo, []).append(group)
        self._affix_buckets = affix_buckets
        self._affix_lengths = tuple(sorted(affix_buckets, reverse=True))

    # -- lookups -------------------------------------------------------------

    def special(self, label: str) -> SpecialToken:
        return self._special_by_label[label]

    def root_for_surface(self, surface: str) -> Optional[RootEntry]:
        bucket = self._root_buckets.get(len(surface))
        return bucket.get(surface) if bucket else None

    def groups_for_allomorph(self, surface: str) -> tuple[AffixGroup, ...]:
        bucket = self._affix_buckets.get(len(surface))
        return tuple(bucket.get(surface, ())) if bucket else ()

    def char_id(self, ch: str) -> Optional[int]:
        return self._char_to_id.get(ch)

    def root_by_id(self, tid: int) -> RootEntry:
        return self._root_by_id[tid]

    def affix_by_id(self, tid: int) -> AffixGroup:
        return self._affix_by_id[tid]

    def char_by_id(self, tid: int) -> str:
        return self.chars[tid - self.id_layout.chars.start]

    def special_by_id(self, tid: int) -> SpecialToken:
        return self.specials[tid]


# -- operations ---------------------------------------------------------------


def iter_root_prefixes(
    word: str, lex: Lexicon
) -> Iterator[tuple[RootEntry, str, str]]:
    """Yield every root variant prefixing ``word``, longest first.

    A given prefix length matches at most one entry because a surface string
    belongs to at most one RootEntry.
    """
    n = len(word)
    for length in lex._root_lengths:
        if length > n:
            continue
        entry = lex._root_buckets[length].get(word[:length])
        if entry is not None:
            yield entry, word[:length], word[length:]


def longest_root_prefix(
    word: str, lex: Lexicon
) -> Optional[tuple[RootEntry, str, str]]:
    """Return (entry, matched_variant, remainder) for the longest root prefix."""
    return next(iter_root_prefixes(word, lex), None)


def normalize_root_id(surface: str, lex: Lexicon) -> Optional[int]:
    """Shared ID when ``surface`` is any phonological variant of a root."""
    entry = lex.root_for_surface(surface)
    return entry.id if entry is not None else None


def match_suffix(
    fragment: str, lex: Lexicon
) -> list[tuple[AffixGroup, str, str]]:
    """All affix matches whose allomorph prefixes ``fragment``.

    Ordered longest allomorph first; document order breaks equal-length ties.
    """
    matches: list[tuple[AffixGroup, str, str]] = []
    n = len(fragment)
    for length in lex._affix_lengths:
        if length > n:
            continue
        groups = lex._affix_buckets[length].get(fragment[:length])
        if groups:
            for group in groups:
                matches.append((group, fragment[:length], fragment[length:]))
    return matches


# -- loading ------------------------------------------------------------------


def _normalize_surface(raw: str, where: str) -> str:
    surface = fold_case(raw)
    if not surface:
        raise LexiconError(f"{where}: empty surface")
    if any(ch.isspace() for ch in surface):
        raise LexiconError(f"{where}: surface {raw!r} contains whitespace")
    return surface


def _parse_phonology(section: dict) -> PhonologyRules:
    def charset(key: str) -> frozenset:
        return frozenset(section.get(key, ()))

    return PhonologyRules(
        front_vowels=charset("front_vowels"),
        back_vowels=charset("back_vowels"),
        rounded_vowels=charset("rounded_vowels"),
        narrow_vowels=charset("narrow_vowels"),
        voiceless_finals=charset("voiceless_finals"),
        devoicing=dict(section.get("devoicing", {})),
        assimilation=dict(section.get("assimilation", {})),
        buffer_consonants=charset("buffer_consonants"),
        hiatus_trigger=section.get("hiatus_trigger", "yor"),
    )


def load_lexicon(source: Union[str, Path, IO[bytes], IO[str]]) -> Lexicon:
    """Parse a lexicon document into an immutable Lexicon.

    IDs are assigned deterministically from document order within the layout
    ranges [specials | roots | affixes | bpe | chars].
    """
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            doc = json.load(fh)
    else:
        doc = json.load(source)
    if not isinstance(doc, dict):
        raise LexiconError("lexicon document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise LexiconError(
            f"unsupported or missing format_version (expected {FORMAT_VERSION})"
        )

    labels = doc.get("specials")
    if not isinstance(labels, list) or sorted(labels) != sorted(SPECIAL_LABELS):
        raise LexiconError(
            f"specials must list exactly the labels {sorted(SPECIAL_LABELS)}"
        )
    specials = tuple(SpecialToken(i, label) for i, label in enumerate(labels))

    phonology = _parse_phonology(doc.get("phonology", {}))
    haplology = set(doc.get("phonology", {}).get("haplology_roots", ()))
    hiatus = set(doc.get("phonology", {}).get("hiatus_roots", ()))

    n_spec = len(specials)
    seen_surfaces: dict[str, str] = {}
    roots: list[RootEntry] = []
    for i, item in enumerate(doc.get("roots", ())):
        where = f"roots[{i}]"
        canonical = _normalize_surface(item["canonical"], where)
        variants = {canonical}
        for raw in item.get("variants", ()):
            variants.add(_normalize_surface(raw, f"{where} ({canonical})"))
        for v in variants:
            if v in seen_surfaces:
                raise LexiconError(
                    f"{where}: duplicate root surface {v!r} "
                    f"(already used by {seen_surfaces[v]!r})"
                )
            seen_surfaces[v] = canonical
        roots.append(
            RootEntry(
                id=n_spec + i,
                canonical=canonical,
                variants=frozenset(variants),
                is_compound=bool(item.get("compound", False)),
                haplology=canonical in haplology,
                hiatus=canonical in hiatus,
            )
        )

    root_canonicals = {r.canonical for r in roots}
    for name, flagged in (("haplology_roots", haplology), ("hiatus_roots", hiatus)):
        for surface in flagged:
            if surface not in root_canonicals:
                raise LexiconError(f"phonology.{name}: unknown root {surface!r}")
    for entry in roots:
        if entry.haplology:
            reduced = phonology.reduced_form(entry.canonical)
            if reduced not in entry.variants:
                raise LexiconError(
                    f"haplology root {entry.canonical!r}: reduced form "
                    f"{reduced!r} is not a registered variant"
                )
        if entry.hiatus:
            contracted = phonology.contracted_form(entry.canonical)
            if contracted not in entry.variants:
                raise LexiconError(
                    f"hiatus root {entry.canonical!r}: contracted form "
                    f"{contracted!r} is not a registered variant"
                )

    affix_start = n_spec + len(roots)
    seen_pairs: set[tuple[str, str]] = set()
    seen_functions: set[str] = set()
    affixes: list[AffixGroup] = []
    for i, item in enumerate(doc.get("affixes", ())):
        where = f"affixes[{i}]"
        function = item["function"]
        if not function:
            raise LexiconError(f"{where}: empty function tag")
        if function in seen_functions:
            raise LexiconError(f"{where}: duplicate function tag {function!r}")
        seen_functions.add(function)
        allomorphs: list[str] = []
        for raw in item.get("allomorphs", ()):
            allo = _normalize_surface(raw, f"{where} ({function})")
            if (allo, function) in seen_pairs or allo in allomorphs:
                raise LexiconError(
                    f"{where}: duplicate allomorph {allo!r} in group {function!r}"
                )
            seen_pairs.add((allo, function))
            allomorphs.append(allo)
        if not allomorphs:
            raise LexiconError(f"{where}: group {function!r} has no allomorphs")
        affixes.append(AffixGroup(affix_start + i, function, tuple(allomorphs)))

    chars: list[str] = []
    for i, ch in enumerate(doc.get("chars", ())):
        if not isinstance(ch, str) or len(ch) != 1:
            raise LexiconError(f"chars[{i}]: {ch!r} is not a single character")
        if ch in chars:
            raise LexiconError(f"chars[{i}]: duplicate character {ch!r}")
        chars.append(ch)

    bpe_block = int(doc.get("bpe_block", 0))
    if bpe_block < 0:
        raise LexiconError("bpe_block must be non-negative")

    lex = Lexicon(
        specials=specials,
        roots=tuple(roots),
        affixes=tuple(affixes),
        chars=tuple(chars),
        phonology=phonology,
        bpe_block=bpe_block,
    )
    if lex.id_layout.total > MAX_VOCAB:
        raise LexiconError(
            f"vocabulary budget exceeded: {lex.id_layout.total} > {MAX_VOCAB}"
        )
    return lex
