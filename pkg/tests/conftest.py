"""Shared fixtures: the bundled tokenizer and a micro-lexicon builder."""

from __future__ import annotations

import io
import json

import pytest

from morphotok import Tokenizer, load_lexicon

TURKISH_PHONOLOGY = {
    "front_vowels": ["e", "i", "ö", "ü"],
    "back_vowels": ["a", "ı", "o", "u"],
    "rounded_vowels": ["o", "ö", "u", "ü"],
    "narrow_vowels": ["ı", "i", "u", "ü"],
    "voiceless_finals": ["f", "s", "t", "k", "ç", "ş", "h", "p"],
    "devoicing": {"p": "b", "ç": "c", "t": "d", "k": "ğ"},
    "assimilation": {"d": "t"},
    "buffer_consonants": ["y", "s", "n"],
    "hiatus_trigger": "yor",
}

SPECIALS = ["uppercase", "space", "newline", "tab", "unknown"]


def make_lexicon_doc(roots=(), affixes=(), chars=(), phonology=None, bpe_block=0):
    doc = {
        "format_version": 1,
        "specials": SPECIALS,
        "bpe_block": bpe_block,
        "roots": list(roots),
        "affixes": list(affixes),
        "chars": list(chars),
    }
    if phonology is not None:
        doc["phonology"] = phonology
    return doc


def load_doc(doc):
    return load_lexicon(io.StringIO(json.dumps(doc, ensure_ascii=False)))


@pytest.fixture(scope="session")
def tok() -> Tokenizer:
    return Tokenizer.load()


@pytest.fixture(scope="session")
def lex(tok):
    return tok.lexicon


@pytest.fixture(scope="session")
def bpe(tok):
    return tok.bpe


@pytest.fixture(scope="session")
def rules(lex):
    return lex.phonology


def group(lex, tag):
    """Affix group by function tag."""
    for g in lex.affixes:
        if g.function_tag == tag:
            return g
    raise KeyError(tag)


def root(lex, canonical):
    for r in lex.roots:
        if r.canonical == canonical:
            return r
    raise KeyError(canonical)


# 30 entries: 12 roots + 11 affix groups + 5 specials + 2 chars. A slice of
# the bundled fixture that still exercises backtracking, variant prefixes,
# root/affix surface overlap ("dur"), and cross-group allomorph ties ("ın").
MICRO_DOC = make_lexicon_doc(
    roots=[
        {"canonical": "ata", "variants": []},
        {"canonical": "al", "variants": []},
        {"canonical": "alın", "variants": ["aln"]},
        {"canonical": "ev", "variants": []},
        {"canonical": "kitap", "variants": ["kitab"]},
        {"canonical": "oyna", "variants": ["oynu"]},
        {"canonical": "söz", "variants": []},
        {"canonical": "sözle", "variants": []},
        {"canonical": "su", "variants": []},
        {"canonical": "dur", "variants": []},
        {"canonical": "kalk", "variants": []},
        {"canonical": "gün", "variants": []},
    ],
    affixes=[
        {"function": "PLURAL", "allomorphs": ["ler", "lar"]},
        {"function": "LOCATIVE", "allomorphs": ["de", "da", "te", "ta"]},
        {"function": "DATIVE", "allomorphs": ["e", "a", "ye", "ya"]},
        {"function": "ACCUSATIVE", "allomorphs": ["ı", "i", "u", "ü", "yı", "yi", "yu", "yü"]},
        {"function": "GENITIVE", "allomorphs": ["ın", "in", "un", "ün", "nın", "nin", "nun", "nün"]},
        {"function": "POSSESSIVE_2SG", "allomorphs": ["ın", "in", "un", "ün", "n"]},
        {"function": "AORIST", "allomorphs": ["r", "ar", "er"]},
        {"function": "PROGRESSIVE", "allomorphs": ["yor"]},
        {"function": "COPULA", "allomorphs": ["dur", "dür"]},
        {"function": "PERSON_1PL_PAST", "allomorphs": ["k"]},
        {"function": "PAST", "allomorphs": ["dı", "di", "du", "dü", "tı", "ti", "tu", "tü"]},
    ],
    chars=[".", "-"],
    phonology={
        **TURKISH_PHONOLOGY,
        "haplology_roots": ["alın"],
        "hiatus_roots": ["oyna"],
    },
    bpe_block=64,
)


@pytest.fixture(scope="session")
def micro_lex():
    return load_doc(MICRO_DOC)
