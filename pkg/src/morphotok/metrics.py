"""Linguistic-quality metrics over token dumps: total/unique counts, Turkish
Token Percentage, Pure Token Percentage, and throughput.

Validity is judged against the lexicon (membership plus full morpheme-chain
coverage), a reproducible approximation of the source judgment. External
tokenizer dumps pass through a marker-stripping adapter first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import IO, Iterable, Optional, Union

from .encoder import surface_cover
from .lexicon import Lexicon, fold_case, iter_root_prefixes


class MetricsError(ValueError):
    """Empty dumps, malformed dump records, or undefined percentages."""


# Leading glyphs and sentinel tokens used by common external tokenizers.
DEFAULT_MARKER_PREFIXES = ("▁", "Ġ", "##")
DEFAULT_SENTINELS = frozenset(
    {
        "<bos>",
        "<eos>",
        "<s>",
        "</s>",
        "<pad>",
        "<BOS_TOKEN>",
        "<EOS_TOKEN>",
        "<|begin_of_text|>",
        "<|end_of_text|>",
        "<|endoftext|>",
    }
)


@dataclass
class TokenDump:
    tokenizer_name: str
    tokens: list[str]
    vocab_size: int = 0
    elapsed_seconds: float = 0.0

    def __post_init__(self):
        distinct = len(set(self.tokens))
        if self.vocab_size < distinct:
            self.vocab_size = distinct


@dataclass(frozen=True)
class MetricsReport:
    tokenizer_name: str
    vocab_size: int
    total: int
    unique: int
    turkish: int
    pure: int
    tr_pct: float
    pure_pct: float
    elapsed_seconds: float
    tokens_per_second: Optional[float]

    @classmethod
    def from_counts(
        cls,
        tokenizer_name: str,
        vocab_size: int,
        total: int,
        unique: int,
        turkish: int,
        pure: int,
        elapsed_seconds: float = 0.0,
    ) -> "MetricsReport":
        if unique <= 0:
            raise MetricsError(f"{tokenizer_name}: zero unique tokens, percentages undefined")
        return cls(
            tokenizer_name=tokenizer_name,
            vocab_size=vocab_size,
            total=total,
            unique=unique,
            turkish=turkish,
            pure=pure,
            tr_pct=_pct(turkish, unique),
            pure_pct=_pct(pure, unique),
            elapsed_seconds=elapsed_seconds,
            tokens_per_second=total / elapsed_seconds if elapsed_seconds > 0 else None,
        )


def _pct(part: int, whole: int) -> float:
    """100*part/whole, rounded half-up to two decimals for reporting."""
    value = Decimal(100 * part) / Decimal(whole)
    return float(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def strip_markers(
    tokens: Iterable[str],
    prefixes: tuple[str, ...] = DEFAULT_MARKER_PREFIXES,
    sentinels: frozenset = DEFAULT_SENTINELS,
) -> list[str]:
    """Adapter for external dumps: drop sentinels, strip boundary glyphs."""
    out = []
    for token in tokens:
        if token in sentinels:
            continue
        for prefix in prefixes:
            if token.startswith(prefix):
                token = token[len(prefix) :]
                break
        token = token.strip()
        if token:
            out.append(token)
    return out


def judge_token(surface: str, lex: Lexicon) -> tuple[bool, bool]:
    """(is_turkish, is_pure) for one token surface.

    Pure: the surface is exactly one root variant or one allomorph. Turkish:
    additionally a registered character, or fully coverable as an optional
    root plus suffix chain (so fused suffixes like "lerdir" count as valid
    but impure). Never returns (False, True).
    """
    norm = fold_case(surface)
    if not norm:
        return (False, False)
    pure = lex.root_for_surface(norm) is not None or bool(lex.groups_for_allomorph(norm))
    if pure:
        return (True, True)
    if len(norm) == 1 and lex.char_id(norm) is not None:
        return (True, False)
    memo: dict = {}
    if surface_cover(norm, lex, memo) is not None:
        return (True, False)
    for _entry, _matched, rest in iter_root_prefixes(norm, lex):
        if surface_cover(rest, lex, memo) is not None:
            return (True, False)
    return (False, False)


def compute_metrics(dump: TokenDump, lex: Lexicon) -> MetricsReport:
    """Judge the dump's distinct surfaces and derive the report."""
    distinct = sorted(set(dump.tokens))
    turkish = 0
    pure = 0
    for surface in distinct:
        is_tr, is_pure = judge_token(surface, lex)
        turkish += is_tr
        pure += is_pure
    return MetricsReport.from_counts(
        tokenizer_name=dump.tokenizer_name,
        vocab_size=dump.vocab_size,
        total=len(dump.tokens),
        unique=len(distinct),
        turkish=turkish,
        pure=pure,
        elapsed_seconds=dump.elapsed_seconds,
    )


def compare(dumps: list[TokenDump], lex: Lexicon) -> list[MetricsReport]:
    """One report per dump, sorted by TR% descending (stable on ties)."""
    if not dumps:
        raise MetricsError("no dumps to compare")
    reports = []
    for dump in dumps:
        try:
            reports.append(compute_metrics(dump, lex))
        except MetricsError:
            raise
        except Exception as exc:  # attach the tokenizer name to per-dump errors
            raise MetricsError(f"{dump.tokenizer_name}: {exc}") from exc
    return sorted(reports, key=lambda r: -r.tr_pct)


def load_dumps(source: Union[IO[str], Iterable[str]], name_hint: str = "") -> list[TokenDump]:
    """Read a JSON-lines dump file; one record per document, merged by tokenizer."""
    merged: dict[str, TokenDump] = {}
    order: list[str] = []
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
            name = record.get("tokenizer") or name_hint or "unnamed"
            tokens = record["tokens"]
            if not isinstance(tokens, list):
                raise TypeError("tokens must be a list")
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise MetricsError(f"malformed dump record at line {lineno}: {exc}") from exc
        if name not in merged:
            merged[name] = TokenDump(name, [], int(record.get("vocab_size", 0)))
            order.append(name)
        dump = merged[name]
        dump.tokens.extend(str(t) for t in tokens)
        dump.elapsed_seconds += float(record.get("elapsed_seconds", 0.0))
        dump.vocab_size = max(dump.vocab_size, int(record.get("vocab_size", 0)), len(set(dump.tokens)))
    return [merged[name] for name in order]


_TABLE_FIELDS = (
    ("Tokenizer", "tokenizer_name", "s"),
    ("Vocab", "vocab_size", "d"),
    ("Total", "total", "d"),
    ("Time(s)", "elapsed_seconds", ".4f"),
    ("Unique", "unique", "d"),
    ("Turkish", "turkish", "d"),
    ("TR%", "tr_pct", ".2f"),
    ("Pure", "pure", "d"),
    ("Pure%", "pure_pct", ".2f"),
)


def format_table(reports: list[MetricsReport]) -> str:
    """Aligned plain-text comparison table."""
    rows = [[header for header, _, _ in _TABLE_FIELDS]]
    for report in reports:
        row = []
        for _, attr, fmt in _TABLE_FIELDS:
            value = getattr(report, attr)
            row.append(format(value, fmt) if fmt != "s" else str(value))
        rows.append(row)
    widths = [max(len(row[i]) for row in rows) for i in range(len(_TABLE_FIELDS))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def reports_to_json(reports: list[MetricsReport]) -> str:
    """Machine-readable form of the comparison table."""
    payload = [
        {
            "tokenizer": r.tokenizer_name,
            "vocab_size": r.vocab_size,
            "total": r.total,
            "elapsed_seconds": r.elapsed_seconds,
            "unique": r.unique,
            "turkish": r.turkish,
            "tr_pct": r.tr_pct,
            "pure": r.pure,
            "pure_pct": r.pure_pct,
            "tokens_per_second": r.tokens_per_second,
        }
        for r in reports
    ]
    return json.dumps(payload, ensure_ascii=False, indent=2)
