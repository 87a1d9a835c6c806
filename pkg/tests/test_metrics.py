"""Token-quality metric tests: validity judgments, Table-style arithmetic,
comparisons, and the dump-file adapter."""

import io
import random

import pytest

from morphotok import TokenDump, compare, compute_metrics, judge_token
from morphotok.metrics import (
    MetricsError,
    MetricsReport,
    format_table,
    load_dumps,
    reports_to_json,
    strip_markers,
)


def test_judge_root_is_pure(lex):
    assert judge_token("kalk", lex) == (True, True)


def test_judge_allomorph_is_pure(lex):
    assert judge_token("lar", lex) == (True, True)
    assert judge_token("tığ", lex) == (True, True)


def test_judge_fused_suffixes_valid_but_impure(lex):
    assert judge_token("lerdir", lex) == (True, False)


def test_judge_fragment_invalid(lex):
    assert judge_token("ümü", lex) == (False, False)
    assert judge_token("ze", lex) == (False, False)


def test_judge_full_word_chain(lex):
    assert judge_token("kitaplardan", lex) == (True, False)
    assert judge_token("Kitap", lex) == (True, True)  # case-folded first


def test_judge_char_valid_not_pure(lex):
    assert judge_token(".", lex) == (True, False)


def test_judge_garbage(lex):
    assert judge_token("qqq", lex) == (False, False)
    assert judge_token("", lex) == (False, False)


def test_judge_never_false_true(lex):
    rng = random.Random(5)
    alphabet = "abcçdefgğhıijklmnoöprsştuüvyz."
    for _ in range(2000):
        surface = "".join(rng.choices(alphabet, k=rng.randint(1, 8)))
        is_tr, is_pure = judge_token(surface, lex)
        assert not (is_pure and not is_tr)


def test_report_from_table_counts():
    r = MetricsReport.from_counts("x", 32768, 707727, 11144, 10062, 9562, 0.6714)
    assert r.tr_pct == 90.29
    assert r.pure_pct == 85.80
    assert round(r.tokens_per_second) == round(707727 / 0.6714)


def test_percentage_rounds_half_up():
    # 1/160 = 0.625% -> 0.63 under half-up (bankers rounding would give 0.62)
    r = MetricsReport.from_counts("x", 200, 200, 160, 1, 1)
    assert r.tr_pct == 0.63


def test_zero_unique_rejected():
    with pytest.raises(MetricsError, match="zero unique"):
        MetricsReport.from_counts("x", 1, 0, 0, 0, 0)


def test_single_pure_token_dump(lex):
    report = compute_metrics(TokenDump("t", ["kalk"]), lex)
    assert report.tr_pct == 100.00
    assert report.pure_pct == 100.00
    assert report.total == report.unique == 1


def test_hand_built_dump(lex):
    # 5 distinct surfaces: kalk (valid, pure), ler (valid, pure),
    # lerdir (valid, impure), . (valid, impure), qqq (invalid)
    tokens = ["kalk", "kalk", "ler", "ler", "ler", "lerdir", ".", ".", "qqq", "qqq"]
    report = compute_metrics(TokenDump("hand", tokens), lex)
    assert report.total == 10
    assert report.unique == 5
    assert report.turkish == 4
    assert report.pure == 2
    assert report.tr_pct == 80.00
    assert report.pure_pct == 40.00


def test_permutation_invariance(lex):
    tokens = ["kalk", "ler", "lerdir", ".", "qqq", "kalk"]
    rng = random.Random(8)
    base = compute_metrics(TokenDump("t", tokens), lex)
    for _ in range(5):
        shuffled = tokens[:]
        rng.shuffle(shuffled)
        got = compute_metrics(TokenDump("t", shuffled), lex)
        assert (got.total, got.unique, got.turkish, got.pure) == (
            base.total, base.unique, base.turkish, base.pure
        )


def test_compare_sorted_by_tr_desc(lex):
    good = TokenDump("good", ["kalk", "ler"])
    bad = TokenDump("bad", ["qqq", "zzz"])
    reports = compare([bad, good], lex)
    assert [r.tokenizer_name for r in reports] == ["good", "bad"]


def test_compare_stable_on_ties(lex):
    a = TokenDump("a", ["kalk"])
    b = TokenDump("b", ["ler"])
    reports = compare([a, b], lex)
    assert [r.tokenizer_name for r in reports] == ["a", "b"]


def test_compare_single_dump(lex):
    reports = compare([TokenDump("only", ["kalk"])], lex)
    assert len(reports) == 1


def test_compare_empty_rejected(lex):
    with pytest.raises(MetricsError):
        compare([], lex)


def test_vocab_size_floor():
    dump = TokenDump("t", ["a", "b", "c"], vocab_size=1)
    assert dump.vocab_size == 3


def test_load_dumps_merges_by_tokenizer():
    src = io.StringIO(
        '{"tokenizer": "x", "tokens": ["a", "b"], "elapsed_seconds": 1.0}\n'
        "\n"
        '{"tokenizer": "x", "tokens": ["c"], "elapsed_seconds": 0.5}\n'
        '{"tokenizer": "y", "tokens": ["d"], "vocab_size": 9}\n'
    )
    dumps = load_dumps(src)
    assert [d.tokenizer_name for d in dumps] == ["x", "y"]
    assert dumps[0].tokens == ["a", "b", "c"]
    assert dumps[0].elapsed_seconds == 1.5
    assert dumps[1].vocab_size == 9


def test_load_dumps_malformed_line_number():
    src = io.StringIO('{"tokenizer": "x", "tokens": ["a"]}\n{oops\n')
    with pytest.raises(MetricsError, match="line 2"):
        load_dumps(src)


def test_strip_markers():
    tokens = ["<bos>", "▁kitap", " geçmiş", "##ler", "normal", "  ", "<|endoftext|>"]
    assert strip_markers(tokens) == ["kitap", "geçmiş", "ler", "normal"]


def test_format_table_contains_fields(lex):
    reports = compare([TokenDump("demo", ["kalk", "qqq"])], lex)
    table = format_table(reports)
    assert "TR%" in table and "Pure%" in table and "demo" in table
    assert "50.00" in table


def test_reports_json_round_trip(lex):
    import json

    reports = compare([TokenDump("demo", ["kalk"])], lex)
    payload = json.loads(reports_to_json(reports))
    assert payload[0]["tokenizer"] == "demo"
    assert payload[0]["tr_pct"] == 100.0
