"""Command-line interface tests: formats, exit codes, streaming round trip."""

import json
import subprocess
import sys


from morphotok import BUNDLED_LEXICON
from morphotok.cli import main

GOLDEN = "Kalktığımızda hep birlikte yürüdük.\n"
GOLDEN_TOKENS = "<uppercase> kalk tığ ımız da <space> hep <space> birlikte <space> yürü dü k ."


def run_cli(*argv):
    return main(list(argv))


def test_encode_surfaces_golden(tmp_path, capsys):
    src = tmp_path / "in.txt"
    src.write_text(GOLDEN, encoding="utf-8")
    assert run_cli("encode", str(src)) == 0
    assert capsys.readouterr().out == GOLDEN_TOKENS + "\n"


def test_encode_empty_input(tmp_path, capsys):
    src = tmp_path / "empty.txt"
    src.write_text("", encoding="utf-8")
    assert run_cli("encode", str(src)) == 0
    assert capsys.readouterr().out == ""


def test_missing_lexicon_is_io_error(tmp_path, capsys):
    src = tmp_path / "in.txt"
    src.write_text(GOLDEN, encoding="utf-8")
    code = run_cli("encode", "--lexicon", "/no/such/lexicon.json", str(src))
    assert code == 3
    assert "/no/such/lexicon.json" in capsys.readouterr().err


def test_encode_decode_round_trip_files(tmp_path, capsys):
    src = tmp_path / "in.txt"
    src.write_text(GOLDEN + "Kitap okumayı seviyorum.\n", encoding="utf-8")
    mid = tmp_path / "tokens.txt"
    out = tmp_path / "out.txt"
    assert run_cli("encode", str(src), "-o", str(mid)) == 0
    assert run_cli("decode", str(mid), "-o", str(out)) == 0
    assert out.read_text(encoding="utf-8") == src.read_text(encoding="utf-8")


def test_encode_decode_ids_round_trip(tmp_path):
    src = tmp_path / "in.txt"
    src.write_text(GOLDEN, encoding="utf-8")
    mid = tmp_path / "ids.txt"
    out = tmp_path / "out.txt"
    assert run_cli("encode", "--ids", str(src), "-o", str(mid)) == 0
    assert all(tok.isdigit() for tok in mid.read_text().split())
    assert run_cli("decode", "--ids", str(mid), "-o", str(out)) == 0
    assert out.read_text(encoding="utf-8") == GOLDEN


def test_shell_pipe_round_trip(tmp_path):
    src = tmp_path / "in.txt"
    src.write_text(GOLDEN + "Atasözleri geçmişten günümüze kadar ulaşır.\n", encoding="utf-8")
    pipeline = (
        f"{sys.executable} -m morphotok.cli encode < {src} | "
        f"{sys.executable} -m morphotok.cli decode"
    )
    result = subprocess.run(pipeline, shell=True, capture_output=True, text=True)
    assert result.returncode == 0
    assert result.stdout == src.read_text(encoding="utf-8")


def test_decode_surface_sequence(tmp_path, capsys):
    src = tmp_path / "tokens.txt"
    src.write_text(
        "<uppercase> kitap <space> okuma yı <space> sev i yor um .\n", encoding="utf-8"
    )
    assert run_cli("decode", str(src)) == 0
    assert capsys.readouterr().out == "Kitap okumayı seviyorum.\n"


def test_decode_corrupt_id(tmp_path, capsys):
    src = tmp_path / "ids.txt"
    src.write_text("0 999999\n", encoding="utf-8")
    assert run_cli("decode", "--ids", str(src)) == 2
    assert "token index 1" in capsys.readouterr().err


def test_encode_jsonl(tmp_path, capsys):
    src = tmp_path / "in.txt"
    src.write_text("Evler.\n", encoding="utf-8")
    assert run_cli("encode", "--jsonl", str(src)) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["surfaces"] == ["<uppercase>", "ev", "ler", "."]
    assert len(record["ids"]) == len(record["surfaces"]) == len(record["kinds"])


def test_jobs_output_matches_sequential(tmp_path):
    from morphotok import Tokenizer
    from morphotok.corpus import generate_corpus

    lex = Tokenizer.load().lexicon
    src = tmp_path / "corpus.txt"
    src.write_text(generate_corpus(lex, 20000, seed=3), encoding="utf-8")
    seq = tmp_path / "seq.txt"
    par = tmp_path / "par.txt"
    assert run_cli("encode", str(src), "-o", str(seq)) == 0
    assert run_cli("encode", "--jobs", "4", str(src), "-o", str(par)) == 0
    assert seq.read_bytes() == par.read_bytes()


def test_train_bpe_first_merge(tmp_path, capsys):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text(
        " ".join(["low"] * 5 + ["lower"] * 2 + ["newest"] * 6 + ["widest"] * 3),
        encoding="utf-8",
    )
    model_path = tmp_path / "model.json"
    assert run_cli("train-bpe", str(corpus), "--size", "30", "-o", str(model_path)) == 0
    model = json.loads(model_path.read_text(encoding="utf-8"))
    assert model["merges"][0] == ["e", "s"]


def test_train_bpe_size_below_alphabet(tmp_path, capsys):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("abc def\n", encoding="utf-8")
    assert run_cli("train-bpe", str(corpus), "--size", "2", "-o", str(tmp_path / "m.json")) == 2


def test_train_bpe_empty_corpus(tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("", encoding="utf-8")
    assert run_cli("train-bpe", str(corpus), "--size", "10", "-o", str(tmp_path / "m.json")) == 2


def test_train_bpe_deterministic_file(tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("evler evlerden kitaplar kitaplardan " * 4, encoding="utf-8")
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run_cli("train-bpe", str(corpus), "--size", "40", "-o", str(a)) == 0
    assert run_cli("train-bpe", str(corpus), "--size", "40", "-o", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_eval_self_structural(tmp_path, capsys):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("Evler kitaplar.\nKitap okumayı seviyorum.\n", encoding="utf-8")
    assert run_cli("eval", "--self", str(corpus), "--json") == 0
    payload = json.loads(capsys.readouterr().out)
    row = payload[0]
    assert row["unique"] <= row["total"]
    assert 0 <= row["pure_pct"] <= 100
    assert 0 <= row["tr_pct"] <= 100
    assert row["tokens_per_second"] is None or row["tokens_per_second"] > 0


def test_eval_dump_known_percentages(tmp_path, capsys):
    dump = tmp_path / "dump.jsonl"
    records = [
        {"tokenizer": "hand", "tokens": ["kalk", "ler", "lerdir", ".", "qqq"]},
    ]
    dump.write_text("\n".join(json.dumps(r) for r in records), encoding="utf-8")
    assert run_cli("eval", str(dump), "--json", "--keep-markers") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload[0]["tr_pct"] == 80.0
    assert payload[0]["pure_pct"] == 40.0


def test_eval_two_dumps_sorted(tmp_path, capsys):
    good = tmp_path / "good.jsonl"
    good.write_text(json.dumps({"tokenizer": "good", "tokens": ["kalk"]}), encoding="utf-8")
    bad = tmp_path / "bad.jsonl"
    bad.write_text(json.dumps({"tokenizer": "bad", "tokens": ["qqq"]}), encoding="utf-8")
    assert run_cli("eval", str(bad), str(good)) == 0
    out = capsys.readouterr().out
    assert out.index("good") < out.index("bad")


def test_eval_malformed_dump_line(tmp_path, capsys):
    dump = tmp_path / "dump.jsonl"
    dump.write_text('{"tokenizer": "x", "tokens": ["a"]}\nnot json\n', encoding="utf-8")
    assert run_cli("eval", str(dump)) == 2
    assert "line 2" in capsys.readouterr().err


def test_lexicon_validate_ok(capsys):
    assert run_cli("lexicon", "validate", str(BUNDLED_LEXICON)) == 0
    assert "OK" in capsys.readouterr().out


def test_lexicon_validate_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": 1, "specials": ["space"]}', encoding="utf-8")
    assert run_cli("lexicon", "validate", str(bad)) == 2


def test_usage_error_exit_code():
    result = subprocess.run(
        [sys.executable, "-m", "morphotok.cli", "encode", "--no-such-flag"],
        capture_output=True,
    )
    assert result.returncode == 1


def test_eval_without_inputs_is_data_error(capsys):
    assert run_cli("eval") == 2


def test_decode_ids_reading_example(tmp_path, capsys):
    from morphotok import Tokenizer

    tok = Tokenizer.load()
    seq = ["<uppercase>", "kitap", "<space>", "okuma", "yı",
           "<space>", "sev", "i", "yor", "um", "."]
    ids = tok.surfaces_to_ids(seq)
    src = tmp_path / "ids.txt"
    src.write_text(" ".join(str(i) for i in ids) + "\n", encoding="utf-8")
    assert run_cli("decode", "--ids", str(src)) == 0
    assert capsys.readouterr().out == "Kitap okumayı seviyorum.\n"
