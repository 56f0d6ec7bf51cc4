"""CLI surface: exit codes, error messages, written output."""

from __future__ import annotations

import pytest

from extract_embeddings.cli import main

from tinymodel import make_rows, read_tsv, write_pairs_csv


def cli(*args: str) -> int:
    return main(list(args))


def test_successful_run_writes_tsv_and_reports(tiny_model_dir, tmp_path, capsys):
    data = write_pairs_csv(make_rows(3, seed=6), tmp_path / "d.csv")
    out = tmp_path / "emb.tsv"
    code = cli("--data", str(data), "--model", str(tiny_model_dir), "--out", str(out))
    assert code == 0
    dim, table = read_tsv(out)
    assert dim == 32 and len(table) == 6
    assert "wrote 6 vectors (dim 32)" in capsys.readouterr().out


def test_unloadable_model_exits_nonzero_with_message(tmp_path, capsys):
    data = write_pairs_csv(make_rows(1), tmp_path / "d.csv")
    code = cli(
        "--data", str(data),
        "--model", str(tmp_path / "missing-model"),
        "--out", str(tmp_path / "o.tsv"),
    )
    assert code == 1
    err = capsys.readouterr().err
    assert "error:" in err and "cannot load model" in err


def test_missing_dataset_exits_nonzero(tiny_model_dir, tmp_path, capsys):
    code = cli(
        "--data", str(tmp_path / "absent.csv"),
        "--model", str(tiny_model_dir),
        "--out", str(tmp_path / "o.tsv"),
    )
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_unknown_pooling_rejected_by_parser(tmp_path, capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli("--data", "d.csv", "--model", "m", "--out", "o.tsv", "--pooling", "max")
    assert excinfo.value.code == 2


def test_cls_pooling_flag_respected(tiny_model_dir, tmp_path):
    data = write_pairs_csv(make_rows(2, seed=9), tmp_path / "d.csv")
    mean_out, cls_out = tmp_path / "mean.tsv", tmp_path / "cls.tsv"
    assert cli("--data", str(data), "--model", str(tiny_model_dir), "--out", str(mean_out)) == 0
    assert (
        cli(
            "--data", str(data),
            "--model", str(tiny_model_dir),
            "--out", str(cls_out),
            "--pooling", "cls",
        )
        == 0
    )
    assert mean_out.read_bytes() != cls_out.read_bytes()


def test_batch_size_one_still_succeeds(tiny_model_dir, tmp_path):
    data = write_pairs_csv(make_rows(2, seed=10), tmp_path / "d.csv")
    out = tmp_path / "o.tsv"
    code = cli(
        "--data", str(data),
        "--model", str(tiny_model_dir),
        "--out", str(out),
        "--batch-size", "1",
    )
    assert code == 0
    _, table = read_tsv(out)
    assert len(table) == 4
