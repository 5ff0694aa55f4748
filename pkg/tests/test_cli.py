"""Command-line interface: subcommands, file formats, exit codes."""

import csv
import os

import numpy as np
import pytest
import yaml

from paslab.cli import main, read_bit_blocks, read_symbols_csv
from paslab.edi import edi_estimate
from paslab.fiber import load_waveform

from conftest import SEED, micro_raw, preset_path

SHAPER_FLAGS = [
    "--n", "20", "--shaping-rate", "1.0", "--list", "v=2",
    "--window", "4", "--alphabet", "1,3,5,7",
]


def _write_bits(path, blocks):
    path.write_text("".join("".join(str(b) for b in blk) + "\n" for blk in blocks))


def test_design_reports_the_composition(capsys):
    rc = main(["design", "--n", "1800", "--shaping-rate", "2.4", "--v", "4"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "modulation: 256QAM (16-PAM per component)" in out
    assert "input_bits_k: 4324" in out
    assert "composition: 538 466 348 226 126 61 26 9" in out
    assert "list_rate_loss_bit_per_amplitude: 0.020122" in out


def test_shape_deshape_roundtrip(tmp_path, capsys):
    rng = np.random.default_rng(SEED)
    blocks = [rng.integers(0, 2, 20) for _ in range(4)]  # 2 QAM blocks
    bits_in = tmp_path / "info.txt"
    _write_bits(bits_in, blocks)
    amps = tmp_path / "amps.txt"
    rc = main(["shape", *SHAPER_FLAGS, str(bits_in), "--out", str(amps)])
    assert rc == 0

    with open(str(amps) + ".list.csv", newline="") as fh:
        sidecar = list(csv.reader(fh))
    assert sidecar[0] == ["block_id", "selected_i", "selected_j", "edi_db"]
    assert len(sidecar) == 3
    for row in sidecar[1:]:
        assert 0 <= int(row[1]) < 4 and 0 <= int(row[2]) < 4

    bits_out = tmp_path / "back.txt"
    rc = main(["deshape", *SHAPER_FLAGS, str(amps), "--out", str(bits_out)])
    assert rc == 0
    got = read_bit_blocks(bits_out)
    assert len(got) == 4
    for want, back in zip(blocks, got):
        assert back.tolist() == list(want)


def test_shape_rejects_odd_line_count(tmp_path):
    rng = np.random.default_rng(SEED)
    bits_in = tmp_path / "odd.txt"
    _write_bits(bits_in, [rng.integers(0, 2, 20) for _ in range(3)])
    rc = main(["shape", *SHAPER_FLAGS, str(bits_in), "--out", str(tmp_path / "x")])
    assert rc == 2


def test_shape_rejects_bad_bit_characters(tmp_path):
    bits_in = tmp_path / "bad.txt"
    bits_in.write_text("01x10\n01010\n")
    rc = main(["shape", *SHAPER_FLAGS, str(bits_in), "--out", str(tmp_path / "x")])
    assert rc == 2


def test_malformed_list_flag(tmp_path):
    bits_in = tmp_path / "info.txt"
    _write_bits(bits_in, [np.zeros(20, dtype=int)] * 2)
    rc = main([
        "shape", "--n", "20", "--shaping-rate", "1.0", "--list", "w=2",
        "--window", "4", "--alphabet", "1,3,5,7",
        str(bits_in), "--out", str(tmp_path / "x"),
    ])
    assert rc == 2


def test_edi_command_matches_library(tmp_path, capsys):
    rng = np.random.default_rng(SEED)
    syms = rng.normal(size=64) + 1j * rng.normal(size=64)
    path = tmp_path / "syms.csv"
    path.write_text("".join(f"{z.real},{z.imag}\n" for z in syms))

    rc = main(["edi", str(path), "--window", "10"])
    out = capsys.readouterr().out
    assert rc == 0
    rows = list(csv.reader(out.strip().splitlines()))
    assert rows[0] == ["block_id", "edi_linear", "edi_db"]
    assert len(rows) == 2
    want = edi_estimate(syms, 10)
    assert float(rows[1][1]) == pytest.approx(want.linear, abs=1e-7)
    assert float(rows[1][2]) == pytest.approx(want.db, abs=1e-5)

    out_csv = tmp_path / "edi.csv"
    rc = main(["edi", str(path), "--window", "10", "--block-len", "32",
               "--out", str(out_csv)])
    assert rc == 0
    with open(out_csv, newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 3  # two blocks of 32

    rc = main(["edi", str(path), "--window", "10", "--block-len", "50"])
    assert rc == 2


def test_read_symbols_rejects_malformed_rows(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0,2.0\n3.0\n")
    from paslab.cli import CliError

    with pytest.raises(CliError):
        read_symbols_csv(path)


def test_validate_smoke_preset(capsys):
    rc = main(["validate", "--config", preset_path("smoke_desk")])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.strip() == "ok"


def test_validate_reports_issues(capsys):
    rc = main([
        "validate", "--config", preset_path("smoke_desk"),
        "--set", "shaper.window=11",
    ])
    out = capsys.readouterr().out
    assert rc == 2
    assert "shaper.window" in out


def test_config_commands_need_config():
    assert main(["validate"]) == 2
    assert main(["sweep"]) == 2


def test_missing_config_file():
    assert main(["validate", "--config", "/nonexistent/exp.yaml"]) == 2


def test_simulate_micro_run(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PASLAB_OUTDIR", str(tmp_path / "runs"))
    cfg = tmp_path / "micro.yaml"
    cfg.write_text(yaml.safe_dump(micro_raw()))
    rc = main(["simulate", "--config", str(cfg), "--dump-wave"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "v0: snr" in out and "v4: snr" in out
    outdir = tmp_path / "runs" / "micro"
    with open(outdir / "sweep.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 3
    wave = load_waveform(outdir / "rx_v0_00.wave")
    assert wave.size == 180 * 4 * 8  # blocklength x blocks x sps
    assert np.any(wave != 0)


def test_simulate_aborts_on_hot_launch(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PASLAB_OUTDIR", str(tmp_path / "runs"))
    cfg = tmp_path / "micro.yaml"
    cfg.write_text(yaml.safe_dump(micro_raw()))
    rc = main([
        "simulate", "--config", str(cfg),
        "--set", "wdm.per_channel_power_dbm=30",
        "--set", "sweep.values=[30.0]",
    ])
    assert rc == 3


def test_sweep_flipping_micro(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PASLAB_OUTDIR", str(tmp_path / "runs"))
    cfg = tmp_path / "flip.yaml"
    raw = micro_raw(
        variants=[0, 1],
        sweep=dict(axis="flipping", values=[0, 1], blocks=3),
    )
    cfg.write_text(yaml.safe_dump(raw))
    rc = main(["sweep", "--config", str(cfg)])
    assert rc == 0
    with open(tmp_path / "runs" / "micro" / "sweep.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "v"
    assert len(rows) == 5
