"""Command-line front end.

Subcommands: design, shape, deshape, edi, simulate, sweep, validate.
Experiment-level commands read a YAML config (see presets/) plus
`--set key=value` overrides; shaping-level commands take their few
parameters directly.

File formats:
  - bit blocks: one block per line, a string of 0/1 characters; shaped
    QAM blocks use two lines per block (I branch line, then Q branch)
  - amplitude blocks: one block per line, whitespace-separated decimal
    integers; two lines per QAM block as above
  - symbol blocks: CSV rows `re,im`, one symbol per row

Exit codes: 0 success, 2 configuration error, 3 numerical-stability
abort during propagation.
"""

import argparse
import csv
import dataclasses
import math
import os
import sys

import numpy as np

from .design import DEFAULT_ALPHABET, shaping_design
from .edi import edi_estimate
from .experiments import (
    ExperimentSpec,
    _channel_sweep,
    _write_sweep_csv,
    run_sweep,
    validate_config,
)
from .fiber import StepInstabilityError
from .lccdm import LccdmConfig, lccdm_decode, lccdm_encode

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3


class CliError(Exception):
    pass


def _parse_alphabet(text: str):
    return tuple(int(t) for t in text.split(","))


def _parse_list_flag(text):
    # the selection flag is spelled "v=<count>"
    if text is None:
        return 0
    key, _, value = text.partition("=")
    if key.strip() != "v" or not value:
        raise CliError(f"--list takes v=<flipping bits>, got {text!r}")
    return int(value)


def read_bit_blocks(path):
    blocks = []
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if set(line) - {"0", "1"}:
                raise CliError(f"{path}:{ln}: bit lines may contain only 0/1")
            blocks.append(np.frombuffer(line.encode(), dtype=np.uint8) - ord("0"))
    return blocks


def write_bit_blocks(path, blocks):
    with open(path, "w") as fh:
        for b in blocks:
            fh.write("".join("1" if x else "0" for x in np.asarray(b)) + "\n")


def read_amplitude_blocks(path):
    blocks = []
    with open(path) as fh:
        for line in fh:
            line = line.split()
            if line:
                blocks.append(np.array([int(t) for t in line], dtype=np.int64))
    return blocks


def write_amplitude_blocks(path, blocks):
    with open(path, "w") as fh:
        for b in blocks:
            fh.write(" ".join(str(int(x)) for x in np.asarray(b)) + "\n")


def read_symbols_csv(path) -> np.ndarray:
    out = []
    with open(path) as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            if len(row) != 2:
                raise CliError(f"{path}: expected re,im rows")
            out.append(complex(float(row[0]), float(row[1])))
    return np.asarray(out, dtype=np.complex128)


def _load_spec(args) -> ExperimentSpec:
    if not args.config:
        raise CliError("this subcommand needs --config")
    try:
        return ExperimentSpec.from_yaml(args.config, args.set or ())
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise CliError(f"cannot load config {args.config}: {e}") from e


def _require_valid_cli(spec):
    issues = validate_config(spec)
    if issues:
        for i in issues:
            print(f"{i.field}: {i.message}", file=sys.stderr)
        raise CliError(f"{len(issues)} configuration problem(s)")


def _shaper_config(args):
    v = _parse_list_flag(args.list)
    d = shaping_design(args.n, args.shaping_rate, v, _parse_alphabet(args.alphabet))
    return (
        LccdmConfig(d.composition, d.k, v, args.window, args.flip_position),
        d,
    )


def cmd_design(args) -> int:
    d = shaping_design(
        args.n, args.shaping_rate, args.v, _parse_alphabet(args.alphabet)
    )
    counts = " ".join(str(c) for c in d.composition.counts)
    alphabet = " ".join(str(a) for a in d.composition.symbols)
    lines = [
        f"modulation: {(2 * len(d.composition.symbols)) ** 2}QAM "
        f"({2 * len(d.composition.symbols)}-PAM per component)",
        f"blocklength_n: {d.n}",
        f"shaping_rate_bit_per_amplitude: {d.shaping_rate:.6f}",
        f"flipping_bits_v: {d.v}",
        f"input_bits_k: {d.k}",
        f"alphabet: {alphabet}",
        f"composition: {counts}",
        f"lambda: {d.lam:.8f}",
        f"design_entropy_bits: {d.design_entropy:.6f}",
        f"rate_loss_bit_per_amplitude: {d.rate_loss:.6f}",
        f"list_rate_loss_bit_per_amplitude: {d.list_rate_loss:.6f}",
        f"qam_scale: {d.qam_scale():.8f}",
    ]
    print("\n".join(lines))
    return EXIT_OK


def cmd_shape(args) -> int:
    cfg, design = _shaper_config(args)
    bits = read_bit_blocks(args.bits)
    if len(bits) % 2:
        raise CliError("shape input must hold I,Q line pairs")
    scale2 = design.qam_scale() ** 2
    amp_blocks = []
    sidecar = []
    for b in range(len(bits) // 2):
        res = lccdm_encode(bits[2 * b], bits[2 * b + 1], cfg)
        amp_blocks.append(res.amplitudes_i)
        amp_blocks.append(res.amplitudes_q)
        edi_db = 10.0 * math.log10(res.edi.linear * scale2)
        sidecar.append((b, res.branch_i, res.branch_q, edi_db))
    write_amplitude_blocks(args.out, amp_blocks)
    sidecar_path = args.sidecar or args.out + ".list.csv"
    with open(sidecar_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["block_id", "selected_i", "selected_j", "edi_db"])
        for row in sidecar:
            w.writerow([row[0], row[1], row[2], f"{row[3]:.6f}"])
    print(f"shaped {len(bits) // 2} block(s) -> {args.out}")
    return EXIT_OK


def cmd_deshape(args) -> int:
    cfg, _ = _shaper_config(args)
    amps = read_amplitude_blocks(args.amplitudes)
    if len(amps) % 2:
        raise CliError("deshape input must hold I,Q line pairs")
    out = []
    for b in range(len(amps) // 2):
        bits_i, bits_q = lccdm_decode(amps[2 * b], amps[2 * b + 1], cfg)
        out.append(bits_i)
        out.append(bits_q)
    write_bit_blocks(args.out, out)
    print(f"deshaped {len(amps) // 2} block(s) -> {args.out}")
    return EXIT_OK


def cmd_edi(args) -> int:
    syms = read_symbols_csv(args.symbols)
    if syms.size == 0:
        raise CliError("no symbols in input")
    block_len = args.block_len or syms.size
    if syms.size % block_len:
        raise CliError(
            f"{syms.size} symbols do not split into blocks of {block_len}"
        )
    rows = []
    for b in range(syms.size // block_len):
        val = edi_estimate(syms[b * block_len : (b + 1) * block_len], args.window)
        rows.append((b, val.linear, val.db))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(["block_id", "edi_linear", "edi_db"])
        for b, lin, db in rows:
            w.writerow([b, f"{lin:.8f}", f"{db:.6f}"])
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec = _load_spec(args)
    if args.dump_wave:
        spec = dataclasses.replace(spec, dump_waveforms=True)
    _require_valid_cli(spec)
    launch = spec.wdm.per_channel_power_dbm
    rows, reports, outdir = _channel_sweep(spec, [(launch, launch, None, None)])
    _write_sweep_csv(os.path.join(outdir, "sweep.csv"), rows, "launch_axis_dbm")
    for r in rows:
        print(
            f"{r.variant}: snr {r.snr_db:.3f} dB, air {r.air_bit4d:.4f} bit/4D, "
            f"ber {r.ber:.6f}, mean edi {r.mean_edi_db:.3f} dB"
        )
    print(f"wrote {outdir}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = _load_spec(args)
    _require_valid_cli(spec)
    run_sweep(spec)
    print(f"wrote {spec.resolved_outdir()}")
    return EXIT_OK


def cmd_validate(args) -> int:
    spec = _load_spec(args)
    issues = validate_config(spec)
    if not issues:
        print("ok")
        return EXIT_OK
    for i in issues:
        print(f"{i.field}: {i.message}")
    return EXIT_CONFIG


def _add_shaper_args(p):
    p.add_argument("--n", type=int, required=True, help="shaping blocklength")
    p.add_argument(
        "--shaping-rate", type=float, required=True, help="bit per amplitude"
    )
    p.add_argument(
        "--list",
        metavar="v=V",
        default=None,
        help="flipping-bit selection, e.g. v=4 (default v=0)",
    )
    p.add_argument("--window", type=int, default=100, help="index window length")
    p.add_argument(
        "--flip-position", choices=("prefix", "suffix"), default="prefix"
    )
    p.add_argument(
        "--alphabet",
        default=",".join(str(a) for a in DEFAULT_ALPHABET),
        help="comma-separated amplitude levels",
    )


def _add_config_args(p):
    p.add_argument("--config", required=False, help="experiment YAML file")
    p.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override a config entry (dotted keys, YAML values)",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="paslab",
        description="shaped-QAM fiber transmission laboratory",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="solve a shaping design")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shaping-rate", type=float, required=True)
    p.add_argument("--v", type=int, default=0, help="flipping bits")
    p.add_argument(
        "--alphabet", default=",".join(str(a) for a in DEFAULT_ALPHABET)
    )
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("shape", help="information bits to amplitude blocks")
    _add_shaper_args(p)
    p.add_argument("bits", help="info-bit file, I/Q line pairs")
    p.add_argument("--out", required=True, help="amplitude-block output file")
    p.add_argument("--sidecar", help="selection CSV (default <out>.list.csv)")
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("deshape", help="amplitude blocks back to bits")
    _add_shaper_args(p)
    p.add_argument("amplitudes", help="amplitude-block file, I/Q line pairs")
    p.add_argument("--out", required=True, help="info-bit output file")
    p.set_defaults(func=cmd_deshape)

    p = sub.add_parser("edi", help="energy dispersion index of symbol blocks")
    p.add_argument("symbols", help="CSV of re,im rows")
    p.add_argument("--window", type=int, required=True)
    p.add_argument(
        "--block-len", type=int, default=0, help="symbols per block (0 = all)"
    )
    p.add_argument("--out", help="output CSV (default stdout)")
    p.set_defaults(func=cmd_edi)

    p = sub.add_parser("simulate", help="one propagation run per variant")
    _add_config_args(p)
    p.add_argument(
        "--dump-wave", action="store_true", help="save received waveforms"
    )
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="run the configured sweep")
    _add_config_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="check a config without running")
    _add_config_args(p)
    p.set_defaults(func=cmd_validate)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except StepInstabilityError as e:
        print(f"propagation aborted: {e}", file=sys.stderr)
        return EXIT_UNSTABLE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
