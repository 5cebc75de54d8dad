"""Command-line front end: construct, encode, decode, simulate, analyze, export.

Code specs are persisted as small key/value text files so other tools can
consume them:

    N 96
    K 48
    kernels 2,2,2,2,2,3
    frozen 0,1,2,3,...      # sorted frozen indices

Reports are CSV (default) or JSON arrays with the same fields. The default
output directory for `construct` comes from $MKPOLAR_OUTDIR (falling back to
the working directory); other commands write to --out or stdout.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analysis
from .channel import StopRule, run_fer
from .construction import (
    CodeSpec,
    OrderingStrategy,
    construct_code,
    design_code,
    ga_reliabilities,
)
from .encoding import encode_message
from .fast_ssc import FastSSCDecoder, NodeLimits, build_schedule
from .kernels import factor_length
from .sc import SCDecoder

FER_FIELDS = ("ebn0_db", "frames", "frame_errors", "bit_errors", "fer", "ber")
ANALYSIS_FIELDS = (
    "N",
    "R",
    "ordering",
    "sc_nodes",
    "fast_nodes",
    "r0",
    "r1",
    "spc",
    "rep2",
    "rep3a",
    "rep3b",
    "rep3c",
    "reduction_pct",
)

ORDERINGS = {
    "first": OrderingStrategy.FIRST,
    "last": OrderingStrategy.LAST,
    "hr": OrderingStrategy.HIGHEST_RELIABILITY,
}


class CommandError(Exception):
    """Fatal usage or environment problem; message goes to stderr."""


@dataclass
class RunConfig:
    """Normalized arguments of one CLI invocation."""

    command: str
    n_bits: int | None = None
    k_bits: int | None = None
    kernels: str | None = None
    ordering: str = "last"
    ebn0_db: float = 3.0
    decoder: str = "sc"
    limits: NodeLimits = field(default_factory=NodeLimits)
    snrs: tuple = ()
    stop: StopRule = field(default_factory=StopRule)
    seed: int = 0
    workers: int = 1
    fixed_construction: bool = False
    spec_path: str | None = None
    message: str | None = None
    llr_path: str | None = None
    out: str | None = None
    fmt: str = "csv"
    table2: bool = False
    sweep_k: int | None = None
    sweep_n: int | None = None


def save_code_spec(spec, path):
    lines = [
        f"N {spec.n_bits}",
        f"K {spec.k_bits}",
        "kernels " + ",".join(str(k) for k in spec.kernels),
        "frozen " + ",".join(str(i) for i in spec.frozen_indices),
        "",
    ]
    Path(path).write_text("\n".join(lines))


def load_code_spec(path):
    fields = {}
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(" ")
        fields[key] = value.strip()
    try:
        n = int(fields["N"])
        k = int(fields["K"])
        kernels = tuple(int(x) for x in fields["kernels"].split(","))
        frozen_idx = (
            [int(x) for x in fields["frozen"].split(",")] if fields.get("frozen") else []
        )
    except (KeyError, ValueError) as exc:
        raise CommandError(f"malformed code spec file {path}: {exc}") from exc
    frozen = np.zeros(n, dtype=np.uint8)
    frozen[frozen_idx] = 1
    return CodeSpec(n_bits=n, k_bits=k, kernels=kernels, frozen=frozen)


def emit_report(rows, fields, fmt="csv", path=None):
    """Write rows as CSV or JSON with a stable column order."""
    if fmt == "csv":
        lines = [",".join(fields)]
        for row in rows:
            lines.append(",".join(_csv_cell(row[f]) for f in fields))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        text = json.dumps([{f: row[f] for f in fields} for row in rows], indent=2) + "\n"
    else:
        raise CommandError(f"unknown output format {fmt!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _csv_cell(value):
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def _default_outdir():
    return Path(os.environ.get("MKPOLAR_OUTDIR", "."))


def _build_code(cfg):
    if cfg.spec_path:
        return load_code_spec(cfg.spec_path)
    if cfg.kernels is not None:
        if cfg.k_bits is None:
            raise CommandError("--kernels also needs --k")
        try:
            kv = tuple(int(x) for x in cfg.kernels.split(","))
            return design_code(kv, cfg.k_bits, ebn0_db=cfg.ebn0_db)
        except ValueError as exc:
            raise CommandError(str(exc)) from exc
    if cfg.n_bits is None or cfg.k_bits is None:
        raise CommandError("either --spec, --kernels or both --n and --k are required")
    if not 0 < cfg.k_bits < cfg.n_bits:
        raise CommandError(f"need 0 < K < N, got K={cfg.k_bits}, N={cfg.n_bits}")
    try:
        factor_length(cfg.n_bits)
    except ValueError as exc:
        raise CommandError(str(exc)) from exc
    return construct_code(cfg.n_bits, cfg.k_bits, ORDERINGS[cfg.ordering], ebn0_db=cfg.ebn0_db)


def _parse_bits(text, expect_len):
    text = text.strip()
    if len(text) != expect_len or set(text) - {"0", "1"}:
        raise CommandError(f"expected {expect_len} bits of 0/1, got {text!r}")
    return np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")


def _bits_to_str(bits):
    return "".join(str(int(b)) for b in bits)


def _read_llrs(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return np.array([float(tok) for tok in text.replace(",", " ").split()])
    except ValueError as exc:
        raise CommandError(f"could not parse LLR values: {exc}") from exc


def parse_snr_range(text):
    """Parse '1:0.5:4' (start:step:stop, inclusive) or a comma list '2,3,4'."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise CommandError(f"bad SNR range {text!r}; expected start:step:stop")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise CommandError("SNR step must be positive")
        count = int(round((stop - start) / step)) + 1
        return tuple(round(start + i * step, 6) for i in range(max(count, 0)) if start + i * step <= stop + 1e-9)
    return tuple(float(p) for p in text.split(","))


def cmd_construct(cfg):
    spec = _build_code(cfg)
    outdir = Path(cfg.out) if cfg.out else _default_outdir()
    outdir.mkdir(parents=True, exist_ok=True)
    label = analysis.ordering_label(spec.kernels)
    stem = f"pc_N{spec.n_bits}_K{spec.k_bits}_{label}"
    save_code_spec(spec, outdir / f"{stem}.spec")
    z = ga_reliabilities(spec.kernels, spec.k_bits / spec.n_bits, cfg.ebn0_db)
    rows = [
        {"index": i, "ga_mean": float(z[i]), "frozen": int(spec.frozen[i])}
        for i in range(spec.n_bits)
    ]
    emit_report(rows, ("index", "ga_mean", "frozen"), cfg.fmt, outdir / f"{stem}_reliability.{cfg.fmt}")
    print(outdir / f"{stem}.spec")
    return 0


def cmd_encode(cfg):
    spec = _build_code(cfg)
    if cfg.message is None:
        raise CommandError("--message is required (use '-' to read from stdin)")
    text = sys.stdin.readline() if cfg.message == "-" else cfg.message
    msg = _parse_bits(text, spec.k_bits)
    print(_bits_to_str(encode_message(msg, spec)))
    return 0


def cmd_decode(cfg):
    spec = _build_code(cfg)
    if cfg.llr_path is None:
        raise CommandError("--llrs FILE is required (use '-' for stdin)")
    llr = _read_llrs(cfg.llr_path)
    if llr.shape != (spec.n_bits,):
        raise CommandError(f"expected {spec.n_bits} LLRs, got {llr.size}")
    if cfg.decoder == "sc":
        u_hat, x_hat = SCDecoder(spec).decode(llr)
    else:
        u_hat, x_hat = FastSSCDecoder(spec, limits=cfg.limits).decode(llr)
    print("u_hat " + _bits_to_str(u_hat))
    print("x_hat " + _bits_to_str(x_hat))
    print("info " + _bits_to_str(u_hat[spec.info_indices]))
    return 0


def cmd_simulate(cfg):
    spec = _build_code(cfg)
    if not cfg.snrs:
        raise CommandError("--snr is required, e.g. --snr 1:0.5:4")
    stats = run_fer(
        spec,
        decoder=cfg.decoder,
        snrs=cfg.snrs,
        stop=cfg.stop,
        workers=cfg.workers,
        seed=cfg.seed,
        limits=cfg.limits,
        redesign_per_snr=not cfg.fixed_construction,
    )
    emit_report(stats.rows(), FER_FIELDS, cfg.fmt, cfg.out)
    return 0


def cmd_analyze(cfg):
    if cfg.table2:
        rows = analysis.latency_table(analysis.table2_specs(cfg.ebn0_db), cfg.limits)
    elif cfg.sweep_k is not None:
        rows = analysis.sweep_fixed_k(cfg.sweep_k, ebn0_db=cfg.ebn0_db, limits=cfg.limits)
    elif cfg.sweep_n is not None:
        rows = analysis.sweep_fixed_n(cfg.sweep_n, ebn0_db=cfg.ebn0_db, limits=cfg.limits)
    else:
        raise CommandError("analyze needs one of --table2, --sweep-k K, --sweep-n N")
    emit_report(rows, ANALYSIS_FIELDS, cfg.fmt, cfg.out)
    return 0


def cmd_schedule_export(cfg):
    spec = _build_code(cfg)
    lines = build_schedule(spec, cfg.limits).export_lines()
    text = "\n".join(lines) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {
    "construct": cmd_construct,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "simulate": cmd_simulate,
    "analyze": cmd_analyze,
    "schedule-export": cmd_schedule_export,
}


def run_command(cfg):
    """Dispatch a RunConfig; returns the process exit status."""
    try:
        return COMMANDS[cfg.command](cfg)
    except (CommandError, ValueError) as exc:
        print(f"mkpolar {cfg.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"mkpolar {cfg.command}: {exc}", file=sys.stderr)
        return 1


def _add_code_args(p, with_spec=False):
    p.add_argument("--n", type=int, help="codeword length (must be 2^a * 3^b)")
    p.add_argument("--k", type=int, help="message length")
    p.add_argument("--kernels", help="explicit kernel vector, e.g. 2,2,3 (overrides --n/--order)")
    p.add_argument("--order", choices=sorted(ORDERINGS), default="last")
    p.add_argument("--ebn0", type=float, default=3.0, help="construction Eb/N0 in dB")
    if with_spec:
        p.add_argument("--spec", help="load the code from a spec file instead of --n/--k")


def _add_limit_args(p):
    p.add_argument("--rep3a-max", type=int, default=27, choices=(3, 9, 27))
    p.add_argument("--no-spc", action="store_true", help="disable SPC nodes")
    p.add_argument("--general-rep", action="store_true", help="mask-based REP for any kernel mix")


def _add_report_args(p):
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mkpolar", description="Multi-kernel polar code toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="design a code and write spec + reliability files")
    _add_code_args(p)
    p.add_argument("--out", help="output directory (default $MKPOLAR_OUTDIR or .)")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")

    p = sub.add_parser("encode", help="encode a message with a code")
    _add_code_args(p, with_spec=True)
    p.add_argument("--message", help="K bits as a 0/1 string, or '-' for stdin")

    p = sub.add_parser("decode", help="decode channel LLRs")
    _add_code_args(p, with_spec=True)
    p.add_argument("--llrs", dest="llr_path", help="file of whitespace/comma separated LLRs, '-' for stdin")
    p.add_argument("--decoder", choices=("sc", "fastssc"), default="sc")
    _add_limit_args(p)

    p = sub.add_parser("simulate", help="Monte-Carlo FER/BER sweep")
    _add_code_args(p)
    p.add_argument("--decoder", choices=("sc", "fastssc"), default="sc")
    p.add_argument("--snr", help="Eb/N0 sweep: start:step:stop or comma list")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument(
        "--fixed-construction",
        action="store_true",
        help="keep the design-SNR frozen set instead of redesigning per point",
    )
    _add_limit_args(p)
    _add_report_args(p)

    p = sub.add_parser("analyze", help="node-count / latency-reduction reports")
    p.add_argument("--table2", action="store_true", help="the 24 reference (N, R, ordering) rows")
    p.add_argument("--sweep-k", type=int, help="fixed-K sweep over rates 1/8..7/8")
    p.add_argument("--sweep-n", type=int, help="fixed-N sweep over rates 1/8..7/8")
    p.add_argument("--ebn0", type=float, default=3.0)
    _add_limit_args(p)
    _add_report_args(p)

    p = sub.add_parser("schedule-export", help="dump the pruned schedule as depth,offset,span,class")
    _add_code_args(p, with_spec=True)
    _add_limit_args(p)
    p.add_argument("--out", help="output file (default stdout)")

    return parser


def config_from_args(args):
    limits = NodeLimits(
        rep3a_max_span=getattr(args, "rep3a_max", 27),
        spc_max_span=0 if getattr(args, "no_spc", False) else None,
        general_rep=getattr(args, "general_rep", False),
    )
    cfg = RunConfig(command=args.command, limits=limits)
    cfg.n_bits = getattr(args, "n", None)
    cfg.k_bits = getattr(args, "k", None)
    cfg.kernels = getattr(args, "kernels", None)
    cfg.ordering = getattr(args, "order", "last")
    cfg.ebn0_db = getattr(args, "ebn0", 3.0)
    cfg.decoder = getattr(args, "decoder", "sc")
    cfg.seed = getattr(args, "seed", 0)
    cfg.workers = getattr(args, "workers", 1)
    cfg.fixed_construction = getattr(args, "fixed_construction", False)
    cfg.spec_path = getattr(args, "spec", None)
    cfg.message = getattr(args, "message", None)
    cfg.llr_path = getattr(args, "llr_path", None)
    cfg.out = getattr(args, "out", None)
    cfg.fmt = getattr(args, "fmt", "csv")
    cfg.table2 = getattr(args, "table2", False)
    cfg.sweep_k = getattr(args, "sweep_k", None)
    cfg.sweep_n = getattr(args, "sweep_n", None)
    if getattr(args, "snr", None):
        cfg.snrs = parse_snr_range(args.snr)
    cfg.stop = StopRule(
        max_frames=getattr(args, "max_frames", 1_000_000),
        min_frame_errors=getattr(args, "min_errors", 100),
    )
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except CommandError as exc:
        print(f"mkpolar: {exc}", file=sys.stderr)
        return 2
    return run_command(cfg)


if __name__ == "__main__":
    sys.exit(main())
