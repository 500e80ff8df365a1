"""Command-line entry point: ``cyclodyne <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from cyclodyne.adic import raa_synthesize, two_adic_complexity
from cyclodyne.cyclotomy import build_partition
from cyclodyne.ntcore import make_params, twin_pairs
from cyclodyne.sequences import BinarySequence, generate, linear_complexity
from cyclodyne.verify import coprimality_audit, lemma_suite, verify_det

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CSV_HEADER = ["p", "q", "N", "class", "weight", "gcd", "phi2", "lc"]

FORMAT_HELP = (
    "bits: one line of '0'/'1', index 0 first. "
    "hex: S(2) in hexadecimal, i.e. bits packed LSB-first into nibbles, "
    "zero-padded at the top to ceil(N/4) digits. "
    "json: {p, q, g, class, period, support}. csv: sweep rows."
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    q: int | None = None
    seq_class: int | None = None
    g_override: int | None = None
    primes: int = 5
    seed: int = 0
    max_p: int = 31
    format: str = "json"
    input: str | None = None
    output: str | None = None
    count: int | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        seed = ns.seed
        env = os.environ.get("CYCLODYNE_SEED")
        if env is not None:
            try:
                seed = int(env)
            except ValueError:
                raise UsageError(f"CYCLODYNE_SEED must be an integer, got {env!r}")
        return cls(
            command=ns.command,
            p=ns.p,
            q=ns.q,
            seq_class=ns.seq_class,
            g_override=ns.g,
            primes=ns.primes,
            seed=seed,
            max_p=ns.max_p,
            format=ns.format or ("bits" if ns.command == "gen" else "json"),
            input=ns.input,
            output=ns.output,
            count=ns.count,
        )

    def params(self):
        if self.p is None or self.q is None:
            raise UsageError("--p and --q are required")
        try:
            return make_params(self.p, self.q, self.g_override)
        except ValueError as exc:
            raise UsageError(str(exc))

    def which(self) -> int:
        if self.seq_class not in (1, 2):
            raise UsageError("--class must be 1 or 2")
        return self.seq_class


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _sequence_from_config(cfg: RunConfig) -> tuple[BinarySequence, dict]:
    if cfg.input is not None:
        try:
            with open(cfg.input, encoding="utf-8") as fh:
                seq = BinarySequence.parse(fh.read(), cfg.count)
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read sequence from {cfg.input}: {exc}")
        return seq, {"p": None, "q": None, "class": seq.class_tag}
    pr = cfg.params()
    which = cfg.which()
    return generate(build_partition(pr), which), {"p": pr.p, "q": pr.q, "class": which}


def _analysis_row(seq: BinarySequence, meta: dict) -> dict:
    rep = two_adic_complexity(seq)
    return {
        "p": meta["p"],
        "q": meta["q"],
        "class": meta["class"],
        "N": seq.period,
        "weight": seq.weight,
        "S2": str(rep.s2),
        "gcd": str(rep.g_common),
        "m": str(rep.m),
        "n": str(rep.n),
        "phi2": rep.phi2,
        "linear_complexity": linear_complexity(seq),
    }


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in sorted(rows, key=lambda r: (r["p"] or 0, r["q"] or 0, str(r["class"]))):
        w.writerow([r["p"], r["q"], r["N"], r["class"], r["weight"], r["gcd"], r["phi2"], r["linear_complexity"]])
    return buf.getvalue()


def cmd_params(cfg: RunConfig) -> tuple[str, int]:
    return _dumps(cfg.params().to_dict()), EXIT_OK


def cmd_gen(cfg: RunConfig) -> tuple[str, int]:
    seq, _ = _sequence_from_config(cfg)
    if cfg.format == "bits":
        return seq.to_bits(), EXIT_OK
    if cfg.format == "hex":
        return seq.to_hex(), EXIT_OK
    if cfg.format == "json":
        return seq.to_json(), EXIT_OK
    raise UsageError(f"gen does not support format {cfg.format!r}")


def cmd_analyze(cfg: RunConfig) -> tuple[str, int]:
    seq, meta = _sequence_from_config(cfg)
    row = _analysis_row(seq, meta)
    if cfg.format == "csv":
        return _csv([row]), EXIT_OK
    return _dumps(row), EXIT_OK


def cmd_verify_lemmas(cfg: RunConfig) -> tuple[str, int]:
    pr = cfg.params()
    checks = lemma_suite(pr, seed=cfg.seed)
    ok = all(c.ok for c in checks)
    out = {"p": pr.p, "q": pr.q, "checks": [c.to_dict() for c in checks], "ok": ok}
    return _dumps(out), EXIT_OK if ok else EXIT_FAIL


def cmd_verify_det(cfg: RunConfig) -> tuple[str, int]:
    pr = cfg.params()
    which = cfg.which()
    if cfg.primes < 1:
        raise UsageError("--primes must be at least 1")
    rep = verify_det(pr, which, trial_primes=cfg.primes, seed=cfg.seed, strict=False)
    audit = coprimality_audit(pr, which, strict=False)
    out = rep.to_dict()
    out["audit"] = audit.to_dict()
    ok = rep.ok and (audit.all_coprime or not pr.is_twin)
    return _dumps(out), EXIT_OK if ok else EXIT_FAIL


def cmd_verify_twin(cfg: RunConfig) -> tuple[str, int]:
    pairs = twin_pairs(cfg.max_p)
    if not pairs:
        print(f"warning: no twin prime pairs with p <= {cfg.max_p}", file=sys.stderr)
    rows, results = [], []
    for p, q in pairs:
        part = build_partition(make_params(p, q))
        for which in (1, 2):
            seq = generate(part, which)
            rep = two_adic_complexity(seq)
            ok = rep.g_common == 1 and rep.phi2 == seq.period - 1
            results.append({"p": p, "q": q, "class": which, "N": seq.period, "gcd": str(rep.g_common),
                            "phi2": rep.phi2, "ok": ok})
            if cfg.format == "csv":
                rows.append(_analysis_row(seq, {"p": p, "q": q, "class": which}))
    ok = all(r["ok"] for r in results)
    if cfg.format == "csv":
        return _csv(rows), EXIT_OK if ok else EXIT_FAIL
    return _dumps({"max_p": cfg.max_p, "pairs": len(pairs), "results": results, "ok": ok}), (
        EXIT_OK if ok else EXIT_FAIL
    )


def cmd_raa(cfg: RunConfig) -> tuple[str, int]:
    seq, meta = _sequence_from_config(cfg) if cfg.input is None else (None, {})
    if cfg.input is not None:
        try:
            with open(cfg.input, encoding="utf-8") as fh:
                text = fh.read().strip()
        except OSError as exc:
            raise UsageError(str(exc))
        if not text or set(text) - {"0", "1"}:
            raise UsageError("raa --input expects a line of '0'/'1' characters (a stream prefix)")
        bits = [int(c) for c in text]
        if cfg.count is not None:
            bits = bits[: cfg.count]
    else:
        count = cfg.count if cfg.count is not None else 2 * seq.period + 4
        bits = seq.periodized(count)
    if len(bits) < 2:
        raise UsageError("need at least 2 bits")
    r = raa_synthesize(bits)
    out = {**meta, "bits": len(bits), "f": str(r.f), "g": str(r.g), "log2_g": r.g.bit_length() - 1}
    return _dumps(out), EXIT_OK


COMMANDS = {
    "params": cmd_params,
    "gen": cmd_gen,
    "analyze": cmd_analyze,
    "verify-lemmas": cmd_verify_lemmas,
    "verify-det": cmd_verify_det,
    "verify-twin": cmd_verify_twin,
    "raa": cmd_raa,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cyclodyne",
        description="Ding-Helleseth generalized cyclotomic sequences of period pq: generation, "
        "2-adic complexity and verification.",
        epilog="Exit codes: 0 success, 1 verification failure, 2 usage error. "
        "CYCLODYNE_SEED overrides --seed.",
    )
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--p", type=int)
    ap.add_argument("--q", type=int)
    ap.add_argument("--class", dest="seq_class", type=int, choices=(1, 2))
    ap.add_argument("--g", type=int, help="common primitive root to use instead of the smallest")
    ap.add_argument("--primes", type=int, default=5, help="trial primes for verify-det")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-p", dest="max_p", type=int, default=31, help="sweep bound for verify-twin")
    ap.add_argument("--format", choices=("bits", "hex", "json", "csv"), help=FORMAT_HELP)
    ap.add_argument("--input", help="sequence file (bits, json, or hex with --count as period)")
    ap.add_argument("--output", help="write to this file instead of stdout")
    ap.add_argument("--count", type=int, help="bit count for raa; period for hex input")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig.from_args(ns)
        text, code = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
