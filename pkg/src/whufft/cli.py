"""``whufft`` command line: verify, bench, table, lemmas, partition.

Exit status: 0 when every check passes, 1 on a numeric failure, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import harness
from .hprime import f_count, lemma_checks, partition


class UsageError(Exception):
    pass


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise UsageError(f"bad size range {text!r}; expected A..B or a single integer")


def _sizes(args, default: tuple[int, int]) -> range:
    lo, hi = default
    if args.range is not None:
        lo, hi = _parse_range(args.range)
    if args.log2n_min is not None:
        lo = args.log2n_min
    if args.log2n_max is not None:
        hi = args.log2n_max
    if lo > hi:
        raise UsageError(f"empty size range {lo}..{hi}")
    if lo < 0 or hi > harness.MAX_COUNT_LOG2N:
        raise UsageError(f"sizes must lie in [0, {harness.MAX_COUNT_LOG2N}]")
    return range(lo, hi + 1)


def _algos(args) -> list[str]:
    raw = args.algo or args.algo_pos
    if raw is None:
        raise UsageError("no algorithm given (use --algo)")
    names = list(harness.ALGORITHMS) if raw == "all" else [a.strip() for a in raw.split(",")]
    for a in names:
        if a not in harness.ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}; expected one of {', '.join(harness.ALGORITHMS)} or all")
    return names


def _read_input(path: str) -> np.ndarray:
    try:
        with open(path) as fh:
            data = json.load(fh)
        arr = np.array([complex(float(re), float(im)) for re, im in data])
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read input vector from {path}: {exc}")
    n = len(arr)
    if n == 0 or n & (n - 1):
        raise UsageError(f"input length must be a power of 2, got {n}")
    return arr


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}")


def _records_text(records, emit: str, seed: int) -> str:
    rows = [r.as_dict() for r in records]
    if emit == "json":
        return json.dumps({"rng": harness.RNG_NAME, "seed": seed, "records": rows}, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(harness.BenchRecord.FIELDS)
    for r in rows:
        w.writerow(["" if r[k] is None else _fmt(r[k]) for k in harness.BenchRecord.FIELDS])
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return v


# -- commands -----------------------------------------------------------------


def cmd_verify(args) -> int:
    algos = _algos(args)
    vectors = None
    if args.input:
        vec = _read_input(args.input)
        sizes = [len(vec).bit_length() - 1]
    else:
        sizes = _sizes(args, (0, 10))
    failed = False
    records = []
    for algo in algos:
        spec = harness.ALGORITHMS[algo]
        tol = args.tol if args.tol is not None else (1e-12 if spec.wht_tol else 1e-10)
        for t in sizes:
            if args.input:
                vectors = [vec.real.copy() if spec.domain == "wht" and not np.any(vec.imag) else vec]
            elif t > spec.max_verify_log2n:
                raise UsageError(f"{algo}: oracle sizes are capped at log2n = {spec.max_verify_log2n}")
            res = harness.verify(algo, t, args.trials, args.seed, tol, args.integer, vectors)
            failed |= not res.passed
            status = "PASS" if res.passed else "FAIL"
            if args.emit is None:
                print(f"{status} {algo} log2n={t} trials={res.trials} max_rel_err={res.max_rel_err:.3e} tol={tol:g}")
            else:
                records.append(harness.bench(algo, t, args.seed, res.max_rel_err))
    if args.emit is not None:
        _write(_records_text(records, args.emit, args.seed), args.out)
    return 1 if failed else 0


def cmd_bench(args) -> int:
    algos = _algos(args)
    records = [harness.bench(a, t, args.seed) for a in algos for t in _sizes(args, (1, 12))]
    _write(_records_text(records, args.emit or "csv", args.seed), args.out)
    return 0


def cmd_table(args) -> int:
    hi = args.log2n_max if args.log2n_max is not None else 16
    if not 1 <= hi <= 20:
        raise UsageError("table needs 1 <= --log2n-max <= 20")
    rows = harness.table(hi, args.seed)
    if (args.emit or "csv") == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["algo", "leading_constant"] + [f"log2n={t}" for t in range(1, hi + 1)])
        for r in rows:
            w.writerow([r["algo"], f"{r['leading_constant']:.6f}"] + [f"{r['ratios'][t]:.6f}" for t in range(1, hi + 1)])
        text = buf.getvalue()
    _write(text, args.out)
    return 0


def cmd_lemmas(args) -> int:
    hi = args.log2n_max if args.log2n_max is not None else 20
    if not 0 <= hi <= 40:
        raise UsageError("lemmas needs 0 <= --log2n-max <= 40")
    rep = lemma_checks(hi)
    base_ok = f_count(4, 1) == 2 and f_count(4, 2) == 1
    lines = [
        f"{'PASS' if rep.sizes_pass else 'FAIL'} sum_j F(N,2^j) 2^j = N for log2n <= {hi}",
        f"{'PASS' if rep.weighted_pass else 'FAIL'} sum_j F(N,2^j) 2^j j = N log2N/3 + 2(-1)^log2N/9 - 2N/9 for log2n <= {hi}",
        f"{'PASS' if base_ok else 'FAIL'} F(4,1) = 2 and F(4,2) = 1",
        f"INFO sum_j F(N,2^j) (2^j/12)(j mod 3) <= N/12 + C N^0.8 holds with C = {rep.max_c:.6f}",
    ]
    _write("\n".join(lines) + "\n", args.out)
    return 0 if (rep.sizes_pass and rep.weighted_pass and base_ok) else 1


def cmd_partition(args) -> int:
    t = args.log2n if args.log2n is not None else args.log2n_max
    if t is None:
        raise UsageError("partition needs a size: partition LOG2N")
    if not 0 <= t <= 20:
        raise UsageError("partition needs 0 <= LOG2N <= 20")
    subsets = partition(1 << t).to_lists()
    if (args.emit or "json") == "json":
        text = json.dumps(subsets, separators=(",", ":")) + "\n"
    else:
        text = "".join(" ".join(map(str, s)) + "\n" for s in subsets)
    _write(text, args.out)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="whufft", description="Operation-counted WHT and FFT kernels.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, algo=True, sizes=True):
        if algo:
            sp.add_argument("algo_pos", nargs="?", metavar="ALGO", help="algorithm, comma list, or 'all'")
            sp.add_argument("--algo", help="same as the positional ALGO")
        if sizes:
            sp.add_argument("range", nargs="?", metavar="A..B", help="log2 size range")
            sp.add_argument("--log2n-min", type=int)
        sp.add_argument("--log2n-max", type=int)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--emit", choices=["csv", "json"])
        sp.add_argument("--out", metavar="PATH")

    v = sub.add_parser("verify", help="compare against brute-force oracles")
    common(v)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--tol", type=float)
    v.add_argument("--integer", action="store_true", help="small-integer inputs")
    v.add_argument("--input", metavar="PATH", help="JSON array of [re, im] pairs")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="count operations per size")
    common(b)
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("table", help="measured total/(N log2 N) next to leading constants")
    common(t, algo=False, sizes=False)
    t.set_defaults(func=cmd_table)

    lm = sub.add_parser("lemmas", help="block-count identities of the H' partition")
    common(lm, algo=False, sizes=False)
    lm.set_defaults(func=cmd_lemmas)

    pt = sub.add_parser("partition", help="WHT block partition of H'_N as JSON")
    pt.add_argument("log2n", nargs="?", type=int)
    common(pt, algo=False, sizes=False)
    pt.set_defaults(func=cmd_partition)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "algo", None) and getattr(args, "algo_pos", None) and args.range is None:
        # `--algo X A..B`: the range landed in the first positional slot
        args.range, args.algo_pos = args.algo_pos, None
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
