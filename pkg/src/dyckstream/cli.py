"""Command-line front end.

Subcommands: ``check`` (verdict as exit code), ``gen`` (labeled words)
and ``bench`` (metrics records plus scaling/error summaries).  Exit
codes: 0 accept, 1 reject, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import tempfile
import time

from .fingerprint import make_params
from .formats import FORMATS, parse_stream, render_stream
from .instances import InstanceSpec, gen_mountain, gen_random_member, mutate_member
from .metrics import emit
from .onepass import check_one_pass
from .oracle import check_oracle
from .reduction import ReductionParams, reduce_word
from .twopass import check_two_pass, pad_to_pow2
from .words import Word

_ALGOS = ("onepass", "twopass", "oracle")


def _add_check_parser(sub):
    p = sub.add_parser("check", help="check one stream; exit 0 accept, 1 reject")
    p.add_argument("input", metavar="FILE", help="input path, or - for stdin")
    p.add_argument("--algo", choices=_ALGOS, default="twopass")
    p.add_argument("--format", choices=FORMATS, default="chars2")
    p.add_argument("--s", type=int, default=None,
                   help="alphabet size; > 2 routes through the 2-type reduction")
    p.add_argument("--mode", choices=("fixed_prime", "paper_exact"),
                   default="fixed_prime")
    p.add_argument("--c", type=int, default=2,
                   help="error exponent for paper_exact modulus sizing")
    p.add_argument("--seed", type=int, default=None, help="hash parameter seed")
    p.add_argument("--backend", choices=("auto", "python", "cython"), default=None)
    p.add_argument("--metrics", metavar="PATH", default=None,
                   help="append one metrics record to PATH")


def _add_gen_parser(sub):
    p = sub.add_parser("gen", help="generate labeled words")
    mode = p.add_subparsers(dest="generator", required=True)

    dyck = mode.add_parser("dyck", help="uniform random member")
    dyck.add_argument("--pairs", type=int, required=True)
    dyck.add_argument("--seed", type=int, default=None)
    dyck.add_argument("--s", type=int, default=2)
    dyck.add_argument("--format", choices=FORMATS, default="chars2")

    mutate = mode.add_parser("mutate", help="flip one pair type of a member")
    mutate.add_argument("input", metavar="FILE", help="member to mutate, or - for stdin")
    mutate.add_argument("--seed", type=int, default=None)
    mutate.add_argument("--s", type=int, default=None)
    mutate.add_argument("--format", choices=FORMATS, default="chars2")

    mountain = mode.add_parser("mountain", help="single probe segment")
    mountain.add_argument("--n", type=int, required=True)
    mountain.add_argument("--k", type=int, required=True)
    mountain.add_argument("--c", choices=("a", "b"), default=None,
                          help="probe letter; defaults to the correct one")
    mountain.add_argument("--x", metavar="HEX", default=None,
                          help="bits of X as a hex value (first letter = msb)")
    mountain.add_argument("--seed", type=int, default=None)
    mountain.add_argument("--format", choices=FORMATS, default="chars2")

    ascension = mode.add_parser("ascension", help="m chained probe segments")
    ascension.add_argument("--m", type=int, required=True)
    ascension.add_argument("--n", type=int, required=True)
    ascension.add_argument("--seed", type=int, default=None)
    ascension.add_argument("--fault", type=int, default=None,
                           help="plant one wrong probe in segment i")
    ascension.add_argument("--format", choices=FORMATS, default="chars2")


def _add_reduce_parser(sub):
    p = sub.add_parser("reduce", help="encode an s-type stream over 2 bracket types")
    p.add_argument("input", metavar="FILE", help="input path, or - for stdin")
    p.add_argument("--format", choices=FORMATS, default="tokens")
    p.add_argument("--s", type=int, default=None,
                   help="alphabet size (default: inferred from the input)")
    p.add_argument("--format-out", choices=("chars2", "tokens"), default="chars2")


def _add_bench_parser(sub):
    p = sub.add_parser("bench", help="timing and metrics over size/seed cells")
    p.add_argument("--algo", choices=_ALGOS + ("all",), default="all")
    p.add_argument("--sizes", default="2^10,2^14",
                   help="comma-separated letter counts, e.g. 2^10,2^12 or 4096")
    p.add_argument("--seeds", type=int, default=1, help="seeds per size")
    p.add_argument("--trials", type=int, default=5,
                   help="mutated non-members per cell for the error summary")
    p.add_argument("--impl", choices=("auto", "python", "cython", "both"),
                   default="auto")
    p.add_argument("--mode", choices=("fixed_prime", "paper_exact"),
                   default="fixed_prime")
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--metrics", metavar="PATH", default=None,
                   help="append all metrics records to PATH")


def _read_input(path: str, spool: bool):
    """Read FILE or stdin; optionally spool stdin through a temp file."""
    if path != "-":
        with open(path, "rb") as handle:
            return handle.read(), False
    data = sys.stdin.buffer.read()
    if spool:
        # reverse access needs a second look at the stream; stdin gets
        # staged in temporary storage so that is honest to report
        with tempfile.TemporaryFile() as staged:
            staged.write(data)
            staged.seek(0)
            return staged.read(), True
    return data, False


def _params_for(algo: str, n: int, mode: str, c: int, seed):
    if algo == "twopass":
        bound = pad_to_pow2(n if n % 2 == 0 else n + 1)[0]
    else:
        bound = n
    return make_params(max(1, bound), c=c, seed=seed, mode=mode)


def _append_metrics(path, lines):
    if path is None:
        return
    with open(path, "a", encoding="utf-8") as handle:
        for line in lines:
            handle.write(line + "\n")


def _cmd_check(args) -> int:
    raw, buffered = _read_input(args.input, spool=(args.algo == "twopass"))
    parsed = parse_stream(raw, args.format, alphabet_size=args.s)
    word = parsed.word
    if word.alphabet_size > 2 and args.algo != "oracle":
        word = reduce_word(ReductionParams(word.alphabet_size), word)

    if args.algo == "oracle":
        verdict, metrics = check_oracle(parsed.word)
    else:
        params = _params_for(args.algo, len(word), args.mode, args.c, args.seed)
        if args.algo == "onepass":
            verdict, metrics = check_one_pass(word, params, backend=args.backend)
        else:
            verdict, metrics = check_two_pass(
                word, params, backend=args.backend, buffered_reverse=buffered or None
            )
    _append_metrics(args.metrics, [emit(metrics)])
    if verdict.accepted:
        return 0
    print(f"reject: {verdict.reason}", file=sys.stderr)
    return 1


def _mountain_x(args):
    if args.x is not None:
        value = int(args.x, 16)
        if value >> args.n:
            raise ValueError(f"--x needs more than n={args.n} bits")
        return format(value, f"0{args.n}b")
    rng = random.Random(args.seed)
    return "".join(rng.choice("01") for _ in range(args.n))


def _cmd_gen(args) -> int:
    comments = []
    events = None
    if args.generator == "dyck":
        word = gen_random_member(args.pairs, seed=args.seed, alphabet_size=args.s)
        label = True
    elif args.generator == "mutate":
        raw, _ = _read_input(args.input, spool=False)
        parsed = parse_stream(raw, args.format, alphabet_size=args.s)
        word = mutate_member(parsed.word, seed=args.seed)
        label = False
    elif args.generator == "mountain":
        bits = _mountain_x(args)
        if args.c is None:
            probe = bits[args.n - args.k]
            probe = "a" if probe == "0" else "b"
        else:
            probe = args.c
        word, label = gen_mountain(args.n, bits, args.k, probe)
        comments.append(f"# mountain n={args.n} k={args.k} c={probe} x={bits}")
    else:
        spec = InstanceSpec.random(args.m, args.n, seed=args.seed, fault=args.fault)
        word, label = spec.build()
        comments.append("# " + spec.to_record())
    print(f"# label={'member' if label else 'non-member'}")
    for line in comments:
        print(line)
    print(render_stream(word, args.format, events=events))
    return 0


def _cmd_reduce(args) -> int:
    raw, _ = _read_input(args.input, spool=False)
    parsed = parse_stream(raw, args.format, alphabet_size=args.s)
    word = parsed.word
    if word.alphabet_size > 2:
        word = reduce_word(ReductionParams(word.alphabet_size), word)
    print(render_stream(word, args.format_out))
    return 0


def _bench_impls(choice):
    if choice == "both":
        wanted = ["python", "cython"]
    else:
        wanted = [choice]
    impls = []
    for name in wanted:
        if name in ("auto", "python"):
            impls.append(name)
            continue
        try:
            from . import _speedups  # noqa: F401

            impls.append("cython")
        except ImportError:
            print("# note: compiled backend unavailable, skipping", file=sys.stderr)
    return impls or ["python"]


def _parse_sizes(text):
    sizes = []
    for part in text.split(","):
        part = part.strip()
        if "^" in part:
            base, _, exp = part.partition("^")
            sizes.append(int(base) ** int(exp))
        else:
            sizes.append(int(part))
    if not sizes or any(size < 2 for size in sizes):
        raise ValueError("sizes must be letter counts >= 2")
    return sizes


def _cmd_bench(args) -> int:
    algos = list(_ALGOS) if args.algo == "all" else [args.algo]
    sizes = _parse_sizes(args.sizes)
    impls = _bench_impls(args.impl)
    records = []
    peaks = {}
    walls = {}

    def run(algo, impl, word, params, seed):
        start = time.perf_counter()
        if algo == "oracle":
            verdict, metrics = check_oracle(word, backend=None if impl == "auto" else impl)
        elif algo == "onepass":
            verdict, metrics = check_one_pass(word, params,
                                              backend=None if impl == "auto" else impl)
        else:
            verdict, metrics = check_two_pass(word, params,
                                              backend=None if impl == "auto" else impl)
        wall_ms = (time.perf_counter() - start) * 1e3
        return verdict, metrics, wall_ms

    for impl in impls:
        for algo in algos:
            false_accepts = 0
            trials_run = 0
            for size in sizes:
                for seed in range(args.seeds):
                    word = gen_random_member(size // 2, seed=seed)
                    params = _params_for(algo, len(word), args.mode, args.c, seed)
                    verdict, metrics, wall_ms = run(algo, impl, word, params, seed)
                    if not verdict.accepted:
                        print(f"# unexpected reject: algo={algo} n={size} seed={seed}",
                              file=sys.stderr)
                        return 2
                    line = emit(metrics)
                    records.append(line)
                    print(f"# cell algo={algo} impl={impl} n={len(word)} "
                          f"seed={seed} wall_ms={wall_ms:.3f}")
                    print(line)
                    peaks.setdefault((impl, algo), {}).setdefault(size, []).append(
                        metrics.peak_stack_items
                    )
                    walls.setdefault((impl, algo), {}).setdefault(size, []).append(
                        wall_ms
                    )
                    for trial in range(args.trials):
                        mutant = mutate_member(word, seed=1_000_003 * seed + trial)
                        bad, _, _ = run(algo, impl, mutant, params, seed)
                        trials_run += 1
                        if bad.accepted:
                            false_accepts += 1
            print(f"# summary algo={algo} impl={impl} "
                  f"false_accepts={false_accepts}/{trials_run}")
            by_size = peaks[(impl, algo)]
            ordered = sorted(by_size)
            for small, large in zip(ordered, ordered[1:]):
                ratio = (sum(by_size[large]) / len(by_size[large])) / max(
                    1e-9, sum(by_size[small]) / len(by_size[small])
                )
                print(f"# summary algo={algo} impl={impl} peak_scaling "
                      f"n={small}->{large} ratio={ratio:.2f}")
    if len(impls) == 2:
        for algo in algos:
            for size in sizes:
                py = walls.get(("python", algo), {}).get(size)
                cy = walls.get(("cython", algo), {}).get(size)
                if py and cy and min(cy) > 0:
                    print(f"# summary algo={algo} n={size} "
                          f"speedup python/cython={min(py) / min(cy):.1f}x")
    _append_metrics(args.metrics, records)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dyckstream",
        description="streaming membership checks for nested bracket words",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_check_parser(sub)
    _add_gen_parser(sub)
    _add_reduce_parser(sub)
    _add_bench_parser(sub)
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "reduce":
            return _cmd_reduce(args)
        return _cmd_bench(args)
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 2
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
