"""Command-line interface.

Exit codes: 0 success, 1 analytic negative (a violation, a failed
search, or a DEPENDENT verdict), 2 usage or parameter error.

Strings are lowercase hex with no prefix; an n-bit input is n/4 hex
digits.  Inputs whose bit length is not a multiple of 4 come from raw
binary files (--x1-file/--x2-file/--x-file/--y-file with --bits),
read most-significant bit first.  Every randomized run prints its seed,
and rerunning with the same seed reproduces the output byte for byte.
The KEXTRACT_BUDGET environment variable overrides default enumeration
budgets; --budget overrides both.
"""

from __future__ import annotations

import argparse
import os
import secrets
import sys

from . import btable, condense, extend, kproxy, stats
from .errors import (
    BackendError,
    DecodeError,
    DomainError,
    ParameterError,
    ResourceError,
)
from .gf2n import field_params


def _parse_hex(text: str, what: str) -> tuple[int, int]:
    """(value, bit length) from lowercase hex."""
    try:
        value = int(text, 16)
    except ValueError:
        raise ParameterError(f"{what}: {text!r} is not hex") from None
    return value, 4 * len(text)


def _read_bits_file(path: str, bits: int) -> int:
    """First ``bits`` bits of a raw binary file, most-significant first."""
    with open(path, "rb") as fh:
        data = fh.read()
    if 8 * len(data) < bits:
        raise ParameterError(f"{path}: needs {bits} bits, has {8 * len(data)}")
    return int.from_bytes(data, "big") >> (8 * len(data) - bits)


def _hex_width(bits: int) -> int:
    return max(1, (bits + 3) // 4)


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise ParameterError(f"{what}: {text!r} is not a comma-separated int list") from None


def _budget(args) -> int | None:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("KEXTRACT_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParameterError(f"KEXTRACT_BUDGET={env!r} is not an integer") from None
    return None


def _seed(args) -> int:
    """The run's seed; drawn and reported when not supplied."""
    if args.seed is not None:
        return args.seed
    return secrets.randbits(63)


def _pair_input(args, table_n: int) -> tuple[int, int]:
    """The two table inputs, from hex positionals or binary files."""
    if args.x1 is not None and args.x2 is not None:
        v1, n1 = _parse_hex(args.x1, "x1")
        v2, n2 = _parse_hex(args.x2, "x2")
        if n1 != n2:
            raise ParameterError(f"inputs differ in length: {n1} vs {n2} bits")
        if n1 != table_n:
            raise ParameterError(f"inputs are {n1}-bit but the table needs {table_n}")
        return v1, v2
    if args.x1_file and args.x2_file:
        bits = args.bits or table_n
        if bits != table_n:
            raise ParameterError(f"--bits {bits} does not match table n={table_n}")
        return (
            _read_bits_file(args.x1_file, bits),
            _read_bits_file(args.x2_file, bits),
        )
    raise ParameterError("supply x1 x2 as hex or --x1-file/--x2-file")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_extend(args) -> int:
    x1, n1 = _parse_hex(args.x1, "x1")
    x2, n2 = _parse_hex(args.x2, "x2")
    if n1 != n2:
        raise ParameterError(f"inputs differ in length: {n1} vs {n2} bits")
    params = field_params(n1)
    count = args.count if args.count is not None else n1**args.k
    req = extend.ExtendRequest(x1, x2, count, params)
    width = _hex_width(n1)
    for z in extend.iter_extend(req):
        print(f"{z:0{width}x}")
    return 0


def _cmd_table_search(args) -> int:
    spec = btable.BalanceSpec(S=args.S, shift_bound=args.shift_bound)
    budget = _budget(args)
    if args.mode == "exhaustive":
        result = btable.search_table(
            args.n, args.m, spec, "exhaustive",
            table_budget=budget, pair_budget=budget,
        )
        sidecar = {"mode": "exhaustive", "spec": spec}
    else:
        seed = _seed(args)
        print(f"seed {seed}")
        result = btable.search_table(
            args.n, args.m, spec, "random",
            trials=args.trials, seed=seed, pair_budget=budget,
        )
        sidecar = {"mode": "random", "seed": seed, "trials": args.trials, "spec": spec}
    if isinstance(result, btable.SearchFailure):
        print(str(result))
        return 1
    btable.write_table(result, args.out, sidecar)
    print(f"wrote {args.out}")
    print(f"provenance {result.provenance}")
    return 0


def _format_witness(witness) -> str:
    def ints(seq):
        return ",".join(str(v) for v in seq)

    if len(witness) == 3:
        B1, B2, a = witness
        return f"condition=single-color B1={ints(B1)} B2={ints(B2)} a={a}"
    B1, B2, a, b, i, j = witness
    return (
        f"condition=shifted-pair B1={ints(B1)} B2={ints(B2)} "
        f"a={a} b={b} i={i} j={j}"
    )


def _cmd_table_verify(args) -> int:
    table = btable.read_table(args.table)
    spec = btable.BalanceSpec(S=args.S, shift_bound=args.shift_bound)
    kw = {"budget": _budget(args)}
    if args.mode == "sampled":
        seed = _seed(args)
        print(f"seed {seed}")
        kw.update(trials=args.trials, seed=seed)
    for check in (btable.verify_color_bound, btable.verify_shift_pair_bound):
        result = check(table, spec, args.mode, **kw)
        if not result.ok:
            print(f"VIOLATION {_format_witness(result.witness)} count={result.count}")
            return 1
    print("OK")
    return 0


def _cmd_table_schedule(args) -> int:
    sched = btable.derive_table_schedule(args.n, args.k, args.s, args.alpha)
    print(f"m {sched.m}")
    print(f"S 2^{sched.S.bit_length() - 1}")
    print(f"t {sched.t}")
    return 0


def _cmd_table_apply(args) -> int:
    table = btable.read_table(args.table)
    x1, x2 = _pair_input(args, table.n)
    outputs = btable.apply_table(
        x1, x2, table, args.count, shift_mode=args.shift_mode
    )
    width = _hex_width(table.m)
    for z in outputs:
        print(f"{z:0{width}x}")
    return 0


def _cmd_condense_apply(args) -> int:
    table = btable.read_table(args.table)
    x, y = _pair_input(args, table.n)
    schedule = condense.CondenseSchedule(
        n=table.n, delta=args.delta, alpha=args.alpha, c=args.c
    )
    result = condense.apply_condenser(x, y, table, schedule)
    print(f"{result.z:0{_hex_width(table.m)}x}")
    print(f"claimed_floor {result.claimed_floor}")
    return 0


def _cmd_condense_verify(args) -> int:
    table = btable.read_table(args.table)
    colors = (
        range(table.M) if args.colors is None else _int_list(args.colors, "--colors")
    )
    kw = {"budget": _budget(args)}
    if args.mode == "sampled":
        seed = _seed(args)
        print(f"seed {seed}")
        kw.update(trials=args.trials, seed=seed)
    report = condense.verify_balance(
        table, args.delta, args.epsilon, args.c, colors, args.mode, **kw
    )
    if report.ok:
        print(f"OK worst_ratio={report.worst_ratio:.12g}")
        return 0
    B1, B2 = report.witness
    print(
        f"VIOLATION worst_ratio={report.worst_ratio:.12g} "
        f"B1={','.join(map(str, B1))} B2={','.join(map(str, B2))}"
    )
    return 1


def _cmd_condense_deficit(args) -> int:
    table = btable.read_table(args.table)
    rows = range(table.N) if args.rows is None else _int_list(args.rows, "--rows")
    cols = range(table.N) if args.cols is None else _int_list(args.cols, "--cols")
    deficit = condense.min_entropy_deficit(table, rows, cols)
    print(f"{deficit:.12g}")
    return 0


def _read_file(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _cmd_estimate_k(args) -> int:
    comp = kproxy.get_backend(args.backend)
    if args.manifest:
        with open(args.manifest) as fh:
            paths = [line.strip() for line in fh if line.strip()]
        for path in paths:
            print(f"{path} {kproxy.k_estimate(_read_file(path), comp)}")
        return 0
    if args.file is None:
        raise ParameterError("supply a file or --manifest")
    print(f"k {kproxy.k_estimate(_read_file(args.file), comp)}")
    return 0


def _cmd_estimate_dep(args) -> int:
    comp = kproxy.get_backend(args.backend)
    est = kproxy.dependency(
        _read_file(args.file1), _read_file(args.file2), comp, args.alpha
    )
    for name in ("kx", "ky", "kxy", "dep_raw", "dep", "alpha_x", "alpha_y"):
        print(f"{name} {getattr(est, name)}")
    print("INDEPENDENT" if est.verdict else "DEPENDENT")
    return 0 if est.verdict else 1


def _cmd_estimate_symmetry(args) -> int:
    comp = kproxy.get_backend(args.backend)
    diag = kproxy.symmetry_diagnostic(
        _read_file(args.file1), _read_file(args.file2), comp
    )
    print(f"lhs_drop {diag.lhs_drop}")
    print(f"rhs_drop {diag.rhs_drop}")
    print(f"abs_diff {diag.abs_diff}")
    return 0


def _cmd_dist_push(args) -> int:
    if args.map == "table":
        if args.table is None:
            raise ParameterError("--map table needs --table")
        table = btable.read_table(args.table)
        dist = stats.pushforward(
            lambda x, y: int(table.cells[x, y]), table.n, table.m,
            budget=_budget(args) or stats.DEFAULT_ENUM_BUDGET,
        )
    else:
        if args.n is None:
            raise ParameterError(f"--map {args.map} needs --n")
        n = args.n
        params = field_params(n)
        budget = _budget(args) or stats.DEFAULT_ENUM_BUDGET
        if args.map == "xor":
            dist = stats.pushforward(lambda x, y: x ^ y, n, n, budget=budget)
        elif args.map == "extend":
            if args.i is None:
                raise ParameterError("--map extend needs --i")
            i = args.i

            def one(x1, x2, _i=i, _p=params):
                req = extend.ExtendRequest(x1, x2, _i, _p)
                return extend.extend(req).outputs[_i - 1]

            dist = stats.pushforward(one, n, n, budget=budget)
        elif args.map == "extend-pair":
            if args.i is None or args.j is None:
                raise ParameterError("--map extend-pair needs --i and --j")
            i, j = args.i, args.j
            hi = max(i, j)

            def pair(x1, x2, _i=i, _j=j, _hi=hi, _p=params, _n=n):
                outs = extend.extend(extend.ExtendRequest(x1, x2, _hi, _p)).outputs
                return (outs[_i - 1] << _n) | outs[_j - 1]

            dist = stats.pushforward(pair, n, 2 * n, budget=budget)
        else:
            raise ParameterError(f"unknown map {args.map!r}")
    text = stats.dist_to_text(dist)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_dist_mindent(args) -> int:
    dist = stats.dist_from_text(_read_file(args.dist).decode())
    print(f"{stats.min_entropy(dist):.12g}")
    return 0


def _cmd_dist_sd(args) -> int:
    d1 = stats.dist_from_text(_read_file(args.dist1).decode())
    d2 = stats.dist_from_text(_read_file(args.dist2).decode())
    sd = stats.statistical_distance(d1, d2)
    print(f"{sd.numerator}/{sd.denominator}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_pair_input_flags(p):
    p.add_argument("x1", nargs="?", help="first input, hex")
    p.add_argument("x2", nargs="?", help="second input, hex")
    p.add_argument("--x1-file", help="first input as a raw binary file")
    p.add_argument("--x2-file", help="second input as a raw binary file")
    p.add_argument("--bits", type=int, help="bit length for file inputs")


def _add_verify_flags(p):
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kextract",
        description="pairwise-independence constructions, balanced tables, "
        "and compression-based dependency estimates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extend", help="expand two equal-length hex seeds")
    p.add_argument("x1", help="first seed, hex")
    p.add_argument("x2", help="second seed, hex")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--count", type=int, help="number of outputs")
    g.add_argument("--k", type=int, help="produce n^k outputs")
    p.set_defaults(fn=_cmd_extend)

    table = sub.add_parser("table", help="balanced-table search/verify/apply")
    tsub = table.add_subparsers(dest="table_command", required=True)

    p = tsub.add_parser("search", help="search for a balanced table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--shift-bound", type=int, required=True)
    p.add_argument(
        "--mode", choices=["sampled", "exhaustive"], default="sampled",
        help="sampled = random trials, exhaustive = full enumeration",
    )
    p.add_argument("--trials", type=int, default=10**4)
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_table_search)

    p = tsub.add_parser("verify", help="verify both balance bounds")
    p.add_argument("--table", required=True)
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--shift-bound", type=int, required=True)
    _add_verify_flags(p)
    p.set_defaults(fn=_cmd_table_verify)

    p = tsub.add_parser(
        "schedule", help="derive output length, rectangle side, and slack"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.set_defaults(fn=_cmd_table_schedule)

    p = tsub.add_parser("apply", help="emit T(x1+j, x2) for j = 1..count")
    p.add_argument("--table", required=True)
    _add_pair_input_flags(p)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--shift-mode", choices=["modn", "xor"], default="modn")
    p.set_defaults(fn=_cmd_table_apply)

    cond = sub.add_parser("condense", help="condenser-table pipelines")
    csub = cond.add_subparsers(dest="condense_command", required=True)

    p = csub.add_parser("apply", help="z = T(x, y) plus the claimed floor")
    p.add_argument("--table", required=True)
    _add_pair_input_flags(p)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--c", type=int, default=condense.DEFAULT_C)
    p.set_defaults(fn=_cmd_condense_apply)

    p = csub.add_parser("verify", help="check the colored-cell balance bound")
    p.add_argument("--table", required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--c", type=int, default=condense.DEFAULT_C)
    p.add_argument("--colors", help="comma-separated colors (default: all)")
    _add_verify_flags(p)
    p.set_defaults(fn=_cmd_condense_verify)

    p = csub.add_parser("deficit", help="min-entropy deficit on a rectangle")
    p.add_argument("--table", required=True)
    p.add_argument("--rows", help="comma-separated rows (default: all)")
    p.add_argument("--cols", help="comma-separated columns (default: all)")
    p.set_defaults(fn=_cmd_condense_deficit)

    est = sub.add_parser("estimate", help="compression-based estimates")
    esub = est.add_subparsers(dest="estimate_command", required=True)

    p = esub.add_parser("k", help="complexity estimate of files")
    p.add_argument("file", nargs="?")
    p.add_argument(
        "--manifest", help="plain-text corpus manifest, one file path per line"
    )
    p.add_argument("--backend", default=kproxy.DEFAULT_BACKEND)
    p.set_defaults(fn=_cmd_estimate_k)

    p = esub.add_parser("dep", help="dependency estimate of two files")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--backend", default=kproxy.DEFAULT_BACKEND)
    p.add_argument("--alpha", type=float, required=True, help="bits")
    p.set_defaults(fn=_cmd_estimate_dep)

    p = esub.add_parser("symmetry", help="directional-drop diagnostic")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--backend", default=kproxy.DEFAULT_BACKEND)
    p.set_defaults(fn=_cmd_estimate_symmetry)

    dist = sub.add_parser("dist", help="exact distribution utilities")
    dsub = dist.add_subparsers(dest="dist_command", required=True)

    p = dsub.add_parser("push", help="exact pushforward of a named map")
    p.add_argument(
        "--map", choices=["xor", "extend", "extend-pair", "table"], required=True
    )
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--table")
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_dist_push)

    p = dsub.add_parser("mindent", help="min-entropy of a serialized distribution")
    p.add_argument("dist")
    p.set_defaults(fn=_cmd_dist_mindent)

    p = dsub.add_parser("sd", help="statistical distance of two distributions")
    p.add_argument("dist1")
    p.add_argument("dist2")
    p.set_defaults(fn=_cmd_dist_sd)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ParameterError, DomainError, DecodeError, BackendError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    run()
