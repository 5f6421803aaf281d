"""Command-line driver: ``tatelab <command> ...``.

Every command prints a JSON report (or writes it with ``--json PATH`` and
prints one line per check).  Exit status: 0 when every check passes, 1 when
any check fails, 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .checks import (SUITES, CheckResult, Ranges, Report, _collect, _run, auslander_checks,
                     complex_checks, config_failure, emit_json, invsys_checks, koszul_betti,
                     ring_checks, run_suite)
from .scalars import ConfigError, FieldConfig

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def parse_range(text: str) -> range:
    """``A..B`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected A..B") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", default="q", help="q (rationals, default) or fp:<p>")
    p.add_argument("--alpha", default="2", help="rational literal such as 2 or 3/2 (default 2)")
    p.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--timings", action="store_true", help="record runtime_ms for each check")


def _ranges(p: argparse.ArgumentParser) -> None:
    d = Ranges()
    p.add_argument("--neg", type=int, default=d.neg, help="lowest spot is -NEG (default %(default)s)")
    p.add_argument("--pos", type=int, default=d.pos, help="highest exactness spot (default %(default)s)")
    p.add_argument("--depth", type=int, default=d.depth,
                   help="positive Tate spots and ranks of C up to this index (default %(default)s)")
    p.add_argument("--seed", type=int, default=d.seed, help="first seed for length-two modules")
    p.add_argument("--samples", type=int, default=d.samples, help="number of length-two modules")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tatelab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    _common(p)
    _ranges(p)
    p.add_argument("--form", metavar="FILE", help="alternative cubic for the invsys suite")

    p = sub.add_parser("ring", help="checks on the ring R")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--ring-file", metavar="FILE", help="build a ring from a presentation file instead")
    _common(p)

    p = sub.add_parser("complex", help="checks on the complete resolution C")
    p.add_argument("action", choices=["verify"])
    _common(p)
    _ranges(p)

    p = sub.add_parser("invsys", help="inverse-system certificate")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--form", metavar="FILE", help="polynomial in tT tU tV tX tY tZ (alpha allowed)")
    _common(p)

    p = sub.add_parser("betti", help="Betti numbers of a preset module")
    p.add_argument("--module", required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--q", type=int, default=None, help="q for the module Nq")
    _common(p)

    for name, helptext in (("ext", "dim Ext^i(X, Y)"), ("tor", "dim Tor_i(X, Y)")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--from", dest="src", required=True, help="preset module X")
        p.add_argument("--to", dest="dst", required=True, help="preset module Y")
        p.add_argument("--range", type=parse_range, default=parse_range("0..3"))
        p.add_argument("--q", type=int, default=None, help="q for the module Nq")
        if name == "ext":
            p.add_argument("--method", choices=["resolve", "coresolve", "matlis"], default="resolve")
        else:
            p.add_argument("--side", choices=["first", "second"], default="first")
        _common(p)

    p = sub.add_parser("tate", help="Tate Ext (or Tor with --tor) of M against N")
    p.add_argument("--range", type=parse_range, default=parse_range("-4..4"))
    p.add_argument("--tor", action="store_true")
    _common(p)

    p = sub.add_parser("auslander", help="Ext^i(M, N_q) for 0 <= i <= q + 4")
    p.add_argument("--q", type=int, required=True)
    _common(p)
    return ap


def _ranges_from(args) -> Ranges:
    d = Ranges()
    return Ranges(neg=getattr(args, "neg", d.neg), pos=getattr(args, "pos", d.pos),
                  depth=getattr(args, "depth", d.depth), seed=getattr(args, "seed", d.seed),
                  samples=getattr(args, "samples", d.samples))


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from None


def _glue_ranges(argv: list[str]) -> list[str]:
    """``--range -2..2`` would be taken for an option; pass it as ``--range=-2..2``."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--range":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--range={nxt}")
        else:
            out.append(a)
    return out


def _module(name: str, cfg: FieldConfig, q):
    from .homalg import preset_module
    if name == "Nq":
        return preset_module(name, cfg, q)
    return preset_module(name, cfg)


def _ring_file_checks(path: str, cfg: FieldConfig, timings: bool) -> list[CheckResult]:
    from .algebra import build_algebra, is_gorenstein, socle
    from .polyring import parse_presentation

    text = _read(path)

    def body():
        A = build_algebra(parse_presentation(text, cfg))
        act = {"dim": A.dim, "hilbert": A.hilbert_function(),
               "associativity_failures": len(A.associativity_failures()),
               "socle_dim": len(socle(A)), "gorenstein": is_gorenstein(A)}
        return act["associativity_failures"] == 0, act

    return [_run("ring.file", f"ring built from {path}", {"associativity_failures": 0}, body, timings)]


def run_command(args) -> Report:
    """Build the report for parsed arguments; ConfigError propagates."""
    cfg = FieldConfig.parse(args.field, args.alpha)
    timings = args.timings
    cmd = args.command
    if cmd == "verify":
        kw = {"form": _read(args.form)} if args.form else {}
        return run_suite(args.suite, cfg, _ranges_from(args), timings, **kw)
    report = Report(cfg.describe())
    if cmd == "ring":
        report.checks = (_ring_file_checks(args.ring_file, cfg, timings) if args.ring_file
                         else ring_checks(cfg, timings))
    elif cmd == "complex":
        report.checks = complex_checks(cfg, _ranges_from(args), timings)
    elif cmd == "invsys":
        kw = {"form": _read(args.form)} if args.form else {}
        report.checks = invsys_checks(cfg, timings, **kw)
    elif cmd == "auslander":
        if args.q < 1:
            raise ConfigError("q must be at least 1")
        report.checks = auslander_checks(cfg, Ranges(qs=(args.q,)), timings)
    elif cmd == "betti":
        report.checks = [_betti_check(args, cfg, timings)]
    elif cmd in ("ext", "tor"):
        report.checks = [_ext_tor_check(args, cfg, timings)]
    elif cmd == "tate":
        report.checks = [_tate_check(args, cfg, timings)]
    return report


def _betti_check(args, cfg, timings) -> CheckResult:
    from .algebra import preset_ring
    from .homalg import betti_numbers

    expected = None
    if args.module == "k":
        expected = {"betti": koszul_betti(preset_ring(cfg).hilbert_function(), args.n), "linear": True}

    def body():
        bt = betti_numbers(_module(args.module, cfg, args.q), args.n)
        act = {"betti": bt.totals, "linear": bt.is_linear(),
               "table": {str(i): {str(j): b for j, b in row.items()} for i, row in bt.as_dict().items()}}
        if expected is None:
            return True, act
        return act["betti"] == expected["betti"] and act["linear"], act

    return _run(f"betti.{args.module}", "minimal free resolution", expected, body, timings)


def _ext_tor_check(args, cfg, timings) -> CheckResult:
    from .homalg import ext, tor

    X = _module(args.src, cfg, args.q)
    Y = _module(args.dst, cfg, args.q)
    if args.command == "ext":
        fn, how = (lambda i: ext(X, Y, i, method=args.method)), args.method
    else:
        fn, how = (lambda i: tor(X, Y, i, side=args.side)), args.side
    return _run(f"{args.command}.{args.src}.{args.dst}", f"dim {args.command} via {how}", None,
                lambda: (True, _collect(fn, args.range)), timings)


def _tate_check(args, cfg, timings) -> CheckResult:
    from .homalg import preset_module, tate_ext, tate_tor

    M, N = preset_module("M", cfg), preset_module("N", cfg)
    fn = tate_tor if args.tor else tate_ext
    expected = {str(i): ("> 0" if i < 0 else 0) for i in args.range if i != 0}

    def body():
        vals = _collect(lambda i: fn(M, N, i), args.range)
        ok = all((v > 0) if int(i) < 0 else (v == 0) for i, v in vals.items() if int(i) != 0)
        return ok, vals

    name = "tate_tor" if args.tor else "tate_ext"
    return _run(f"{name}.M.N", "vanishing for i > 0, nonvanishing for i < 0", expected, body, timings)


def _print_lines(report: Report, out) -> None:
    for c in report.sorted_checks():
        print(f"{c.status.upper():5s} {c.id}", file=out)
    s = report.summary
    print(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped", file=out)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_ranges(argv))
    status = EXIT_OK
    try:
        report = run_command(args)
        if not report.ok:
            status = EXIT_FAIL
    except ConfigError as exc:
        report = config_failure(exc, {"mode": args.field, "alpha": args.alpha})
        status = EXIT_CONFIG
    if args.json:
        try:
            emit_json(report, args.json)
        except OSError as exc:
            print(f"tatelab: cannot write {args.json}: {exc}", file=sys.stderr)
            return status or EXIT_FAIL
        _print_lines(report, sys.stdout)
    else:
        sys.stdout.write(report.to_json())
    return status


if __name__ == "__main__":
    sys.exit(main())
