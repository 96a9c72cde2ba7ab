"""Command-line interface.

Subcommands: ``lat-dim``, ``spec``, ``ring-dim`` and ``check``.  Exit codes:
0 the bound holds (or every check passed), 1 it fails, 2 error, 3 unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import nullcontext

from . import __version__, checks, dimension, spectra, zar
from ._faults import FAULTS, inject
from .corpus import DEFAULT_SEED
from .fileio import load_lattice
from .lattice import DEFAULT_MAX_ELEMENTS, LatticeError
from .rings import RingError, parse_ring

SCHEMA = "heitdim-report"
SCHEMA_VERSION = 1

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2, 3


class Report:
    def __init__(self, command: str, args: dict):
        self.command = command
        self.args = args
        self.verdicts: list[dict] = []
        self.timings: dict[str, float] = {}
        self.error: str | None = None
        self.exit_code = EXIT_HOLDS

    def to_json(self, timings: bool = True) -> dict:
        out = {"schema": SCHEMA, "version": SCHEMA_VERSION,
               "command": {"name": self.command, "args": self.args},
               "verdicts": self.verdicts, "exit_code": self.exit_code}
        if self.error is not None:
            out["error"] = self.error
        if timings:
            out["timings_ms"] = self.timings
        return out

    def to_text(self, timings: bool = True) -> str:
        """One ``key: value`` line per verdict field, values JSON-encoded."""
        lines = [f"# {self.command} (exit {self.exit_code})"]
        if self.error is not None:
            lines.append(f"error: {self.error}")
        for k, v in enumerate(self.verdicts):
            lines.append(f"[verdict {k}]")
            lines += [f"{key}: {json.dumps(val, sort_keys=True)}" for key, val in v.items()]
        if timings:
            lines += [f"time {key}: {ms:.1f} ms" for key, ms in self.timings.items()]
        return "\n".join(lines) + "\n"


def parse_text_verdicts(text: str) -> list[dict]:
    """Inverse of the verdict part of ``Report.to_text``."""
    out: list[dict] = []
    for line in text.splitlines():
        if line.startswith("[verdict "):
            out.append({})
        elif out and ": " in line and not line.startswith("time "):
            key, val = line.split(": ", 1)
            out[-1][key] = json.loads(val)
    return out


def _exit_for(holds) -> int:
    return EXIT_HOLDS if holds is True else EXIT_FAILS if holds is False else EXIT_UNKNOWN


class _Timer:
    def __init__(self, report: Report, name: str):
        self.report, self.name = report, name

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.name] = round((time.perf_counter() - self.t0) * 1000, 1)


# commands

LATTICE_DECIDERS = {"kdim": dimension.kdim_leq, "jdim": dimension.jdim_leq, "hdim": dimension.hdim_leq}
DEFAULT_STRATEGY = {"kdim": "global", "jdim": "global", "hdim": "recursive"}


def cmd_lat_dim(args, report: Report) -> None:
    if args.leq < -1:
        raise LatticeError("the bound must be at least -1")
    with _Timer(report, "load"):
        T = load_lattice(args.file, args.max_elements)
    strategy = args.strategy or DEFAULT_STRATEGY[args.kind]
    with _Timer(report, "decide"):
        if args.kind == "hdim":
            v = dimension.hdim_leq(T, args.leq, strategy)
        else:
            v = LATTICE_DECIDERS[args.kind](T, args.leq, strategy, witness=args.witness)
    report.verdicts.append({"kind": args.kind, **v.to_json()})
    report.exit_code = _exit_for(v.holds)


def _spectrum(T, what: str) -> spectra.SpectrumPoset:
    if what == "spec":
        return spectra.prime_ideals(T)
    if what == "Jspec":
        return spectra.prime_ideals(dimension.heitmann_lattice(T)[0])
    S = spectra.prime_ideals(T)
    pts = {"max": spectra.maximal_ideals, "min": spectra.minimal_primes,
           "jspec": spectra.jspec_points}[what](T)
    return spectra.spectrum_subset(S, pts)


def cmd_spec(args, report: Report) -> str | None:
    with _Timer(report, "load"):
        T = load_lattice(args.file, args.max_elements)
    with _Timer(report, "spectrum"):
        S = _spectrum(T, args.kind)
    report.verdicts.append({"kind": args.kind, **S.to_json()})
    if args.format == "dot":
        return S.to_dot(args.kind)
    return None


def cmd_ring_dim(args, report: Report) -> None:
    if args.leq < -1:
        raise RingError("the bound must be at least -1")
    A = parse_ring(args.ring)
    strategy = args.strategy or ("collapse" if args.kind == "kdim" else "recursive")
    common = dict(samples=args.samples, budget_coeff=args.budget_coeff, seed=args.seed)
    with _Timer(report, "decide"):
        if args.kind == "kdim":
            v = zar.kdim_ring_leq(A, args.leq, strategy, budget_exp=args.budget_exp,
                                  witness=args.witness, **common)
        else:
            v = zar.hdim_ring_leq(A, args.leq, strategy, **common)
    report.verdicts.append({"kind": args.kind, "ring": A.name, **v.to_json()})
    report.exit_code = _exit_for(v.holds)


def cmd_check(args, report: Report) -> None:
    cfg = checks.CheckConfig(seed=args.seed, count=args.count, max_gens=args.max_gens,
                             max_rels=args.max_rels, max_elements=args.max_elements)
    suites = checks.SUITES if args.suite == "all" else (args.suite,)
    ok = True
    for name in suites:
        with _Timer(report, name):
            r = checks.run_suite(name, cfg)
        report.verdicts.append(r.to_json())
        ok = ok and r.passed
    report.exit_code = EXIT_HOLDS if ok else EXIT_FAILS


COMMANDS = {"lat-dim": cmd_lat_dim, "spec": cmd_spec, "ring-dim": cmd_ring_dim, "check": cmd_check}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heitdim", description="Krull and Heitmann dimensions of "
                                "finitely presented distributive lattices and of rings.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--out", help="write the output here instead of stdout")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for every randomized choice")
        sp.add_argument("--no-timings", action="store_true",
                        help="leave timings out, making the output byte-for-byte reproducible")
        sp.add_argument("--inject-fault", choices=FAULTS, help=argparse.SUPPRESS)

    sp = sub.add_parser("lat-dim", help="decide a dimension bound for a lattice presentation")
    sp.add_argument("--file", required=True, help="presentation JSON")
    sp.add_argument("--kind", choices=("kdim", "jdim", "hdim"), default="kdim")
    sp.add_argument("--leq", type=int, required=True, help="the bound to test")
    sp.add_argument("--strategy", help="kdim/jdim: global, upper, lower; hdim: recursive, iterated")
    sp.add_argument("--witness", action="store_true", help="include complementary sequences")
    sp.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    common(sp)

    sp = sub.add_parser("spec", help="export a spectrum of a lattice presentation")
    sp.add_argument("--file", required=True)
    sp.add_argument("--kind", choices=("spec", "max", "min", "jspec", "Jspec"), default="spec")
    sp.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    common(sp, ("text", "json", "dot"))

    sp = sub.add_parser("ring-dim", help="decide a dimension bound for a ring")
    sp.add_argument("--ring", required=True, help="int, zmod:N, gf:P, poly:gf:P or table:FILE")
    sp.add_argument("--kind", choices=("kdim", "hdim"), default="kdim")
    sp.add_argument("--leq", type=int, required=True)
    sp.add_argument("--strategy", help="kdim: collapse, upper, lower; hdim: recursive, bracket")
    sp.add_argument("--witness", action="store_true", help="include collapse witnesses")
    sp.add_argument("--samples", type=int, default=20, help="tuples sampled in infinite rings")
    sp.add_argument("--budget-exp", type=int, default=16, help="largest exponent tried in searches")
    sp.add_argument("--budget-coeff", type=int, default=None,
                    help="size bound for sampled elements (|x| for Z, degree for polynomials)")
    common(sp)

    sp = sub.add_parser("check", help="run a property suite against the brute-force oracles")
    sp.add_argument("--suite", choices=checks.SUITES + ("all",), default="all")
    sp.add_argument("--count", type=int, default=200, help="random presentations in the corpus")
    sp.add_argument("--max-gens", type=int, default=3)
    sp.add_argument("--max-rels", type=int, default=3)
    sp.add_argument("--max-elements", type=int, default=64,
                    help="size limit for the heavier boundary and duality checks")
    common(sp)
    return p


def _args_echo(args) -> dict:
    skip = {"command", "out", "format", "no_timings", "inject_fault"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_HOLDS
    report = Report(args.command, _args_echo(args))
    raw = None
    try:
        with inject(args.inject_fault) if args.inject_fault else nullcontext():
            raw = COMMANDS[args.command](args, report)
    except (LatticeError, RingError, ValueError, OSError) as exc:
        report.error = str(exc)
        report.exit_code = EXIT_ERROR
        print(f"heitdim: error: {exc}", file=sys.stderr)
    timings = not args.no_timings
    if raw is not None and report.error is None:
        text = raw
    elif args.format == "json":
        text = json.dumps(report.to_json(timings), indent=2, sort_keys=True) + "\n"
    else:
        text = report.to_text(timings)
    _emit(text, args.out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
