"""Command-line surface: check, witness, emit, sample, boundary.

Every run prints exactly one structured report (flat ``key: value`` lines)
on standard output; diagnostics, including timing, go to standard error.
Exit codes: 0 success/pass, 2 refuted/not realizable, 3 search exhausted
(unknown), 1 usage or parse errors.
"""

from __future__ import annotations

import argparse
import shutil
import subprocess
import sys
import time

from . import emit as emit_mod
from . import oracle, witness
from .conditions import certify
from .errors import NiepError, NotRealizable, ParseError
from .matrixfun import format_matrix, spectrum_of
from .spectra import canonicalize, format_spectrum, parse_spectrum

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REFUTED = 2
EXIT_UNKNOWN = 3

SOLVER_CANDIDATES = ("z3", "cvc5", "yices-smt2", "mathsat")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


class Report:
    """Ordered key/value lines, printed once per run."""

    def __init__(self, command: str):
        self.rows: list[tuple[str, str]] = [("command", command)]

    def add(self, key: str, value):
        self.rows.append((key, _fmt(value)))

    def extend(self, prefix: str, text: str):
        for line in text.splitlines():
            key, _, value = line.partition(": ")
            self.rows.append((f"{prefix}.{key}", value))

    def to_text(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in self.rows) + "\n"


def _emit_report(report: Report, out_path: str | None):
    text = report.to_text()
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="comparison tolerance override")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--out", default=None, help="write the primary artifact to this path")
    common.add_argument("--quiet", action="store_true", help="suppress diagnostics on stderr")

    parser = _Parser(prog="niep", description="nonnegative inverse eigenvalue toolkit")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", parents=[common], help="evaluate the necessary conditions")
    p.add_argument("spectrum")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--mmax", type=int, default=4)

    p = sub.add_parser("witness", parents=[common], help="search for a realizing matrix")
    p.add_argument("spectrum")
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("emit", parents=[common], help="export the polynomial system")
    p.add_argument("spectrum", nargs="?", default=None)
    p.add_argument("--coeff", type=int, default=None, metavar="N",
                   help="emit the coefficient system of size N instead of a spectrum system")
    p.add_argument("--format", choices=("native", "smt"), default="native")
    p.add_argument("--solve", action="store_true",
                   help="run an installed SMT solver on the emitted script")

    p = sub.add_parser("sample", parents=[common], help="draw realizable spectra")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--dist", default="uniform01",
                   help="uniform01 | exponential | sparse:<density>")
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("boundary", parents=[common], help="boundary family and perturbations")
    p.add_argument("spectrum")
    p.add_argument("--smax", type=int, default=0)
    return parser


def _cmd_check(args) -> int:
    s = parse_spectrum(args.spectrum)
    cert = certify(s, kmax=args.kmax, mmax=args.mmax, tol=args.tol)
    report = Report("check")
    report.add("spectrum", args.spectrum)
    report.extend("certificate", cert.to_text())
    _emit_report(report, args.out)
    return EXIT_OK if cert.overall else EXIT_REFUTED


def _cmd_witness(args) -> int:
    s = parse_spectrum(args.spectrum)
    cfg = witness.SearchConfig(
        starts=args.starts,
        tol=args.tol if args.tol is not None else 1e-8,
        seed=args.seed,
        symmetric=args.symmetric,
        strict=args.strict,
    )
    decision = witness.decide_realizable(s, cfg)
    report = Report("witness")
    report.add("spectrum", args.spectrum)
    report.add("verdict", decision.verdict.value)
    report.extend("certificate", decision.certificate.to_text())
    if decision.witness is not None:
        report.extend("witness", decision.witness.to_text())
    _emit_report(report, args.out)
    if decision.verdict is witness.Verdict.REALIZABLE:
        return EXIT_OK
    if decision.verdict is witness.Verdict.CONDITIONS_VIOLATED:
        return EXIT_REFUTED
    return EXIT_UNKNOWN


def _find_solver() -> str | None:
    for name in SOLVER_CANDIDATES:
        if shutil.which(name):
            return name
    return None


def _cmd_emit(args) -> int:
    if (args.spectrum is None) == (args.coeff is None):
        sys.stderr.write("emit: give a spectrum or --coeff N, not both\n")
        return EXIT_USAGE
    if args.coeff is not None:
        system = emit_mod.embed_coefficient_system(args.coeff)
        source = f"coeff:{args.coeff}"
    else:
        s = parse_spectrum(args.spectrum)
        system = emit_mod.embed_spectral_system(canonicalize(s, args.tol))
        source = args.spectrum
    if args.format == "smt":
        text = emit_mod.serialize_smt(system)
    else:
        text = emit_mod.serialize_system(system)
    report = Report("emit")
    report.add("source", source)
    report.add("format", args.format)
    report.add("variables", len(system.variables))
    report.add("equations", len(system.equations))
    report.add("inequalities", len(system.nonstrict) + len(system.strict))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        report.add("path", args.out)
    if args.solve:
        if args.format != "smt":
            sys.stderr.write("emit: --solve requires --format smt\n")
            return EXIT_USAGE
        solver = _find_solver()
        if solver is None:
            report.add("solver", "none")
        else:
            result = _run_solver(solver, text)
            report.add("solver", solver)
            report.add("solver_result", result)
    if not args.out:
        for line in text.splitlines():
            report.rows.append(("system", line))
    sys.stdout.write(report.to_text())
    return EXIT_OK


def _run_solver(solver: str, smt_text: str) -> str:
    proc = subprocess.run(
        [solver, "-in"] if solver == "z3" else [solver],
        input=smt_text,
        capture_output=True,
        text=True,
        timeout=300,
    )
    out = (proc.stdout or "").strip().splitlines()
    return out[-1] if out else "error"


def _cmd_sample(args) -> int:
    dist, _, density = args.dist.partition(":")
    cfg = oracle.SampleConfig(
        n=args.n,
        count=args.count,
        distribution=dist,
        p=float(density) if density else 0.5,
        seed=args.seed,
        symmetric=args.symmetric,
        strict=args.strict,
    )
    pairs = oracle.sample_realizable(cfg)
    records = oracle.serialize_samples(pairs)
    report = Report("sample")
    report.add("n", args.n)
    report.add("count", args.count)
    report.add("distribution", args.dist)
    report.add("seed", args.seed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(records)
        report.add("path", args.out)
        sys.stdout.write(report.to_text())
    else:
        sys.stdout.write(report.to_text())
        sys.stdout.write(records)
    return EXIT_OK


def _cmd_boundary(args) -> int:
    s = parse_spectrum(args.spectrum)
    report = Report("boundary")
    report.add("spectrum", args.spectrum)
    base = None
    if s.n == 2:
        family = witness.boundary_solve_2x2(s)
        report.extend("family", family.describe())
        prod = family.offdiag_product(family.a_lo)
        base = family.member(family.a_lo, b=prod**0.5 if prod > 0 else 0.0)
    if args.smax > 0:
        if base is None:
            decision = witness.decide_realizable(
                s, witness.SearchConfig(seed=args.seed)
            )
            if decision.verdict is not witness.Verdict.REALIZABLE:
                report.add("perturbation", "no witness available")
                _emit_report(report, args.out)
                return EXIT_UNKNOWN
            base = decision.witness.matrix
        report.add("base_matrix", format_matrix(base))
        for step in range(1, args.smax + 1):
            perturbed = witness.boundary_perturb(base, float(step))
            report.add(f"perturbed_spectrum_s{step}", format_spectrum(spectrum_of(perturbed)))
    _emit_report(report, args.out)
    return EXIT_OK


_DISPATCH = {
    "check": _cmd_check,
    "witness": _cmd_witness,
    "emit": _cmd_emit,
    "sample": _cmd_sample,
    "boundary": _cmd_boundary,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        code = _DISPATCH[args.cmd](args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except NotRealizable as exc:
        sys.stderr.write(f"not realizable: {exc}\n")
        return EXIT_REFUTED
    except NiepError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    if not args.quiet:
        elapsed = (time.perf_counter() - start) * 1000.0
        sys.stderr.write(f"timing_ms: {elapsed:.1f}\n")
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
