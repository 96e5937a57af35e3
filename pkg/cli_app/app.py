"""
x3form command line.

  x3form catalog [--dim N]
  x3form check <source> [--max-degree D] [--koszul-degree D] [--primes p1,p2]
                        [--seed S] [--json [PATH]] [--skip-hilbert] [--skip-lie]
                        [--expect-regular] [--timings] [--extras]
  x3form reproduce [--json [PATH]] [--csv PATH] [--jobs N]

<source> is a form file or catalog:<name>[:params].

Depths above X3F_DEEP_DEGREE are refused.

Exit codes: 0 clean run, 1 not regular under --expect-regular, 2 input
errors, 3 the certificate primes disagree, 4 internal errors (an invalid
report or an arithmetic failure).
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from core import config
from core.batch.runner import run_reproduce, summary_frame, write_outputs
from core.errors import CertificateError, ConfigError, ReportError
from core.forms.catalog import FAMILIES, fixed_entries
from core.forms.form_file import resolve_source
from core.pipeline.analysis_pipeline import AnalysisOptions, run_analysis
from core.scoring.summary import summary_row
from core.util.files import dumps_canonical, write_json

logger = logging.getLogger("x3form")

EXIT_OK = 0
EXIT_NOT_REGULAR = 1
EXIT_INPUT = 2
EXIT_CERTIFICATE = 3
EXIT_INTERNAL = 4

FAMILY_NOTES = {
    "alpha_p": "n=2p+1  params: p>=1  (alpha_1=f1, alpha_2=f2, alpha_3=f8)",
    "alpha_plane": "n=7    params: t0,t1,t2 with t0+t1+t2=1",
}


def cmd_catalog(args) -> int:
    entries = fixed_entries(args.dim)
    for e in entries:
        support = " ".join("".join(str(i) for i in t) for t in e.form.support())
        print(f"{e.name:<22} n={e.form.n}  {e.f_label or '-':<3}  {e.form.wedge_string():<40} [{support}]")
    if args.dim is None:
        for fam in FAMILIES:
            print(f"{fam:<22} {FAMILY_NOTES[fam]}")
    if not entries:
        if args.dim is not None and args.dim < 3:
            print(f"no exterior 3-forms on K^{args.dim}")
        elif args.dim == 4:
            print("no entries: every exterior 3-form on K^4 is degenerate")
        else:
            print(f"no catalog entries with n={args.dim}")
    return EXIT_OK


def _options(args, timings: bool = True) -> AnalysisOptions:
    primes = config.parse_primes(args.primes) if args.primes else config.PRIMES
    for flag, value in (("--max-degree", args.max_degree), ("--koszul-degree", args.koszul_degree)):
        if value > config.DEEP_DEGREE:
            raise ConfigError(f"{flag} {value} exceeds X3F_DEEP_DEGREE={config.DEEP_DEGREE}")
    return AnalysisOptions(
        max_degree=args.max_degree,
        koszul_degree=args.koszul_degree,
        rational_degree=args.rational_degree,
        primes=primes,
        seed=args.seed,
        trials=args.trials,
        skip_hilbert=getattr(args, "skip_hilbert", False),
        skip_lie=getattr(args, "skip_lie", False),
        skip_koszul=getattr(args, "skip_koszul", False),
        extras=getattr(args, "extras", False),
        timings=timings,
    )


def print_summary(report: dict) -> None:
    form = report["form"]
    reg = report["regularity"]
    label = f" ({form['f_label']})" if form["f_label"] else ""
    print(f"form            {form['source']}{label}  n={form['n']}")
    print(f"                {form['wedge']}")
    print(f"nondegenerate   {'yes' if reg['nondegenerate'] else 'no'}")
    if reg["witness"]:
        print(f"  witness       ({', '.join(reg['witness'])})")
    print(f"3-regular       {'yes' if reg['three_regular'] else 'no'}  [{reg['reason']}]")
    lie = report["lie"]
    if lie:
        print(f"Lie closure     dim {lie['dimension']} (so(n): {lie['so_dimension']}), "
              f"stabilizer dim {lie['stabilizer_dimension']}")
    hilbert = report["hilbert"]
    if hilbert:
        print(f"Hilbert actual  {tuple(hilbert['actual'])}")
        print(f"      predicted {tuple(hilbert['predicted'])}")
        if hilbert["first_mismatch"] is not None:
            print(f"  first mismatch at degree {hilbert['first_mismatch']}")
    koszul = report["koszul"]
    if koszul:
        print(f"Koszul          exact up to degree {koszul['exact_up_to']} ({koszul['field']})")
    cert = report["certificate"]
    primes = f" {tuple(cert['primes'])}" if cert["primes"] else ""
    print(f"certificate     {cert['field']}{primes}")
    if report["checks"]:
        for name, value in sorted(report["checks"].items()):
            print(f"check           {name}: {value}")
    for w in report["warnings"]:
        print(f"warning         {w}")
    for stage, secs in report.get("timings", {}).items():
        print(f"time            {stage}: {secs:.3f}s")
    print(f"verdict         {summary_row(report)['verdict']}")


def cmd_check(args) -> int:
    source = resolve_source(args.source)
    report = run_analysis(source, _options(args))
    timings = report.pop("timings", {})
    if args.json == "-":
        sys.stdout.write(dumps_canonical(_with_timings(report, timings, args.timings)))
    else:
        print_summary(dict(report, timings=timings))
        if args.json:
            write_json(Path(args.json), _with_timings(report, timings, args.timings))
    if args.expect_regular and not report["regularity"]["three_regular"]:
        return EXIT_NOT_REGULAR
    return EXIT_OK


def _with_timings(report: dict, timings: dict, include: bool) -> dict:
    return dict(report, timings=timings) if include else report


def cmd_reproduce(args) -> int:
    result = run_reproduce(_options(args, timings=args.timings), jobs=args.jobs, show_progress=True)
    print(summary_frame(result).to_string(index=False))
    write_outputs(
        result,
        json_path=Path(args.json) if args.json else None,
        csv_path=Path(args.csv) if args.csv else None,
    )
    return EXIT_OK


def _add_depth_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-degree", type=int, default=config.MAX_DEGREE, help="Hilbert series truncation degree")
    p.add_argument("--koszul-degree", type=int, default=config.KOSZUL_DEGREE, help="highest Koszul strand checked")
    p.add_argument("--rational-degree", type=int, default=config.RATIONAL_DEGREE,
                   help="degrees up to this are computed over Q, higher ones modulo two primes")
    p.add_argument("--primes", default="", help="certificate primes p1,p2 (each prime > 2^20)")
    p.add_argument("--seed", type=int, default=config.SEED, help="seed of the randomized checks")
    p.add_argument("--trials", type=int, default=config.TRIALS, help="randomized trials per check")
    p.add_argument("--timings", action="store_true", help="include per-stage timings in the JSON output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="x3form", description="Superpotential analysis of exterior 3-forms")
    parser.add_argument("--log-level", default=config.LOG_LEVEL)
    sub = parser.add_subparsers(dest="command", required=True)

    p_cat = sub.add_parser("catalog", help="list catalog forms")
    p_cat.add_argument("--dim", type=int, default=None)
    p_cat.set_defaults(func=cmd_catalog)

    p_check = sub.add_parser("check", help="analyze one form")
    p_check.add_argument("source", help="form file or catalog:<name>[:params]")
    _add_depth_flags(p_check)
    p_check.add_argument("--json", nargs="?", const="-", default=None,
                         help="write the JSON report to PATH, or to stdout without a path")
    p_check.add_argument("--skip-hilbert", action="store_true")
    p_check.add_argument("--skip-lie", action="store_true")
    p_check.add_argument("--skip-koszul", action="store_true")
    p_check.add_argument("--extras", action="store_true", help="run the structural checks for catalog forms")
    p_check.add_argument("--expect-regular", action="store_true", help="exit 1 unless the form is 3-regular")
    p_check.set_defaults(func=cmd_check)

    p_rep = sub.add_parser("reproduce", help="analyze the whole catalog and print the verdict table")
    _add_depth_flags(p_rep)
    p_rep.add_argument("--json", nargs="?", const=str(config.OUTPUT_DIR / "reproduce.json"), default=None,
                       help="write all reports and the table to PATH (default under X3F_OUTPUT_DIR)")
    p_rep.add_argument("--csv", default=None, help="write the table as CSV to PATH")
    p_rep.add_argument("--jobs", type=int, default=1, help="analyze forms in this many processes")
    p_rep.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CertificateError as e:
        logger.error("No certificate: %s", e)
        return EXIT_CERTIFICATE
    except ValueError as e:
        logger.error("%s", e)
        return EXIT_INPUT
    except (ReportError, ArithmeticError) as e:
        logger.exception("Internal error: %s", e)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
