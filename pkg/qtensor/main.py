# qtensor/main.py
import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from .checkers import CheckerFactory
from .corpus import export_corpus
from .engine import solve
from .exceptions import TCPError, UsageError
from .harness import SUITE_NAMES, SuiteFactory, render_records, render_text, run_corpus_suite, save_report_csv
from .schemas import CLASS_NAMES, MonomialForm, RunReport, SearchBudget, SolveOutcome, SolveStatus, Verdict
from .tensors import diagonal, monomial_form
from .tensors.core import nonzero_entries
from .tensors.text_format import read_instance, read_tensor

logger = logging.getLogger(__name__)

ENV_FILE = "qtensor.env"

EXIT_CODES = {
    SolveStatus.SOLVED: 0,
    SolveStatus.NO_SOLUTION_CERTIFIED: 2,
    SolveStatus.NO_SOLUTION_FOUND: 3,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; 2 is a solve outcome here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _budget_flags() -> argparse.ArgumentParser:
    flags = _Parser(add_help=False)
    flags.add_argument("--seed", type=int, help="Root seed of every random stream")
    flags.add_argument("--multistarts", type=int, help="Random Newton starts per support")
    flags.add_argument("--newton-max-iter", type=int, help="Newton iterations per start")
    flags.add_argument("--samples", type=int, help="Samples per checker search family")
    flags.add_argument("--tol-feas", type=float, help="Feasibility tolerance")
    flags.add_argument("--tol-accept", type=float, help="Residual acceptance tolerance")
    flags.add_argument("--tol-support", type=float, help="Support detection tolerance")
    flags.add_argument("--tol-falsify", type=float, help="Minimum witness violation")
    flags.add_argument("--max-workers", type=int, help="Thread fan-out for supports and suite cases")
    flags.add_argument("--machine", action="store_true", help="Emit line-delimited key=value records")
    flags.add_argument("--verbose", action="store_true", help="Log at INFO level")
    flags.add_argument("--debug", action="store_true", help="Log at DEBUG level")
    return flags


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Parse command-line arguments.
    """
    flags = _budget_flags()
    parser = _Parser(
        prog="qtensor",
        description="Solve tensor complementarity problems and classify structured tensors.",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    solve_parser = verbs.add_parser("solve", parents=[flags], help="Solve TCP(q, A) from an instance file")
    solve_parser.add_argument("instance", help="Path to an instance file (tensor entries then a q line)")

    classify_parser = verbs.add_parser("classify", parents=[flags], help="Classify a tensor file")
    classify_parser.add_argument("tensor", help="Path to a tensor file")
    classify_parser.add_argument(
        "--classes",
        default=",".join(CLASS_NAMES),
        help=f"Comma-separated class names (default: {','.join(CLASS_NAMES)})",
    )

    verbs.add_parser("corpus-verify", parents=[flags], help="Check every corpus entry against the checkers")

    harness_parser = verbs.add_parser("harness", parents=[flags], help="Run a verification suite")
    harness_parser.add_argument("suite", help=f"One of: {', '.join(SUITE_NAMES)}")
    harness_parser.add_argument("--trials", type=int, help="Generated trials (theorem41)")
    harness_parser.add_argument("--output-csv", help="Also write the report to this CSV file")

    info_parser = verbs.add_parser("info", parents=[flags], help="Describe a tensor file")
    info_parser.add_argument("tensor", help="Path to a tensor file")

    export_parser = verbs.add_parser("corpus-export", parents=[flags], help="Write the corpus as tensor files")
    export_parser.add_argument("directory", help="Output directory")

    return parser.parse_args(argv)


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )


def _budget(args: argparse.Namespace) -> SearchBudget:
    load_dotenv(ENV_FILE)
    try:
        return SearchBudget.from_env(
            seed=args.seed,
            multistarts=args.multistarts,
            newton_max_iter=args.newton_max_iter,
            samples=args.samples,
            feas_tol=args.tol_feas,
            accept_tol=args.tol_accept,
            support_tol=args.tol_support,
            falsify_tol=args.tol_falsify,
            max_workers=args.max_workers,
        )
    except (ValidationError, ValueError) as e:
        raise UsageError(f"invalid search budget: {e}")


def _vector(values) -> str:
    return "(" + ", ".join(f"{v:.10g}" for v in values) + ")"


def _csv(values) -> str:
    return ",".join(repr(float(v)) for v in values)


def format_outcome(outcome: SolveOutcome, machine: bool = False) -> str:
    if machine:
        lines = [
            f"status={outcome.status.value} solutions={len(outcome.solutions)} "
            f"supports_explored={outcome.stats.supports_explored} "
            f"supports_refuted={outcome.stats.supports_refuted} "
            f"newton_iterations={outcome.stats.newton_iterations}"
        ]
        for k, s in enumerate(outcome.solutions, start=1):
            lines.append(
                f"solution={k} x={_csv(s.x)} support={','.join(str(i) for i in s.support) or '-'} "
                f"slack={_csv(s.slack)} residual={s.residual!r}"
            )
        return "\n".join(lines) + "\n"

    lines = []
    for k, s in enumerate(outcome.solutions, start=1):
        support = "{" + ", ".join(str(i) for i in s.support) + "}"
        lines.append(f"solution {k}: x = {_vector(s.x)}")
        lines.append(f"  support {support}, slack w = {_vector(s.slack)}, residual {s.residual:.3g}")
    if outcome.proof_note:
        lines.append(f"proof: {outcome.proof_note}")
    lines.append(
        f"{outcome.status.value} ({outcome.stats.supports_explored} supports explored, "
        f"{outcome.stats.supports_refuted} refuted, {outcome.stats.wall_time:.3f}s)"
    )
    return "\n".join(lines) + "\n"


def format_verdict(verdict: Verdict, machine: bool = False) -> str:
    if machine:
        return " ".join(f"{k}={str(v).replace(' ', '_') or '-'}" for k, v in verdict.record().items())
    parts = [verdict.class_name, verdict.status.value]
    if verdict.witness is not None:
        parts.append(verdict.witness.summary())
    if verdict.certificate:
        parts.append(f"[{verdict.certificate}]")
    if not verdict.falsified and verdict.certificate is None:
        parts.append(f"({verdict.effort.samples} samples, {verdict.effort.searches} searches)")
    if verdict.effort.note:
        parts.append(f"note: {verdict.effort.note}")
    return " ".join(parts)


def format_form(form: MonomialForm) -> str:
    """Human-readable polynomial, terms in descending exponent order; '0' when empty."""
    if not form.terms:
        return "0"
    terms = []
    for exponents, c in sorted(form.terms.items(), reverse=True):
        monomial = "*".join(
            f"x{j + 1}" if e == 1 else f"x{j + 1}^{e}" for j, e in enumerate(exponents) if e > 0
        )
        if c == 1.0:
            text = monomial
        elif c == -1.0:
            text = f"-{monomial}"
        else:
            text = f"{c:g}*{monomial}"
        terms.append(text)
    return " + ".join(terms).replace("+ -", "- ")


def format_info(A, machine: bool = False) -> str:
    nonnegative = bool((A.coeffs >= 0).all())
    entries = len(nonzero_entries(A))
    forms = [monomial_form(A, i) for i in range(1, A.dim + 1)]
    if machine:
        lines = [
            f"order={A.order} dim={A.dim} entries={entries} "
            f"diagonal={_csv(diagonal(A))} nonnegative={str(nonnegative).lower()}"
        ]
        lines += [f"component={f.component} form={format_form(f).replace(' ', '')}" for f in forms]
        return "\n".join(lines) + "\n"
    lines = [
        f"order {A.order}, dimension {A.dim}, {entries} nonzero entries",
        f"diagonal {_vector(diagonal(A))}",
        f"nonnegative: {'yes' if nonnegative else 'no'}",
    ]
    lines += [f"component {f.component} = {format_form(f)}" for f in forms]
    return "\n".join(lines) + "\n"


def cmd_solve(args: argparse.Namespace, budget: SearchBudget) -> int:
    instance = read_instance(args.instance)
    outcome = solve(instance, budget)
    sys.stdout.write(format_outcome(outcome, args.machine))
    return EXIT_CODES[outcome.status]


def cmd_classify(args: argparse.Namespace, budget: SearchBudget) -> int:
    names = [name.strip() for name in args.classes.split(",") if name.strip()]
    if not names:
        raise UsageError("--classes names no class")
    # Resolve every name before any work so a typo fails fast.
    checkers = [CheckerFactory.get_checker(name) for name in names]
    A = read_tensor(args.tensor)
    for checker in checkers:
        sys.stdout.write(format_verdict(checker.check(A, budget), args.machine) + "\n")
    return 0


def _emit_report(report: RunReport, args: argparse.Namespace) -> int:
    sys.stdout.write(render_records(report) if args.machine else render_text(report))
    if getattr(args, "output_csv", None):
        save_report_csv(report, args.output_csv)
    return 0 if report.ok else 1


def cmd_corpus_verify(args: argparse.Namespace, budget: SearchBudget) -> int:
    return _emit_report(run_corpus_suite(budget), args)


def cmd_harness(args: argparse.Namespace, budget: SearchBudget) -> int:
    suite = SuiteFactory.get_suite(args.suite)
    return _emit_report(suite.run(budget, trials=args.trials), args)


def cmd_info(args: argparse.Namespace, budget: SearchBudget) -> int:
    sys.stdout.write(format_info(read_tensor(args.tensor), args.machine))
    return 0


def cmd_corpus_export(args: argparse.Namespace, budget: SearchBudget) -> int:
    for path in export_corpus(args.directory):
        sys.stdout.write(f"{path}\n")
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "classify": cmd_classify,
    "corpus-verify": cmd_corpus_verify,
    "harness": cmd_harness,
    "info": cmd_info,
    "corpus-export": cmd_corpus_export,
}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = parse_args(argv)
        _configure_logging(args)
        budget = _budget(args)
        return COMMANDS[args.verb](args, budget)
    except TCPError as e:
        logger.debug("Command failed", exc_info=True)
        sys.stderr.write(f"error: {e.detail}\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
