"""Command-line interface for the lattice Witt algebra toolkit."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from .cover import boundedness_audit
from .dop import classify
from .errors import (
    ConfigError,
    DegenerateInputError,
    InconsistentParametersError,
    InterpolationMismatchError,
    UnknownSuiteError,
)
from .exporters.csv_exporter import CSVExporter
from .lattice import DEFAULT_CONDITION_RADIUS, LatticeEmbedding, check_conditions, demo_embedding
from .models import (
    DEFAULT_ANNIHILATOR_ORDER,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_WINDOW_RADIUS,
    RunConfig,
)
from .modules import build_module
from .storage.json_storage import ReportStorage
from .verification import VerificationEngine


# Setup logging
logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2


def load_embedding(storage: ReportStorage, path: Optional[str]) -> LatticeEmbedding:
    """Load the embedding at ``path``, or the demo lattice when none is given."""
    if not path:
        logger.info("No embedding given, using the demo lattice")
        return demo_embedding()
    return storage.load_embedding(Path(path))


def lattice_check(args) -> None:
    """Check the admissibility conditions of an embedding."""
    storage = ReportStorage()
    try:
        embedding = load_embedding(storage, args.embedding)
        report = check_conditions(embedding, args.radius)
    except (ConfigError, DegenerateInputError) as e:
        logger.error(str(e))
        sys.exit(EXIT_USAGE)

    for result in report.results:
        line = f"  {result.condition}: {result.status}"
        if result.witness:
            line += f" witness={result.witness}"
        print(line)

    if args.out:
        storage.write_report(report, Path(args.out))
        logger.info(f"Report written to {args.out}")

    if not report.passed:
        logger.error("Embedding fails at least one condition")
        sys.exit(EXIT_FAILURE)


def verify(args) -> None:
    """Run one verification suite, or all of them."""
    storage = ReportStorage()
    try:
        embedding = load_embedding(storage, args.embedding)
        config = RunConfig(
            embedding_path=args.embedding,
            suite=args.suite,
            trials=args.trials,
            seed=args.seed,
            radius=args.radius,
            order=args.order,
            out=args.out,
        )
        engine = VerificationEngine(embedding, config)
    except (ConfigError, DegenerateInputError, ValidationError) as e:
        logger.error(str(e))
        sys.exit(EXIT_USAGE)

    suites = list(engine.SUITES) if args.suite == "all" else [args.suite]
    try:
        reports = engine.run_many(suites)
    except UnknownSuiteError as e:
        logger.error(str(e))
        sys.exit(EXIT_USAGE)

    for report in reports:
        status = "pass" if report.passed else "FAIL"
        print(f"{report.suite}: {status} ({report.trials - len(report.failures)}/{report.trials})")
        for failure in report.failures:
            print(f"  trial {failure.trial}: {failure.location} {failure.residual}")

    if args.out:
        if len(reports) == 1:
            storage.write_report(reports[0], Path(args.out))
        else:
            storage.write_reports(reports, Path(args.out))
        logger.info(f"Report written to {args.out}")
    if getattr(args, "csv", None):
        CSVExporter().export_suites(reports, Path(args.csv))
        logger.info(f"Trial rows exported to {args.csv}")

    if not all(report.passed for report in reports):
        sys.exit(EXIT_FAILURE)


def classify_module(args) -> None:
    """Classify a module from its D-operator data."""
    storage = ReportStorage()
    try:
        embedding = load_embedding(storage, args.embedding)
        module = build_module(storage.load_module_config(Path(args.module)), embedding)
    except (ConfigError, DegenerateInputError) as e:
        logger.error(str(e))
        sys.exit(EXIT_USAGE)

    try:
        classification = classify(module)
    except (InconsistentParametersError, InterpolationMismatchError) as e:
        logger.error(f"Classification failed: {e}")
        sys.exit(EXIT_FAILURE)

    report = classification.to_report()
    print(f"case: {report.case}")
    print(f"n: {report.n}")
    print(f"K0: {report.K0}  K1: {report.K1}")
    print(f"gamma: ({', '.join(report.gamma_base)})")
    print(f"irreducible: {report.irreducible}")

    if args.out:
        storage.write_report(report, Path(args.out))
        logger.info(f"Report written to {args.out}")


def cover(args) -> None:
    """Audit the cover of a module against the boundedness estimate."""
    storage = ReportStorage()
    try:
        embedding = load_embedding(storage, args.embedding)
        module = build_module(storage.load_module_config(Path(args.module)), embedding)
    except (ConfigError, DegenerateInputError) as e:
        logger.error(str(e))
        sys.exit(EXIT_USAGE)

    report = boundedness_audit(
        module,
        module.max_fiber_dim(),
        n=args.order,
        radius=args.radius,
        probe_annihilator=args.probe_annihilator,
    )
    for row in report.rows:
        marker = "" if row.stabilized else " (not stabilized)"
        print(f"  gamma={row.gamma}: rank {row.rank} <= {row.bound}{marker}")
    if report.annihilator_order is not None:
        print(f"observed annihilator order: {report.annihilator_order}")

    if args.out:
        storage.write_report(report, Path(args.out))
        logger.info(f"Report written to {args.out}")
    if getattr(args, "csv", None):
        CSVExporter().export_cover(report, Path(args.csv))
        logger.info(f"Cover rows exported to {args.csv}")

    if not report.within_bound:
        logger.error(f"Cover rank exceeds the bound {report.bound}")
        sys.exit(EXIT_FAILURE)


def main():
    """Main CLI entry point."""
    parser = argparse.ArgumentParser(
        description="Exact computations with lattice Witt algebras and their cuspidal modules"
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # Lattice-check command
    check_parser = subparsers.add_parser(
        "lattice-check", help="Check the admissibility conditions of an embedding"
    )
    check_parser.add_argument("--embedding", help="Embedding config (default: demo lattice)")
    check_parser.add_argument(
        "--radius",
        type=int,
        default=DEFAULT_CONDITION_RADIUS,
        help=f"Search box radius for condition (C) (default: {DEFAULT_CONDITION_RADIUS})",
    )
    check_parser.add_argument("--out", help="Write the JSON report here")

    # Verify command
    verify_parser = subparsers.add_parser("verify", help="Run an identity suite")
    verify_parser.add_argument(
        "--suite",
        required=True,
        choices=list(VerificationEngine.SUITES) + ["all"],
        help="Suite to run",
    )
    verify_parser.add_argument("--embedding", help="Embedding config (default: demo lattice)")
    verify_parser.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    verify_parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify_parser.add_argument("--radius", type=int, default=DEFAULT_WINDOW_RADIUS)
    verify_parser.add_argument("--order", type=int, help="Differentiator order override")
    verify_parser.add_argument("--out", help="Write the JSON report here")
    verify_parser.add_argument("--csv", help="Export per-trial rows as CSV")

    # Classify command
    classify_parser = subparsers.add_parser("classify", help="Classify a cuspidal module")
    classify_parser.add_argument("--module", required=True, help="Module config")
    classify_parser.add_argument("--embedding", help="Embedding config (default: demo lattice)")
    classify_parser.add_argument("--out", help="Write the JSON report here")

    # Cover command
    cover_parser = subparsers.add_parser("cover", help="Audit the cover of a module")
    cover_parser.add_argument("--module", required=True, help="Module config")
    cover_parser.add_argument("--embedding", help="Embedding config (default: demo lattice)")
    cover_parser.add_argument("--radius", type=int, default=DEFAULT_WINDOW_RADIUS)
    cover_parser.add_argument(
        "--order",
        type=int,
        default=DEFAULT_ANNIHILATOR_ORDER,
        help="Order n of the bound d * n^N",
    )
    cover_parser.add_argument(
        "--probe-annihilator",
        action="store_true",
        help="Also search for the smallest annihilating differentiator",
    )
    cover_parser.add_argument("--out", help="Write the JSON report here")
    cover_parser.add_argument("--csv", help="Export cover rows as CSV")

    args = parser.parse_args()

    if args.command == "lattice-check":
        lattice_check(args)
    elif args.command == "verify":
        verify(args)
    elif args.command == "classify":
        classify_module(args)
    elif args.command == "cover":
        cover(args)
    else:
        parser.print_help()
        sys.exit(EXIT_USAGE)


if __name__ == "__main__":
    main()
