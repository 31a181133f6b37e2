"""Command-line interface for qlattice."""

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .finite_field import field_for_order
from .gorenstein import (
    build_basis_set,
    dual_generator_text,
    hessian_at_ones,
    hyperplane_monomials,
    lefschetz_matrix,
)
from .incidence import build_incidence
from .lattice import VectorSpaceLattice, echelon_template, pivot_patterns
from .suites import SUITES, run_verification
from .table_exporter import ENGINES, FORMATS, TableExporter
from .utils import DEFAULT_BUDGET, BudgetExceededError, parse_range, validate_output_path

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

DUMP_OBJECTS = ("A", "B", "M", "H", "basis-set", "points", "generator", "hyperplane-basis", "echelon")


def setup_logging(verbose: bool = False) -> None:
    """
    Configure logging for the application.

    Args:
        verbose: Whether to enable verbose (DEBUG) logging
    """
    level = logging.DEBUG if verbose else logging.INFO

    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def parse_arguments(argv: list[str] | None = None) -> argparse.Namespace:
    """
    Parse command-line arguments.

    Returns:
        Parsed arguments namespace
    """
    parser = argparse.ArgumentParser(
        prog='qlattice',
        description='Verify incidence and Gorenstein identities of subspace lattices over GF(q)',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
Examples:
  # Reproduce the determinant table for q = 2
  qlattice table --q 2 --n 3..8

  # Same table as CSV, checking both determinant engines
  qlattice table --q 3 --n 3..6 --format csv --engine both

  # Run every verification suite for n = 3 over GF(2)
  qlattice verify --n 3 --q 2

  # Hessian adjudication as a JSON report without timings
  qlattice verify --n 4 --q 2 --suite gorenstein --format json --no-timing

  # Write the incidence matrix A to a file
  qlattice dump --object A --n 3 --q 2 --out A.txt
        '''
    )

    parser.add_argument(
        '-v', '--verbose',
        action='store_true',
        help='Enable verbose logging'
    )

    parser.add_argument(
        '--version',
        action='version',
        version=f'qlattice {__version__}'
    )

    subparsers = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--q', type=int, required=True, help='Field order (a prime power)')
    common.add_argument(
        '--budget',
        type=_positive_int,
        default=DEFAULT_BUDGET,
        help=f'Bound on brute-force work in elementary steps (default: {DEFAULT_BUDGET})'
    )
    common.add_argument(
        '--workers',
        type=_positive_int,
        default=1,
        help='Processes used for modular determinants (default: 1)'
    )

    table = subparsers.add_parser('table', parents=[common], help='Determinant table of A and B for a range of n')
    table.add_argument('--n', required=True, help='Range of n as MIN..MAX')
    table.add_argument('--format', choices=FORMATS, default='text', help='Output format (default: text)')
    table.add_argument('--engine', choices=ENGINES, default='exact', help='Determinant engine (default: exact)')
    table.add_argument('-p', '--pretty', action='store_true', help='Pretty-print JSON output')
    table.add_argument('-o', '--out', help='Write the table to this file instead of stdout')

    verify = subparsers.add_parser('verify', parents=[common], help='Run verification suites at one (n, q)')
    verify.add_argument('--n', type=_positive_int, required=True, help='Ambient dimension')
    verify.add_argument('--suite', choices=('all',) + SUITES, default='all', help='Suite to run (default: all)')
    verify.add_argument('--format', choices=FORMATS, default='text', help='Output format (default: text)')
    verify.add_argument('--no-timing', action='store_true', help='Record 0 ms for every check')
    verify.add_argument('-p', '--pretty', action='store_true', help='Pretty-print JSON output')
    verify.add_argument('-o', '--out', help='Write the report to this file instead of stdout')

    dump = subparsers.add_parser('dump', parents=[common], help='Write a matrix or point list to a file')
    dump.add_argument('--object', choices=DUMP_OBJECTS, required=True, help='Object to write')
    dump.add_argument('--n', type=_positive_int, required=True, help='Ambient dimension')
    dump.add_argument('--out', required=True, help='Path to the output file')

    return parser.parse_args(argv)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding='utf-8')
    logging.getLogger(__name__).info(f"Output written to: {out}")


def _check_out(out: str | None) -> None:
    if out is None:
        return
    is_valid, error_msg = validate_output_path(out)
    if not is_valid:
        raise OSError(error_msg)


def cmd_table(args: argparse.Namespace) -> int:
    """Compute, factor and render the determinant table; 1 if any cell misses its closed form."""
    n_min, n_max = parse_range(args.n)
    _check_out(args.out)
    exporter = TableExporter(field_for_order(args.q), n_min, n_max, args.engine, args.budget, args.workers)
    if args.out is None:
        _emit(exporter.render(args.format, args.pretty), None)
    else:
        exporter.export(args.out, args.format, args.pretty)
    return EXIT_OK if exporter.all_match else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the selected suites; 0 iff every check passes."""
    _check_out(args.out)
    report = run_verification(
        args.n, field_for_order(args.q), args.suite, args.budget, args.workers, timing=not args.no_timing
    )
    _emit(report.render(args.format, args.pretty), args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def _echelon_text(n: int) -> str:
    blocks = []
    for j in range(n + 1):
        patterns = ["\n".join(echelon_template(n, pivots) or ["(zero subspace)"]) for pivots in pivot_patterns(n, j)]
        blocks.append(f"j = {j}\n" + "\n\n".join(patterns))
    return "\n\n".join(blocks) + "\n"


def render_object(name: str, n: int, q: int, budget: int = DEFAULT_BUDGET) -> str:
    """
    Render one dumpable object as text.

    Matrices use the size-line format, the basis set and points one tuple per
    line, the generator a single polynomial line. The hyperplane basis lists
    the 1-based point indices of each hyperplane's monomial, and the echelon
    object lists the pivot patterns of every level.
    """
    ctx = field_for_order(q)
    if name == "echelon":
        return _echelon_text(n)
    lattice = VectorSpaceLattice(n, ctx, budget)
    if name == "points":
        return "".join(" ".join(str(c) for c in pt.coords) + "\n" for pt in lattice.points)
    if name == "hyperplane-basis":
        return "".join(" ".join(str(i + 1) for i in mono) + "\n" for mono in hyperplane_monomials(lattice))
    if name in ("A", "B"):
        pair = build_incidence(n, ctx, lattice)
        return (pair.A if name == "A" else pair.B).to_text()
    if name == "M":
        return lefschetz_matrix(n, ctx, budget, lattice).M.to_text()
    bs = build_basis_set(n, ctx, budget, lattice)
    if name == "basis-set":
        return bs.to_text()
    if name == "H":
        return hessian_at_ones(bs, lattice.size).H.to_text()
    if name == "generator":
        return dual_generator_text(bs) + "\n"
    raise ValueError(f"Unknown object '{name}', expected one of {', '.join(DUMP_OBJECTS)}")


def cmd_dump(args: argparse.Namespace) -> int:
    """Write the requested object to --out."""
    _check_out(args.out)
    text = render_object(args.object, args.n, args.q, args.budget)
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {'table': cmd_table, 'verify': cmd_verify, 'dump': cmd_dump}


def main(argv: list[str] | None = None) -> int:
    """
    Main entry point for the CLI application.

    Returns:
        Exit code (0 all checks pass, 1 a check failed, 2 usage, budget or I/O error)
    """
    args = parse_arguments(argv)
    setup_logging(args.verbose)

    logger = logging.getLogger(__name__)

    try:
        return COMMANDS[args.command](args)

    except BudgetExceededError as e:
        logger.error(str(e))
        print(f"Error: {e} (raise --budget to allow it)", file=sys.stderr)
        return EXIT_ERROR

    except ValueError as e:
        logger.error(f"Invalid parameters: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR

    except PermissionError as e:
        logger.error(f"Permission denied: {e}")
        print(f"Error: Permission denied - {e}", file=sys.stderr)
        return EXIT_ERROR

    except OSError as e:
        logger.error(f"I/O error: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR

    except Exception as e:
        logger.exception("Unexpected error occurred")
        print(f"Error: An unexpected error occurred - {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
