"""
Command line front end.

Subcommands
-----------
generate     parameter file -> A = L D U in matrix text format
factor       matrix -> parameter file and/or the L, D, U factors
invert       parameter file or matrix -> exact inverse
check-tp     matrix -> total positivity report
export-dot   parameter file -> DOT drawing of one network
paths        parameter file -> every path between a source and a sink

Exit codes: 0 success, 2 input error, 3 failed total positivity check,
4 elimination or recovery failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from src.core.config import EMIT_CHOICES, AppConfig, load_config
from src.core.errors import (
    DimensionError,
    EliminationError,
    FormatError,
    IndexSetError,
    NetworkError,
    NotTotallyPositiveError,
    ParamError,
    RecoveryError,
    StructureError,
)
from src.core.factorize import assemble, factor_tp, tp_inverse
from src.core.matrix import format_rat, is_totally_positive
from src.core.network import PlanarNetwork, build_network, enumerate_paths, essential_network, export_dot
from src.core.params import ParamSet
from src.services.storage import dumps_params, load_matrix, load_params, serialize_matrix, write_target

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_TP = 3
EXIT_ELIMINATION = 4

KIND_CHOICES = ("L", "D", "U", "Linv", "Dinv", "Uinv", "full")


def network_for(kind: str, params: ParamSet) -> PlanarNetwork:
    if kind == "full":
        return essential_network(params)
    inverted = kind.endswith("inv")
    return build_network(kind[0], params, inverted=inverted)


def cmd_generate(args: argparse.Namespace, config: AppConfig) -> int:
    params = load_params(args.params)
    write_target(args.output, serialize_matrix(assemble(params)))
    return EXIT_OK


def cmd_factor(args: argparse.Namespace, config: AppConfig) -> int:
    matrix = load_matrix(args.matrix)
    check = config.factor_check and not args.no_check
    factorization = factor_tp(matrix, strict_check=check, nonneg=args.nonneg)
    emit = args.emit or config.default_emit
    parts: List[str] = []
    if emit in ("params", "both"):
        parts.append(dumps_params(factorization.params, indent=config.json_indent))
    if emit in ("ldu", "both"):
        for name, factor in (("L", factorization.L), ("D", factorization.D), ("U", factorization.U)):
            parts.append(f"{name}:\n{serialize_matrix(factor)}")
    write_target(args.output, "\n".join(parts))
    return EXIT_OK


def cmd_invert(args: argparse.Namespace, config: AppConfig) -> int:
    if args.params is not None:
        params = load_params(args.params)
    else:
        matrix = load_matrix(args.matrix)
        check = config.factor_check and not args.no_check
        params = factor_tp(matrix, strict_check=check, nonneg=args.nonneg).params
    write_target(args.output, serialize_matrix(tp_inverse(params)))
    return EXIT_OK


def cmd_check_tp(args: argparse.Namespace, config: AppConfig) -> int:
    matrix = load_matrix(args.matrix)
    limit = args.max_size if args.max_size is not None else config.check_tp_max_size
    if not matrix.is_square:
        raise DimensionError(f"check-tp needs a square matrix, got {matrix.rows}x{matrix.cols}")
    if matrix.rows > limit:
        raise DimensionError(f"matrix is {matrix.rows}x{matrix.cols}, above the size limit {limit}")
    result = is_totally_positive(matrix, strict=not args.nonneg)
    label = "TOTALLY NONNEGATIVE" if args.nonneg else "TOTALLY POSITIVE"
    logger.info("checked %d minors", result.checked)
    if result.passed:
        write_target("-", f"{label}\n")
        return EXIT_OK
    witness = result.witness
    write_target("-", f"NOT {label}\nminor {witness.describe()} = {format_rat(witness.value)}\n")
    return EXIT_NOT_TP


def cmd_export_dot(args: argparse.Namespace, config: AppConfig) -> int:
    params = load_params(args.params)
    text = export_dot(network_for(args.kind, params))
    write_target(args.output, text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def cmd_paths(args: argparse.Namespace, config: AppConfig) -> int:
    params = load_params(args.params)
    paths = enumerate_paths(network_for(args.kind, params), args.source, args.sink)
    lines = [" ".join(str(y) for y in path.heights) + "\t" + format_rat(path.weight) for path in paths]
    total = sum((path.weight for path in paths), Fraction(0))
    lines.append(f"total\t{format_rat(total)}")
    write_target("-", "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planarnet",
        description="Totally positive matrices and their essential planar networks, in exact arithmetic.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--config", type=Path, default=None, help="settings file (default data/settings.json)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log more (repeat for debug)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_generate = subparsers.add_parser("generate", help="build A = L D U from a parameter file")
    p_generate.add_argument("params", help="parameter JSON file, '-' for stdin")
    p_generate.add_argument("-o", "--output", default="-")
    p_generate.set_defaults(handler=cmd_generate)

    p_factor = subparsers.add_parser("factor", help="factor a totally positive matrix")
    p_factor.add_argument("matrix", help="matrix text file, '-' for stdin")
    p_factor.add_argument("--emit", choices=EMIT_CHOICES, default=None)
    p_factor.add_argument("--no-check", action="store_true", help="skip the all-minors check")
    p_factor.add_argument("--nonneg", action="store_true", help="accept totally nonnegative input")
    p_factor.add_argument("-o", "--output", default="-")
    p_factor.set_defaults(handler=cmd_factor)

    p_invert = subparsers.add_parser("invert", help="exact inverse through U^-1 D^-1 L^-1")
    source = p_invert.add_mutually_exclusive_group(required=True)
    source.add_argument("--params", help="parameter JSON file")
    source.add_argument("--matrix", help="matrix text file, factored first")
    p_invert.add_argument("--no-check", action="store_true")
    p_invert.add_argument("--nonneg", action="store_true")
    p_invert.add_argument("-o", "--output", default="-")
    p_invert.set_defaults(handler=cmd_invert)

    p_check = subparsers.add_parser("check-tp", help="test every minor")
    p_check.add_argument("matrix", help="matrix text file, '-' for stdin")
    p_check.add_argument("--nonneg", action="store_true", help="test total nonnegativity instead")
    p_check.add_argument("--max-size", type=int, default=None, help="largest order accepted")
    p_check.set_defaults(handler=cmd_check_tp)

    p_dot = subparsers.add_parser("export-dot", help="write a network as Graphviz DOT")
    p_dot.add_argument("params", help="parameter JSON file, '-' for stdin")
    p_dot.add_argument("--kind", choices=KIND_CHOICES, default="full")
    p_dot.add_argument("-o", "--output", default="-")
    p_dot.set_defaults(handler=cmd_export_dot)

    p_paths = subparsers.add_parser("paths", help="list the paths behind one weight matrix entry")
    p_paths.add_argument("params", help="parameter JSON file, '-' for stdin")
    p_paths.add_argument("--kind", choices=KIND_CHOICES, required=True)
    p_paths.add_argument("--source", type=int, required=True)
    p_paths.add_argument("--sink", type=int, required=True)
    p_paths.set_defaults(handler=cmd_paths)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = load_config(args.config)
    _configure_logging(args.verbose, config)
    try:
        return args.handler(args, config)
    except NotTotallyPositiveError as exc:
        _report(exc)
        return EXIT_NOT_TP
    except (EliminationError, RecoveryError) as exc:
        _report(exc)
        return EXIT_ELIMINATION
    except (FormatError, ParamError, DimensionError, IndexSetError, NetworkError, StructureError, OSError) as exc:
        _report(exc)
        return EXIT_INPUT


def _report(exc: Exception) -> None:
    print(f"error: {exc}", file=sys.stderr)


def _configure_logging(verbose: int, config: AppConfig) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, config.log_level, logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


if __name__ == "__main__":
    raise SystemExit(main())
