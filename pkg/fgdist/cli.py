"""
Command-line interface.

Every command prints its result to stdout (or ``-o``) and returns the exit
code: 0 on success, 2 when a mathematical check fails or an operation is
refused, 3 for malformed input.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, ValidationError

from .closed_forms import run_t2_demo
from .config import Settings, configure_logging, get_settings
from .dist_algebra import DistLevel, antipode, canonical_commutator, dist_comul, dist_mul
from .errors import EXIT_INPUT, EXIT_OK, EXIT_REFUSED, FgDistError, InputError, exit_code_for
from .formal_group import (
    BUILTINS,
    FormalGroupLaw,
    builtin_law,
    default_cap,
    dump_law,
    law_from_model,
    load_custom,
    parse_law_model,
    validate,
)
from .models import AlgebraModel, CoproductTermModel, PoissonTableModel, ReportModel, TermModel
from .pbw_rewrite import RewriteSystem, s_polynomial_report
from .reconstruct import (
    algebra_from_model,
    algebra_to_model,
    build_U,
    compare_with_oracle,
    dvps_verify,
    swap_order_equivalence,
)
from .report import Report
from .splay_poisson import PoissonTable, check_table, extract_pi, table_from_model, table_to_model

logger = logging.getLogger(__name__)


# Output helpers

def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _emit_model(args: argparse.Namespace, model: BaseModel, text: Optional[str] = None) -> None:
    if args.format == "text" and text is not None:
        _emit(args, text)
    else:
        _emit(args, model.model_dump_json(indent=2))


def _emit_report(args: argparse.Namespace, report: Report, success_text: Optional[str] = None) -> int:
    if args.format == "json":
        _emit(args, ReportModel(**report.to_dict()).model_dump_json(indent=2))
    elif report.passed and success_text:
        _emit(args, success_text)
    else:
        _emit(args, report.to_text())
    return EXIT_OK if report.passed else EXIT_REFUSED


def _emit_terms(args: argparse.Namespace, items: List[tuple], text: str) -> int:
    if args.format == "json":
        _emit(args, json.dumps([TermModel(monomial=m, coeff=c).model_dump() for m, c in items], indent=2,
                               ensure_ascii=False))
    else:
        _emit(args, text)
    return EXIT_OK


def _additive(level: DistLevel, J) -> str:
    return level.delta(J).to_text()


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    return Path(source).read_text(encoding="utf-8")


# Inputs

def _law(args: argparse.Namespace, validated: bool = True) -> FormalGroupLaw:
    if args.law:
        model = parse_law_model(Path(args.law))
        if args.p is not None and args.p != model.p:
            raise InputError(f"-p {args.p} does not match p={model.p} of {args.law}")
        if args.cap is not None:
            if not 1 <= args.cap <= model.cap:
                raise InputError(f"--cap {args.cap} must lie in [1, {model.cap}] for {args.law}")
            model = model.model_copy(update={"cap": args.cap})
        name = Path(args.law).stem
        if validated:
            return load_custom(model, name=name)
        return law_from_model(model, name=name)
    if args.p is None:
        raise InputError("-p is required with --builtin")
    cap = args.cap if args.cap is not None else default_cap(args.p, args.level)
    return builtin_law(args.builtin, args.p, cap)


def _level(args: argparse.Namespace) -> DistLevel:
    return DistLevel(_law(args), args.level, unsafe_cap=args.unsafe_cap)


def _table(args: argparse.Namespace) -> PoissonTable:
    if getattr(args, "table", None):
        model = PoissonTableModel.model_validate_json(_read_text(args.table))
        return table_from_model(model, unsafe_cap=args.unsafe_cap)
    return extract_pi(_level(args))


# Commands

def cmd_validate(args: argparse.Namespace) -> int:
    return _emit_report(args, validate(_law(args, validated=False)))


def cmd_export_law(args: argparse.Namespace) -> int:
    _emit(args, json.dumps(dump_law(_law(args, validated=False)), indent=2))
    return EXIT_OK


def cmd_mul(args: argparse.Namespace) -> int:
    level = _level(args)
    result = dist_mul(level.parse(args.left), level.parse(args.right))
    return _emit_terms(args, [(_additive(level, J), c) for J, c in result.sorted_terms()], result.to_text())


def cmd_comul(args: argparse.Namespace) -> int:
    level = _level(args)
    tensor = dist_comul(level.parse(args.operand))
    if args.format == "json":
        terms = [CoproductTermModel(left=_additive(level, A), right=_additive(level, B), coeff=c).model_dump()
                 for (A, B), c in tensor.terms.items()]
        _emit(args, json.dumps(terms, indent=2, ensure_ascii=False))
    else:
        _emit(args, tensor.to_text())
    return EXIT_OK


def cmd_commutator(args: argparse.Namespace) -> int:
    level = _level(args)
    result = canonical_commutator(level.parse(args.left), level.parse(args.right))
    return _emit_terms(args, [(_additive(level, J), c) for J, c in result.sorted_terms()], result.to_text())


def cmd_antipode(args: argparse.Namespace) -> int:
    level = _level(args)
    result = antipode(level.parse(args.operand))
    return _emit_terms(args, [(_additive(level, J), c) for J, c in result.sorted_terms()], result.to_text())


def cmd_pi(args: argparse.Namespace) -> int:
    table = extract_pi(_level(args))
    _emit_model(args, table_to_model(table), table.to_text())
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    return _emit_report(args, check_table(_table(args)))


def cmd_pbw(args: argparse.Namespace) -> int:
    table = _table(args)
    system = RewriteSystem(table)
    result = system.normal_form(args.word)
    return _emit_terms(args, [(table.splay.format_word(w), c) for w, c in result.sorted_terms()],
                       result.to_text())


def cmd_confluence(args: argparse.Namespace) -> int:
    report = s_polynomial_report(RewriteSystem(_table(args)))
    return _emit_report(args, report, "all S-polynomials reduce to 0")


def cmd_reconstruct(args: argparse.Namespace) -> int:
    table = _table(args)
    algebra = build_U(table.splay, table)
    dvps_verify(algebra).require()
    _emit_model(args, algebra_to_model(algebra), algebra.to_text())
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    model = AlgebraModel.model_validate_json(_read_text(args.algebra))
    if args.level_given and args.level != model.level:
        raise InputError(f"-R {args.level} does not match level {model.level} of the algebra")
    args.level = model.level
    algebra = algebra_from_model(model, unsafe_cap=args.unsafe_cap)
    report = compare_with_oracle(algebra, _level(args))
    return _emit_report(args, report, f"identical on {report.facts['structure_constants']} structure constants")


def cmd_swap(args: argparse.Namespace) -> int:
    table = _table(args)
    blocks = {args.block, args.block + 1} - set(args.omit_antipode or [])
    return _emit_report(args, swap_order_equivalence(table.splay, table, args.block, blocks))


def cmd_demo_t2(args: argparse.Namespace) -> int:
    if args.p is None:
        raise InputError("-p is required")
    return _emit_report(args, run_t2_demo(args.p, args.level))


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "validate": cmd_validate,
    "export-law": cmd_export_law,
    "mul": cmd_mul,
    "comul": cmd_comul,
    "commutator": cmd_commutator,
    "antipode": cmd_antipode,
    "pi": cmd_pi,
    "check": cmd_check,
    "pbw": cmd_pbw,
    "confluence": cmd_confluence,
    "reconstruct": cmd_reconstruct,
    "compare": cmd_compare,
    "swap": cmd_swap,
    "demo-t2": cmd_demo_t2,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors are malformed input and exit with code 3."""

    def error(self, message: str):
        sys.stderr.write(f"error: {self.prog}: {message}\n")
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT)


class _LevelAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.level_given = True


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-p", type=int, default=None, help="characteristic (a prime)")
    common.add_argument("-R", dest="level", type=int, default=0, action=_LevelAction, help="level R (default 0)")
    common.add_argument("--cap", type=int, default=None, help="truncation cap (default 2(p^(R+1)-1))")
    common.add_argument("--unsafe-cap", action="store_true", help="allow a cap below the safe value")
    common.add_argument("--format", choices=("text", "json"), default=None, help="output format")
    common.add_argument("-o", "--output", default=None, help="write the result to a file")
    common.add_argument("--log-level", default=None, help="logging level (default from FGDIST_LOG_LEVEL)")
    source = common.add_mutually_exclusive_group()
    source.add_argument("--builtin", default="t2",
                        help=f"built-in law, or a comma-separated product of {', '.join(sorted(BUILTINS))}")
    source.add_argument("--law", default=None, help="custom law JSON file")

    parser = _Parser(prog="fgdist", description="Distribution algebras of formal groups over F_p.")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("validate", parents=[common], help="check the formal group law axioms")
    commands.add_parser("export-law", parents=[common], help="print a law as custom-law JSON")
    for name, help_text in (("mul", "product of two distributions"),
                            ("commutator", "ab - ba of two distributions")):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("left")
        sub.add_argument("right")
    for name, help_text in (("comul", "divided-power coproduct"), ("antipode", "antipode of a distribution")):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("operand")
    commands.add_parser("pi", parents=[common], help="extract the Poisson table of the blocks")
    for name, help_text in (("check", "run the four Poisson table checks"),
                            ("confluence", "S-polynomial report of the rewrite system"),
                            ("reconstruct", "build U from the blocks and the table"),
                            ("swap", "order-swap equivalence of two adjacent blocks")):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("table", nargs="?", default=None, help="Poisson table JSON file ('-' for stdin)")
        if name == "swap":
            sub.add_argument("--block", type=int, default=0, help="swap blocks BLOCK and BLOCK+1")
            sub.add_argument("--omit-antipode", type=int, action="append", help="block without antipode")
    sub = commands.add_parser("pbw", parents=[common], help="PBW normal form of a word")
    sub.add_argument("word")
    sub.add_argument("--table", default=None, help="Poisson table JSON file")
    sub = commands.add_parser("compare", parents=[common], help="compare an algebra file with Dist(G)")
    sub.add_argument("algebra", nargs="?", default="-", help="algebra JSON file ('-' for stdin)")
    commands.add_parser("demo-t2", parents=[common], help="check the T2 closed forms")
    return parser


_STRUCTURED = {"pi", "reconstruct", "export-law"}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    if not hasattr(args, "level_given"):
        args.level_given = False
    if args.format is None:
        args.format = "json" if args.command in _STRUCTURED else "text"
    try:
        settings = Settings(log_level=args.log_level) if args.log_level else get_settings()
        configure_logging(settings.log_level)
        logger.debug("running %s", args.command)
        return COMMANDS[args.command](args)
    except FgDistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())
