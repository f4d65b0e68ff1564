"""Command-line front end: ``ginbetti <command> FILE ... [options]``."""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence

from ginbetti.client import Workbench
from ginbetti.config import RunConfig
from ginbetti.exactla import FieldSpec
from ginbetti.exceptions import GinBettiException, InputError, ResourceGuardError
from ginbetti.idealfile import IdealFile
from ginbetti.ring import TermOrder
from ginbetti.types import BettiMethod, Convention, TheoremId, TheoremReport
from ginbetti.verifier import CHAR_P_CAVEAT

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_GUARD = 3


class Outcome(NamedTuple):
    text: str
    result: Dict[str, Any]
    inputs: List[IdealFile]
    exit_code: int = EXIT_OK


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="seed of every randomized step")
    common.add_argument("--field", help="override the field of the input files (Q or Fp:<prime>)")
    common.add_argument("--trials", type=int, help="gin trials that must agree")
    common.add_argument("--entry-bound", type=int, help="bound B of random matrix entries")
    common.add_argument("--degree-guard", type=int, help="largest S-pair degree allowed")
    common.add_argument("--json", metavar="PATH", help="write the structured report to PATH")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="ginbetti",
        description="Generic initial ideals, Betti numbers and Koszul homology.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    betti = commands.add_parser("betti", parents=[common], help="graded Betti numbers")
    betti.add_argument("file")
    betti.add_argument(
        "--method", choices=[m.value for m in BettiMethod], default=BettiMethod.KOSZUL.value
    )
    betti.add_argument(
        "--convention",
        choices=[c.value for c in Convention],
        default=Convention.FOR_IDEAL.value,
    )

    gin = commands.add_parser("gin", parents=[common], help="generic initial ideal")
    gin.add_argument("file")
    gin.add_argument("--order", choices=[o.value for o in TermOrder], default="degrevlex")
    gin.add_argument(
        "--lenient", action="store_true", help="report disagreeing trials instead of failing"
    )

    lex = commands.add_parser("lex", parents=[common], help="lex-segment ideal")
    lex.add_argument("file")

    alpha = commands.add_parser("alpha", parents=[common], help="generic annihilator numbers")
    alpha.add_argument("file")
    alpha.add_argument("--window", type=int, help="top degree of the computation")

    hilbert = commands.add_parser("hilbert", parents=[common], help="Hilbert function")
    hilbert.add_argument("file")
    hilbert.add_argument("--top", type=int, help="last degree of the Hilbert function")

    check = commands.add_parser("check", parents=[common], help="verify a theorem")
    check.add_argument("theorem", choices=[t.value for t in TheoremId])
    check.add_argument("files", nargs="*")
    check.add_argument("--order", choices=[o.value for o in TermOrder], help="lex: gin order")
    check.add_argument("--degree", type=int, help="strange: the power d of the maximal ideal")
    check.add_argument("--n", type=int, help="ci: number of variables")
    check.add_argument("--d", type=int, help="ci: degree of the forms")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(format="%(name)s:%(levelname)s:%(message)s", level=level)


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.from_env(
        seed=args.seed,
        field=FieldSpec.parse(args.field) if args.field else None,
        trials=args.trials,
        entry_bound=args.entry_bound,
        degree_guard=args.degree_guard,
    )


def cmd_betti(args: argparse.Namespace, bench: Workbench) -> Outcome:
    source = bench.load(args.file)
    table = bench.betti(source.ideal, BettiMethod(args.method), Convention(args.convention))
    text = f"{table.render()}\ntotals: {list(table.totals())}"
    result = dict(table.to_dict(), method=args.method)
    return Outcome(text, result, [source])


def cmd_gin(args: argparse.Namespace, bench: Workbench) -> Outcome:
    source = bench.load(args.file)
    gin = bench.gin(source.ideal, TermOrder(args.order), strict=not args.lenient)
    lines = [str(gin.ideal), f"generators: {len(gin.ideal)}"]
    lines.extend(f"warning: {w}" for w in gin.warnings)
    return Outcome("\n".join(lines), gin.to_dict(), [source])


def cmd_lex(args: argparse.Namespace, bench: Workbench) -> Outcome:
    source = bench.load(args.file)
    lex = bench.lex(source.ideal)
    text = f"{lex}\ngenerators: {len(lex)}"
    return Outcome(text, {"ideal": lex.generator_strings()}, [source])


def cmd_alpha(args: argparse.Namespace, bench: Workbench) -> Outcome:
    source = bench.load(args.file)
    profile = bench.alpha(source.ideal, args.window)
    text = f"alpha: {list(profile.alpha)}\nwindow: {list(profile.window)}"
    return Outcome(text, profile.to_dict(), [source])


def cmd_hilbert(args: argparse.Namespace, bench: Workbench) -> Outcome:
    source = bench.load(args.file)
    values, polynomial = bench.hilbert(source.ideal, args.top)
    text = f"hilbert function: {values}\nhilbert polynomial: {polynomial}"
    result = {
        "function": values,
        "polynomial": str(polynomial),
        "coefficients": [str(c) for c in polynomial.coefficients],
    }
    return Outcome(text, result, [source])


def _render_report(report: TheoremReport) -> str:
    status = "PASS" if report.passed else "FAIL"
    if not report.applicable:
        status = "NOT APPLICABLE"
    lines = [f"{report.theorem.value}: {status}"]
    for name, verdict in report.verdicts.items():
        shown = "not computed" if verdict is None else ("ok" if verdict else "FAILED")
        lines.append(f"  {name}: {shown}")
    for name, value in report.witnesses.items():
        lines.append(f"  {name} = {value}")
    lines.extend(f"  note: {note}" for note in report.notes)
    return "\n".join(lines)


def cmd_check(args: argparse.Namespace, bench: Workbench) -> Outcome:
    theorem = TheoremId(args.theorem)
    sources = [bench.load(path) for path in args.files]
    params: Dict[str, Any] = {}
    if theorem == TheoremId.CI:
        if args.n is None or args.d is None:
            raise InputError("check ci needs --n and --d")
        params = {"n": args.n, "d": args.d}
    elif theorem == TheoremId.LEX and args.order:
        params = {"order": TermOrder(args.order)}
    elif theorem == TheoremId.STRANGE and args.degree is not None:
        params = {"d": args.degree}
    report = bench.check(theorem, *(s.ideal for s in sources), **params)
    code = EXIT_OK if report.passed else EXIT_FAILURE
    return Outcome(_render_report(report), report.to_dict(), sources, code)


COMMANDS: Dict[str, Callable[[argparse.Namespace, Workbench], Outcome]] = {
    "betti": cmd_betti,
    "gin": cmd_gin,
    "lex": cmd_lex,
    "alpha": cmd_alpha,
    "hilbert": cmd_hilbert,
    "check": cmd_check,
}


def _caveat_field(config: RunConfig, outcome: Outcome) -> Optional[FieldSpec]:
    fields = [source.ctx.field for source in outcome.inputs]
    if config.field is not None:
        fields.append(config.field)
    return next((f for f in fields if f.is_prime_field), None)


def write_document(path: str, document: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=2, sort_keys=True)
        handle.write("\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        config = _config(args)
        outcome = COMMANDS[args.command](args, Workbench(config))
        caveat = _caveat_field(config, outcome)
        document = {
            "command": args.command,
            "config": config.to_dict(),
            "inputs": [source.to_dict() for source in outcome.inputs],
            "caveat": CHAR_P_CAVEAT.format(field=caveat) if caveat else None,
            "result": outcome.result,
        }
        if args.json:
            write_document(args.json, document)
    except InputError as exc:
        print(f"ginbetti: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceGuardError as exc:
        print(f"ginbetti: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except GinBettiException as exc:
        print(f"ginbetti: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(outcome.text)
    if caveat:
        print(f"caveat: {CHAR_P_CAVEAT.format(field=caveat)}")
    return outcome.exit_code
