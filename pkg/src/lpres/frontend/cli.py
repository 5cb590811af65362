"""
The lpres command line.

    lpres analyze FILE --subgroup NAME
    lpres present FILE --subgroup NAME [--strategy auto|classical|...]
    lpres abelian FILE [--subgroup NAME] [--depth D]
    lpres lowindex FILE --max N
    lpres verify FILE --subgroup NAME --depth D

Exit status is 0 on success, 1 on bad input, and 2 when a computation
ran into a resource limit or could not be verified.
"""
import argparse
import logging
import sys
import warnings
from typing import List, Optional, Sequence

from ..abelian import LatticeError, abelian_invariants, finite_abelian_invariants
from ..analysis.census import SubgroupCensus, subgroup_census
from ..analysis.classify import SubgroupReport, classify_subgroup
from ..config import ConfigParseError, EnumerationLimits, load_limits
from ..core.perms import PermutationError, ResourceLimitError, format_cycles
from ..core.words import FinitePresentation, LPresentation, WordError, format_word, instantiate
from ..cosets.enumeration import EnumerationError, coset_enumeration, enumerate_cosets, verify_table
from ..cosets.schreier import NotAMemberError, NotInvariantError
from ..cosets.tables import CosetTable
from ..presentations.constructions import StrategyInapplicableError, SubgroupPresentationResult
from ..presentations.dispatch import STRATEGY_CHOICES, construct
from .parsing import PresentationFile, PresentationParseError, format_presentation, load_presentation
from .serialization import (
    dumps, serialize_census, serialize_report, serialize_result, serialize_table,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONCLUSIVE = 2

INCONCLUSIVE_ERRORS = (EnumerationError, ResourceLimitError, LatticeError)
INPUT_ERRORS = (
    PresentationParseError, ConfigParseError, WordError, PermutationError, KeyError, ValueError,
    StrategyInapplicableError, NotAMemberError, NotInvariantError,
)


def _depth_schedule(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--max-cosets", type=int, default=None, help="coset cap for enumeration")
    common.add_argument("--depth-schedule", type=_depth_schedule, default=None,
                        help="truncation depths to try, e.g. 2,4,6")
    common.add_argument("--config", default=None, help="TOML file with a [limits] table")
    common.add_argument("--seed", type=int, default=None, help="reserved; has no effect")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress (-v for INFO, -vv for DEBUG)")

    parser = argparse.ArgumentParser(
        prog="lpres",
        description="Subgroup presentations and invariants of finitely L-presented groups.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common], help="classify a subgroup")
    analyze.add_argument("file")
    analyze.add_argument("--subgroup", required=True)

    present = commands.add_parser("present", parents=[common], help="present a subgroup")
    present.add_argument("file")
    present.add_argument("--subgroup", required=True)
    present.add_argument("--strategy", choices=STRATEGY_CHOICES, default="auto")

    abelian = commands.add_parser("abelian", parents=[common], help="abelian invariants")
    abelian.add_argument("file")
    abelian.add_argument("--subgroup", default=None)
    abelian.add_argument("--depth", type=int, default=None,
                         help="compare truncations at this depth and the next instead of closing the lattice")

    lowindex = commands.add_parser("lowindex", parents=[common], help="count subgroups of small index")
    lowindex.add_argument("file")
    lowindex.add_argument("--max", type=int, required=True, dest="max_index")

    verify = commands.add_parser("verify", parents=[common], help="check a truncated coset table")
    verify.add_argument("file")
    verify.add_argument("--subgroup", required=True)
    verify.add_argument("--depth", type=int, required=True)
    return parser


def _configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _limits(args: argparse.Namespace) -> EnumerationLimits:
    limits = load_limits(args.config)
    return limits.with_overrides(max_cosets=args.max_cosets, depth_schedule=args.depth_schedule)


def _subgroup_table(pfile: PresentationFile, name: str, limits: EnumerationLimits) -> CosetTable:
    lp = pfile.presentation
    return enumerate_cosets(lp, pfile.subgroup(name), limits)


## Text output

def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _format_action(table: CosetTable, names: Sequence[str]) -> List[str]:
    return [f"  {name}: {format_cycles(perm)}" for name, perm in zip(names, table.action.images)]


def format_report(report: SubgroupReport, table: CosetTable, lp: LPresentation) -> str:
    names = lp.substitution_names
    lines = [
        f"index: {report.index}",
        f"normal: {_yes(report.normal)}",
        f"maximal: {_yes(report.maximal)}",
        f"phi-invariant: {_yes(report.phi_invariant)}",
        f"leaf-invariant: {_yes(report.leaf_invariant)}",
        f"weakly leaf-invariant (V): {_yes(report.weakly_leaf_invariant_v)}",
        f"weakly leaf-invariant (leadsto subtree): {_yes(report.weakly_leaf_invariant_vtilde)}",
        f"V: {report.v_size} nodes, leadsto subtree: {report.vtilde_size} nodes",
        "leafs with the root action: " + (", ".join(e.format(names) for e in report.phi_leafs) or "none"),
    ]
    if report.quotient is not None:
        q = report.quotient
        kind = "abelian" if q.abelian else ("dihedral" if q.dihedral else "non-abelian")
        lines.append(f"quotient: order {q.order}, {kind}")
    lines.append(f"strategy: {report.strategy}")
    lines.append("action:")
    lines.extend(_format_action(table, lp.names))
    return "\n".join(lines)


def format_result(result: SubgroupPresentationResult, lp: LPresentation) -> str:
    """The presentation as a presentation file, headed by its generator dictionary."""
    presentation = result.presentation
    if isinstance(presentation, FinitePresentation):
        presentation = LPresentation(presentation.alphabet, iterated=presentation.relators, invariant=True)
    lines = [f"# strategy: {result.strategy}"]
    for name, word in result.dictionary.items():
        lines.append(f"# {name} = {format_word(word, lp.alphabet)}")
    return "\n".join(lines) + "\n" + format_presentation(PresentationFile(presentation))


def format_census(census: SubgroupCensus) -> str:
    header = ("index", "all", "normal", "max", "l.i.", "w.l.i.", "normal+w.l.i.", "seconds")
    lines = ["  ".join(f"{h:>{max(len(h), 5)}}" for h in header)]
    for row in census.rows:
        cells = (row.index,) + row.counts()
        text = "  ".join(f"{c:>{max(len(h), 5)}}" for h, c in zip(header, cells))
        lines.append(f"{text}  {row.seconds:>7.2f}")
    lines.append(f"search: {census.search_seconds:.2f}s")
    return "\n".join(lines)


## Commands

def _analyze(args, pfile: PresentationFile, limits: EnumerationLimits) -> int:
    lp = pfile.presentation
    table = _subgroup_table(pfile, args.subgroup, limits)
    report = classify_subgroup(lp, table, limits)
    if args.json:
        print(dumps(serialize_report(report, table, lp)))
    else:
        print(format_report(report, table, lp))
    return EXIT_OK


def _present(args, pfile: PresentationFile, limits: EnumerationLimits) -> int:
    lp = pfile.presentation
    table = _subgroup_table(pfile, args.subgroup, limits)
    result = construct(lp, table, args.strategy, limits)
    if args.json:
        print(dumps(serialize_result(result, lp.alphabet)))
    else:
        print(format_result(result, lp), end="")
    return EXIT_OK


def _abelian(args, pfile: PresentationFile, limits: EnumerationLimits) -> int:
    lp = pfile.presentation
    if args.subgroup is not None:
        table = _subgroup_table(pfile, args.subgroup, limits)
        presentation = construct(lp, table, "auto", limits).presentation
        if isinstance(presentation, FinitePresentation):
            invariants = finite_abelian_invariants(presentation)
        else:
            invariants = abelian_invariants(presentation, args.depth, limits)
    else:
        invariants = abelian_invariants(lp, args.depth, limits)
    if args.json:
        data = invariants.serialize()
        data["text"] = invariants.format()
        print(dumps(data))
    else:
        suffix = " (heuristic)" if invariants.heuristic else ""
        print(invariants.format() + suffix)
    return EXIT_OK


def _lowindex(args, pfile: PresentationFile, limits: EnumerationLimits) -> int:
    census = subgroup_census(pfile.presentation, args.max_index, limits)
    if args.json:
        print(dumps(serialize_census(census)))
    else:
        print(format_census(census))
    return EXIT_OK


def _verify(args, pfile: PresentationFile, limits: EnumerationLimits) -> int:
    lp = pfile.presentation
    fp = instantiate(lp, args.depth)
    table = coset_enumeration(fp, pfile.subgroup(args.subgroup), limits.max_cosets)
    verified = verify_table(lp, table)
    if args.json:
        print(dumps({"depth": args.depth, "index": table.index, "verified": verified,
                     "table": serialize_table(table, lp.names)}))
    else:
        print(f"depth: {args.depth}")
        print(f"index: {table.index}")
        print(f"verified: {_yes(verified)}")
    return EXIT_OK if verified else EXIT_INCONCLUSIVE


COMMANDS = {
    "analyze": _analyze,
    "present": _present,
    "abelian": _abelian,
    "lowindex": _lowindex,
    "verify": _verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Returns:
        The exit status: 0 on success, 1 on an input error, 2 when the
        computation was inconclusive.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; those are input errors here.
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT
    _configure_logging(args.verbose)
    if args.seed is not None:
        warnings.warn("--seed is reserved and has no effect", UserWarning)

    try:
        limits = _limits(args)
        pfile = load_presentation(args.file)
        return COMMANDS[args.command](args, pfile, limits)
    except INCONCLUSIVE_ERRORS as e:
        logger.debug("Inconclusive", exc_info=True)
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except INPUT_ERRORS as e:
        logger.debug("Input error", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
