"""
A finite L-presentation for any finite-index subgroup.

The subgroup UK is built up from its stabilizing core L, which is normal
and invariant under every substitution:

1. drop the fixed relators, giving the ascending cover <X | {} | Phi | R>
2. compute the core table of L from the node actions of V
3. present L over the cover with the invariant-normal construction
4. present the finite group UK/L on Schreier generators of UK
5. glue 3 and 4 together as a finite extension
6. put the fixed relators back, conjugated by the transversal and
   rewritten over the extension's generators

The result is never asserted invariant.
"""
import logging
from typing import Dict, List, Optional, Tuple

from ..analysis.trees import iterating_endomorphisms
from ..config import EnumerationLimits
from ..core.perms import GeneratorAction, Permutation
from ..core.words import (
    FinitePresentation, LPresentation, Word, conjugate, factor_lpres, finite_extension,
    inverse, make_alphabet, multiply, substitute,
)
from ..cosets.schreier import SchreierData, rewrite, schreier_data
from ..cosets.tables import (
    CosetTable, kernel_table, schreier_generator_words, table_from_action, trace, transversal,
)
from .constructions import SubgroupPresentationResult, invariant_normal_lpres

logger = logging.getLogger(__name__)


def _orbit(core: CosetTable, words: List[Word]) -> List[int]:
    points = [0]
    seen = {0}
    for p in points:
        for w in words:
            q = trace(core, w, p)
            if q not in seen:
                seen.add(q)
                points.append(q)
    return points


def _quotient_generators(core: CosetTable, sd: SchreierData) -> List[Word]:
    """
    Schreier generators of UK, kept greedily when they enlarge the
    image of UK in F/L. The core's action is regular, so an element of
    F/L is identified with the coset the base coset moves to.
    """
    chosen: List[Word] = []
    reached = {0}
    for u in sd.words:
        if trace(core, u, 0) in reached:
            continue
        chosen.append(u)
        reached = set(_orbit(core, chosen))
    return chosen


def _quotient_presentation(core: CosetTable, chosen: List[Word]) -> Tuple[FinitePresentation, Dict[int, Word]]:
    """
    Present UK/L on the chosen generators by the Schreier generators of
    the trivial subgroup of its regular action. Also returns a word over
    the chosen generators for every core coset lying in UK/L.
    """
    points = _orbit(core, chosen)
    position = {p: i for i, p in enumerate(points)}
    images = []
    for u in chosen:
        images.append(Permutation(tuple(position[trace(core, u, p)] for p in points)))
    regular = table_from_action(GeneratorAction(len(points), tuple(images)))

    alphabet = make_alphabet(f"alpha{i + 1}" for i in range(len(chosen)))
    relators = tuple(w for _, _, w in schreier_generator_words(regular))
    representatives = {}
    for s in transversal(regular):
        representatives[trace(core, substitute(s, chosen), 0)] = s
    return FinitePresentation(alphabet, relators), representatives


def general_subgroup_lpres(lp: LPresentation,
                           table: CosetTable,
                           limits: Optional[EnumerationLimits] = None) -> SubgroupPresentationResult:
    """
    A finite L-presentation of the subgroup of any verified table,
    as a finite extension of its stabilizing core.

    Raises:
        ResourceLimitError: If the core exceeds limits.closure_cap.
    """
    limits = limits if limits is not None else EnumerationLimits()
    cover = LPresentation(
        alphabet=lp.alphabet,
        fixed=(),
        substitutions=lp.substitutions,
        iterated=lp.iterated,
        invariant=True,
        substitution_names=lp.substitution_names,
    )
    tree = iterating_endomorphisms(lp.substitutions, table.action)
    core = kernel_table(tree.node_actions(), limits.closure_cap)
    core_result = invariant_normal_lpres(cover, core)
    core_sd = core_result.schreier
    sd = schreier_data(table)
    logger.info("Stabilizing core has index %d in the free group", core.index)

    chosen = _quotient_generators(core, sd)
    quotient, representatives = _quotient_presentation(core, chosen)
    offset = core_result.presentation.rank

    def express(w: Word) -> Word:
        # w = s * l with s over the quotient generators and l in the core.
        s = representatives[trace(core, w, 0)]
        rest = rewrite(core_sd, multiply(inverse(substitute(s, chosen)), w))
        shifted = Word(tuple((g + offset, e) for g, e in s.letters))
        return multiply(shifted, rest)

    lifts = {r: rewrite(core_sd, substitute(r, chosen)) for r in quotient.relators}
    action = {}
    for x, v in enumerate(core_sd.words):
        for t, u in enumerate(chosen):
            action[(x, t)] = rewrite(core_sd, conjugate(v, u))
    extension = finite_extension(core_result.presentation, quotient, lifts, action)

    normal_gens = []
    for t in sd.transversal_words():
        for q in lp.fixed:
            normal_gens.append(express(multiply(t, q, inverse(t))))
    presentation = factor_lpres(extension, normal_gens)

    dictionary = dict(core_result.dictionary)
    for name, u in zip(presentation.names[offset:], chosen):
        dictionary[name] = u
    logger.info(
        "General presentation: %d generators, %d fixed relators, %d substitutions",
        presentation.rank, len(presentation.fixed), len(presentation.substitutions),
    )
    return SubgroupPresentationResult(presentation, "general", sd, tree, dictionary)
