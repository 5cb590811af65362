"""
Subgroup presentations by Reidemeister-Schreier rewriting.

Every construction here takes a verified coset table of a subgroup UK
and returns a presentation on the Schreier generators of the table.
The invariant constructions differ only in which substitutions they
induce on the subgroup and which relators they rewrite:

    invariant-normal              every substitution, plus conjugations;
                                  rewritten iterated relators
    leaf-invariant                the leafs of V; every iterated relator
                                  under every node of V, conjugated by
                                  every transversal word
    weakly-leaf-invariant-normal  the leafs of the leadsto subtree, plus
                                  conjugations; every iterated relator
                                  under every node of that subtree

Conjugations are taken by the generators that move the base coset.
"""
import logging
import textwrap
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from ..analysis.classify import leaf_invariant, phi_invariant, weakly_leaf_invariant
from ..analysis.trees import SubstitutionTree, iterating_endomorphisms, leadsto_subtree
from ..config import EnumerationLimits
from ..core.words import (
    FinitePresentation, FreeEndomorphism, LPresentation, Word, apply_endo,
    as_ascending, generator, inverse, monoid_endomorphism, multiply, substitute,
)
from ..cosets.schreier import (
    NotAMemberError, SchreierData, conjugation_endo, induced_endomorphism, is_normal,
    rewrite, schreier_data,
)
from ..cosets.tables import CosetTable

logger = logging.getLogger(__name__)


## Setup the error banks

class StrategyInapplicableError(Exception):
    """
    Raised when a construction's precondition does not hold for the
    given subgroup. Names the failed check.
    """
    def __init__(self, message: str, check: str):
        msg = f"""\
        The requested construction does not apply to this subgroup.
        The check "{check}" failed.
        The error is:
        """
        msg = textwrap.dedent(msg) + "\n" + message
        super().__init__(msg)
        self.check = check


@dataclass(frozen=True, eq=False)
class SubgroupPresentationResult:
    """
    A subgroup presentation together with how it was obtained.

    Attributes:
        presentation: the presentation on the subgroup's generators
        strategy: the construction that produced it
        schreier: the Schreier data of the subgroup's table
        tree: the substitution tree the construction used, if any
        dictionary: each output generator name mapped to a word over
            the original generators
    """
    presentation: Union[LPresentation, FinitePresentation]
    strategy: str
    schreier: SchreierData
    tree: Optional[SubstitutionTree] = field(default=None, repr=False)
    dictionary: Dict[str, Word] = field(default_factory=dict, repr=False)


def expand_relator(result: SubgroupPresentationResult, w: Word) -> Word:
    """Expand a word over the output generators into a word over the original generators."""
    return substitute(w, [result.dictionary[name] for name in result.presentation.names])


def _dictionary(sd: SchreierData) -> Dict[str, Word]:
    return {symbol.name: word for symbol, word in zip(sd.generators, sd.words)}


def _rewrite_all(sd: SchreierData, words: List[Word]) -> tuple:
    rewritten = (rewrite(sd, u) for u in words)
    return tuple(dict.fromkeys(w for w in rewritten if not w.is_identity()))


def _ascending(lp: LPresentation) -> LPresentation:
    if not lp.is_ascending and not lp.invariant:
        raise StrategyInapplicableError(
            "The L-presentation is neither ascending nor asserted invariant",
            check="invariant-presentation",
        )
    return as_ascending(lp)


def _require_normal(table: CosetTable):
    if not is_normal(table):
        raise StrategyInapplicableError("The subgroup is not normal", check="normal")


def _conjugations(sd: SchreierData, names: List[str]):
    endos, labels = [], []
    for x, perm in enumerate(sd.table.action.images):
        if perm[0] == 0:
            continue
        endos.append(conjugation_endo(sd, generator(x)))
        labels.append(f"delta_{names[x]}")
    return endos, labels


def classical_reidemeister_schreier(fp: FinitePresentation, table: CosetTable) -> SubgroupPresentationResult:
    """
    The presentation <Y | rewrite(t r t^-1)> of a finite-index subgroup of
    a finitely presented group, t over the transversal, r over the relators.

    Raises:
        StrategyInapplicableError: If some relator does not act trivially,
            so the table is not a coset table of fp.
    """
    sd = schreier_data(table)
    words = []
    for t in sd.transversal_words():
        t_inv = inverse(t)
        for r in fp.relators:
            words.append(multiply(t, r, t_inv))
    try:
        relators = _rewrite_all(sd, words)
    except NotAMemberError as e:
        raise StrategyInapplicableError(
            "A relator acts nontrivially on the cosets", check="relators-act-trivially"
        ) from e
    presentation = FinitePresentation(sd.generators, relators)
    return SubgroupPresentationResult(presentation, "classical", sd, None, _dictionary(sd))


def invariant_normal_lpres(lp: LPresentation, table: CosetTable) -> SubgroupPresentationResult:
    """
    An invariant L-presentation of a normal subgroup that every
    substitution maps into itself.

    Raises:
        StrategyInapplicableError: If lp is not invariant, or the
            subgroup is not normal or not invariant.
    """
    asc = _ascending(lp)
    _require_normal(table)
    tree = iterating_endomorphisms(asc.substitutions, table.action)
    if not phi_invariant(tree, table):
        raise StrategyInapplicableError(
            "Some substitution maps the subgroup outside itself", check="phi-invariant"
        )
    sd = schreier_data(table)
    endos = [induced_endomorphism(sd, e) for e in asc.substitutions]
    labels = list(asc.substitution_names)
    conj, conj_labels = _conjugations(sd, asc.names)

    presentation = LPresentation(
        alphabet=sd.generators,
        fixed=(),
        substitutions=tuple(endos + conj),
        iterated=_rewrite_all(sd, list(asc.iterated)),
        invariant=True,
        substitution_names=tuple(labels + conj_labels),
    )
    logger.info("Invariant-normal presentation: %d generators, %d substitutions",
                len(sd.generators), len(presentation.substitutions))
    return SubgroupPresentationResult(presentation, "invariant-normal", sd, tree, _dictionary(sd))


def _leaf_endomorphisms(sd: SchreierData, lp: LPresentation, tree: SubstitutionTree):
    endos: List[FreeEndomorphism] = []
    labels: List[str] = []
    for leaf in tree.leafs:
        e = monoid_endomorphism(lp.substitutions, leaf.element, lp.rank)
        endos.append(induced_endomorphism(sd, e))
        labels.append(leaf.element.format(lp.substitution_names))
    return endos, labels


def leaf_invariant_lpres(lp: LPresentation, table: CosetTable) -> SubgroupPresentationResult:
    """
    An invariant L-presentation of a leaf-invariant subgroup: the
    substitutions are the leafs of V, and the iterated relators are
    rewrite(t r^v t^-1) for every node v of V, relator r and transversal
    word t.

    Raises:
        StrategyInapplicableError: If lp is not invariant or the
            subgroup is not leaf-invariant.
    """
    asc = _ascending(lp)
    tree = iterating_endomorphisms(asc.substitutions, table.action)
    if not leaf_invariant(tree):
        raise StrategyInapplicableError(
            "Some leaf of the substitution tree does not have the root action",
            check="leaf-invariant",
        )
    sd = schreier_data(table)
    endos, labels = _leaf_endomorphisms(sd, asc, tree)

    transversal = sd.transversal_words()
    words = []
    for node in tree.nodes:
        e = monoid_endomorphism(asc.substitutions, node, asc.rank)
        for r in asc.iterated:
            image = apply_endo(e, r)
            for t in transversal:
                words.append(multiply(t, image, inverse(t)))

    presentation = LPresentation(
        alphabet=sd.generators,
        fixed=(),
        substitutions=tuple(endos),
        iterated=_rewrite_all(sd, words),
        invariant=True,
        substitution_names=tuple(labels),
    )
    logger.info("Leaf-invariant presentation: %d generators, %d relators",
                len(sd.generators), len(presentation.iterated))
    return SubgroupPresentationResult(presentation, "leaf-invariant", sd, tree, _dictionary(sd))


def weakly_leaf_invariant_normal_lpres(lp: LPresentation,
                                       table: CosetTable,
                                       limits: Optional[EnumerationLimits] = None) -> SubgroupPresentationResult:
    """
    An invariant L-presentation of a normal subgroup whose leadsto
    subtree has every leaf factoring through the root action.

    Raises:
        StrategyInapplicableError: If lp is not invariant, the subgroup
            is not normal, or a leaf of the leadsto subtree does not
            factor through the root.
        ResourceLimitError: If a factoring test exceeds the closure cap.
    """
    limits = limits if limits is not None else EnumerationLimits()
    asc = _ascending(lp)
    _require_normal(table)
    tree = iterating_endomorphisms(asc.substitutions, table.action)
    leadsto = leadsto_subtree(tree, table.action, limits.closure_cap)
    if not weakly_leaf_invariant(leadsto, limits.closure_cap):
        raise StrategyInapplicableError(
            "Some leaf of the leadsto subtree does not factor through the root action",
            check="weakly-leaf-invariant",
        )
    sd = schreier_data(table)
    endos, labels = _leaf_endomorphisms(sd, asc, leadsto)
    conj, conj_labels = _conjugations(sd, asc.names)

    words = []
    for node in leadsto.nodes:
        e = monoid_endomorphism(asc.substitutions, node, asc.rank)
        words.extend(apply_endo(e, r) for r in asc.iterated)

    presentation = LPresentation(
        alphabet=sd.generators,
        fixed=(),
        substitutions=tuple(endos + conj),
        iterated=_rewrite_all(sd, words),
        invariant=True,
        substitution_names=tuple(labels + conj_labels),
    )
    logger.info("Weakly leaf-invariant presentation: %d generators, %d substitutions",
                len(sd.generators), len(presentation.substitutions))
    return SubgroupPresentationResult(presentation, "weakly-leaf-invariant-normal", sd, leadsto, _dictionary(sd))
