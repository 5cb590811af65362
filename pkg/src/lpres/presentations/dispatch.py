"""
Picking a subgroup presentation construction by name, or the strongest
one that applies.
"""
import logging
from typing import Optional

from ..config import EnumerationLimits
from ..core.words import FinitePresentation, LPresentation
from ..cosets.tables import CosetTable
from .constructions import (
    StrategyInapplicableError, SubgroupPresentationResult, classical_reidemeister_schreier,
    invariant_normal_lpres, leaf_invariant_lpres, weakly_leaf_invariant_normal_lpres,
)
from .general import general_subgroup_lpres

logger = logging.getLogger(__name__)

STRATEGY_CHOICES = ("auto", "classical", "invariant-normal", "leaf-invariant", "weak-normal", "general")


def best_strategy(lp: LPresentation,
                  table: CosetTable,
                  limits: Optional[EnumerationLimits] = None) -> SubgroupPresentationResult:
    """
    Try invariant-normal, leaf-invariant and weakly-leaf-invariant-normal
    in that order, falling back to the general construction.
    """
    attempts = (
        lambda: invariant_normal_lpres(lp, table),
        lambda: leaf_invariant_lpres(lp, table),
        lambda: weakly_leaf_invariant_normal_lpres(lp, table, limits),
    )
    for attempt in attempts:
        try:
            return attempt()
        except StrategyInapplicableError as e:
            logger.debug("Skipping construction: check '%s' failed", e.check)
    return general_subgroup_lpres(lp, table, limits)


def construct(lp: LPresentation,
              table: CosetTable,
              strategy: str = "auto",
              limits: Optional[EnumerationLimits] = None) -> SubgroupPresentationResult:
    """
    Run the named construction.

    Raises:
        StrategyInapplicableError: If the named construction does not apply.
        ValueError: If the strategy name is unknown.
    """
    if strategy == "auto":
        return best_strategy(lp, table, limits)
    if strategy == "classical":
        if lp.substitutions:
            raise StrategyInapplicableError(
                "The classical construction needs a presentation without substitutions",
                check="finitely-presented",
            )
        fp = FinitePresentation(lp.alphabet, lp.fixed + lp.iterated)
        return classical_reidemeister_schreier(fp, table)
    if strategy == "invariant-normal":
        return invariant_normal_lpres(lp, table)
    if strategy == "leaf-invariant":
        return leaf_invariant_lpres(lp, table)
    if strategy == "weak-normal":
        return weakly_leaf_invariant_normal_lpres(lp, table, limits)
    if strategy == "general":
        return general_subgroup_lpres(lp, table, limits)
    raise ValueError(f"Unknown strategy '{strategy}', expected one of {', '.join(STRATEGY_CHOICES)}")
