"""
Counting subgroups of small index by their invariance properties.
"""
import logging
import time
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..config import EnumerationLimits
from ..core.words import LPresentation
from ..cosets.low_index import low_index_tables
from .classify import classify_subgroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CensusRow:
    """
    Counts for one index. weakly_leaf_invariant uses the leafs of the
    leadsto subtree.
    """
    index: int
    subgroups: int = 0
    normal: int = 0
    maximal: int = 0
    leaf_invariant: int = 0
    weakly_leaf_invariant: int = 0
    normal_weakly_leaf_invariant: int = 0
    seconds: float = 0.0

    def counts(self) -> Tuple[int, int, int, int, int, int]:
        return (self.subgroups, self.normal, self.maximal, self.leaf_invariant,
                self.weakly_leaf_invariant, self.normal_weakly_leaf_invariant)

    def serialize(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "subgroups": self.subgroups,
            "normal": self.normal,
            "maximal": self.maximal,
            "leaf_invariant": self.leaf_invariant,
            "weakly_leaf_invariant": self.weakly_leaf_invariant,
            "normal_weakly_leaf_invariant": self.normal_weakly_leaf_invariant,
            "seconds": self.seconds,
        }


@dataclass(frozen=True)
class SubgroupCensus:
    rows: Tuple[CensusRow, ...]
    search_seconds: float

    def serialize(self) -> Dict[str, Any]:
        return {
            "rows": [row.serialize() for row in self.rows],
            "search_seconds": self.search_seconds,
        }


def subgroup_census(lp: LPresentation,
                    max_index: int,
                    limits: Optional[EnumerationLimits] = None) -> SubgroupCensus:
    """
    One row per index up to max_index, counting all subgroups, the
    normal ones, the maximal ones, the leaf-invariant ones, the weakly
    leaf-invariant ones and the normal weakly leaf-invariant ones.

    Raises:
        EnumerationError: If the low-index search is inconclusive.
        ResourceLimitError: If a classification exceeds the closure cap.
    """
    limits = limits if limits is not None else EnumerationLimits()
    start = time.perf_counter()
    tables = low_index_tables(lp, max_index, limits)
    search_seconds = time.perf_counter() - start

    counts: Dict[int, List[int]] = {n: [0] * 6 for n in range(1, max_index + 1)}
    seconds: Dict[int, float] = {n: 0.0 for n in range(1, max_index + 1)}
    for table in tables:
        began = time.perf_counter()
        report = classify_subgroup(lp, table, limits)
        row = counts[report.index]
        flags = (True, report.normal, report.maximal, report.leaf_invariant,
                 report.weakly_leaf_invariant_vtilde, report.normal and report.weakly_leaf_invariant_vtilde)
        for i, flag in enumerate(flags):
            row[i] += int(flag)
        seconds[report.index] += time.perf_counter() - began

    rows = []
    for n in range(1, max_index + 1):
        rows.append(CensusRow(n, *counts[n], seconds=seconds[n]))
        logger.info("Index %d: %s in %.2fs", n, counts[n], seconds[n])
    return SubgroupCensus(tuple(rows), search_seconds)
