"""
All subgroups of small index, by backtracking over partial coset tables.

The search always fills the first undefined entry, taking cosets row by
row and columns in order (g before g^-1, generators in declaration
order). The entry is set either to an existing coset whose inverse entry
is still free, or to a brand new coset with the next number. New cosets
therefore appear in a fixed order, so every subgroup is met exactly
once, with a single numbering of its cosets.

Partial tables are pruned with the relators of the shallowest
instantiation in the depth schedule, and complete tables go through the
same verification as truncate-and-verify enumeration.
"""
import logging
from typing import List, Optional

from ..config import EnumerationLimits
from ..core.perms import GeneratorAction, Permutation
from ..core.words import LPresentation, instantiate
from .enumeration import UNDEFINED, EnumerationError, verify_table, word_columns
from .tables import CosetTable, schreier_generator_words, table_from_action

logger = logging.getLogger(__name__)


def _scan_check(table: List[List[int]], alpha: int, word: List[int]) -> Optional[bool]:
    """
    Scan a relator at alpha without defining cosets.

    Returns:
        False on a contradiction, True when the scan made a deduction,
        None otherwise.
    """
    f, b = alpha, alpha
    i, j = 0, len(word) - 1
    while i <= j and table[f][word[i]] != UNDEFINED:
        f = table[f][word[i]]
        i += 1
    if i > j:
        return None if f == b else False
    while j >= i and table[b][word[j] ^ 1] != UNDEFINED:
        b = table[b][word[j] ^ 1]
        j -= 1
    if j < i:
        return False
    if j == i:
        table[f][word[i]] = b
        table[b][word[i] ^ 1] = f
        return True
    return None


def _deduce(table: List[List[int]], relators: List[List[int]]) -> bool:
    """Scan every relator at every coset until nothing changes. False on a contradiction."""
    changed = True
    while changed:
        changed = False
        for alpha in range(len(table)):
            for word in relators:
                outcome = _scan_check(table, alpha, word)
                if outcome is False:
                    return False
                if outcome:
                    changed = True
    return True


def _first_gap(table: List[List[int]]):
    for c, row in enumerate(table):
        for col, entry in enumerate(row):
            if entry == UNDEFINED:
                return c, col
    return None


def _to_action(table: List[List[int]], rank: int) -> GeneratorAction:
    images = tuple(Permutation(tuple(row[2 * g] for row in table)) for g in range(rank))
    return GeneratorAction(len(table), images)


def low_index_tables(lp: LPresentation,
                     max_index: int,
                     limits: Optional[EnumerationLimits] = None) -> List[CosetTable]:
    """
    Coset tables of every subgroup of index at most max_index.

    Args:
        lp: the L-presented group
        max_index: largest index to search
        limits: the first entry of depth_schedule sets the pruning depth;
            max_cosets caps the index

    Returns:
        Standardized tables sorted by index, then by their actions.

    Raises:
        ValueError: If max_index is not positive.
        EnumerationError: If max_index exceeds the coset cap. The tables
            of index up to the cap are attached as partial results.
    """
    if max_index < 1:
        raise ValueError(f"max_index must be positive, got {max_index}")
    limits = limits if limits is not None else EnumerationLimits()
    rank = lp.rank
    width = 2 * rank
    fp = instantiate(lp, limits.depth_schedule[0])
    relators = [word_columns(r) for r in fp.relators]
    logger.info("Low-index search to index %d with %d pruning relators", max_index, len(relators))

    found: List[CosetTable] = []

    def accept(table: List[List[int]]):
        action = _to_action(table, rank)
        candidate = table_from_action(action)
        if not verify_table(lp, candidate):
            logger.debug("Rejected a table of index %d in verification", candidate.index)
            return
        words = tuple(w for _, _, w in schreier_generator_words(candidate))
        found.append(CosetTable(candidate.action, words))

    def search(table: List[List[int]]):
        if not _deduce(table, relators):
            return
        gap = _first_gap(table)
        if gap is None:
            accept(table)
            return
        c, col = gap
        for d in range(len(table)):
            if table[d][col ^ 1] != UNDEFINED:
                continue
            branch = [row[:] for row in table]
            branch[c][col] = d
            branch[d][col ^ 1] = c
            search(branch)
        if len(table) < bound:
            branch = [row[:] for row in table]
            branch.append([UNDEFINED] * width)
            n = len(table)
            branch[c][col] = n
            branch[n][col ^ 1] = c
            search(branch)

    bound = min(max_index, limits.max_cosets)
    search([[UNDEFINED] * width])
    found.sort(key=CosetTable.sort_key)
    if bound < max_index:
        raise EnumerationError(
            f"Index {max_index} exceeds the cap of {limits.max_cosets} cosets; "
            f"only subgroups of index at most {bound} were searched",
            partial=found,
        )
    logger.info("Low-index search found %d subgroups", len(found))
    return found
