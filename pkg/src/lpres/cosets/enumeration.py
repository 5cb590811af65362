"""
Coset enumeration for finite-index subgroups of L-presented groups.

An L-presented group has infinitely many relators, so enumeration runs
against finite truncations instead. For each depth in the schedule the
relators of instantiate(lp, depth) are enumerated with a relator-driven
(HLT) enumerator. A closed table found this way describes a subgroup
that contains UK; it is accepted only once every fixed relator and every
iterated relator under every node of the substitution tree acts
trivially, which forces the whole kernel into the action and makes the
base stabilizer exactly UK.
"""
import logging
import textwrap
from typing import List, Optional, Sequence

from ..analysis.trees import iterating_endomorphisms
from ..config import EnumerationLimits
from ..core.perms import GeneratorAction, Permutation, ResourceLimitError, act_word
from ..core.words import FinitePresentation, LPresentation, Word, WordError, instantiate
from .tables import CosetTable, table_from_action

logger = logging.getLogger(__name__)


## Setup the error banks

class EnumerationError(Exception):
    """
    Raised when enumeration is inconclusive: no depth in the schedule
    produced a verified table within the limits. The subgroup may have
    infinite index. Results found before giving up are kept on partial.
    """
    def __init__(self, message: str, partial: Optional[list] = None):
        msg = f"""\
        Coset enumeration was inconclusive.
        The subgroup may have infinite index, or the limits are too small.
        The error is:
        """
        msg = textwrap.dedent(msg) + "\n" + message
        super().__init__(msg)
        self.partial = partial if partial is not None else []


UNDEFINED = -1


def word_columns(w: Word) -> List[int]:
    """Table columns of a word: 2g for g, 2g+1 for g^-1."""
    return [2 * g + (0 if s == 1 else 1) for g, s in w.letters]


class _CosetEnumerator:
    """
    Relator-driven enumeration with coincidence handling. Cosets are
    rows of a growing table; parent links record merged cosets.
    """
    def __init__(self, rank: int, max_cosets: int):
        self.rank = rank
        self.max_cosets = max_cosets
        self.table: List[List[int]] = [[UNDEFINED] * (2 * rank)]
        self.parent: List[int] = [0]

    def define(self, alpha: int, col: int):
        if len(self.table) >= self.max_cosets:
            raise ResourceLimitError(
                f"Coset enumeration exceeded {self.max_cosets} cosets", limit=self.max_cosets
            )
        beta = len(self.table)
        self.table.append([UNDEFINED] * (2 * self.rank))
        self.parent.append(beta)
        self.table[alpha][col] = beta
        self.table[beta][col ^ 1] = alpha

    def rep(self, k: int) -> int:
        parent = self.parent
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def merge(self, k: int, lam: int, queue: List[int]):
        phi, psi = self.rep(k), self.rep(lam)
        if phi != psi:
            mu, nu = min(phi, psi), max(phi, psi)
            self.parent[nu] = mu
            queue.append(nu)

    def coincidence(self, alpha: int, beta: int):
        table = self.table
        queue: List[int] = []
        self.merge(alpha, beta, queue)
        while queue:
            gamma = queue.pop(0)
            for col in range(2 * self.rank):
                delta = table[gamma][col]
                if delta == UNDEFINED:
                    continue
                table[delta][col ^ 1] = UNDEFINED
                mu, nu = self.rep(gamma), self.rep(delta)
                if table[mu][col] != UNDEFINED:
                    self.merge(nu, table[mu][col], queue)
                elif table[nu][col ^ 1] != UNDEFINED:
                    self.merge(mu, table[nu][col ^ 1], queue)
                else:
                    table[mu][col] = nu
                    table[nu][col ^ 1] = mu

    def scan_and_fill(self, alpha: int, word: Sequence[int]):
        table = self.table
        f, b = alpha, alpha
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] != UNDEFINED:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] != UNDEFINED:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def run(self, relators: Sequence[Sequence[int]], subgroup_gens: Sequence[Sequence[int]]):
        for w in subgroup_gens:
            self.scan_and_fill(0, w)
        alpha = 0
        while alpha < len(self.table):
            if self.parent[alpha] == alpha:
                for w in relators:
                    self.scan_and_fill(alpha, w)
                    if self.parent[alpha] < alpha:
                        break
                if self.parent[alpha] == alpha:
                    for col in range(2 * self.rank):
                        if self.table[alpha][col] == UNDEFINED:
                            self.define(alpha, col)
            alpha += 1

    def action(self) -> Optional[GeneratorAction]:
        """The action on live cosets, or None if an entry is still undefined."""
        live = [c for c in range(len(self.table)) if self.parent[c] == c]
        position = {c: i for i, c in enumerate(live)}
        images = []
        for g in range(self.rank):
            row = []
            for c in live:
                entry = self.table[c][2 * g]
                if entry == UNDEFINED:
                    return None
                row.append(position[self.rep(entry)])
            images.append(Permutation(tuple(row)))
        return GeneratorAction(len(live), tuple(images))


def coset_enumeration(fp: FinitePresentation,
                      subgroup_gens: Sequence[Word],
                      max_cosets: int = 65536) -> CosetTable:
    """
    Enumerate the cosets of the subgroup generated by subgroup_gens in
    the finitely presented group fp.

    Returns:
        The standardized coset table.

    Raises:
        ResourceLimitError: If more than max_cosets cosets are defined.
        EnumerationError: If the finished table is not closed.
        WordError: If a subgroup generator is not over fp's alphabet.
    """
    for w in subgroup_gens:
        if w.max_generator() >= fp.rank:
            raise WordError("Subgroup generator uses a generator outside the alphabet")
    enumerator = _CosetEnumerator(fp.rank, max_cosets)
    enumerator.run(
        [word_columns(r) for r in fp.relators if not r.is_identity()],
        [word_columns(w) for w in subgroup_gens if not w.is_identity()],
    )
    action = enumerator.action()
    if action is None:
        raise EnumerationError("Enumeration finished with undefined table entries")
    logger.debug("Enumerated %d cosets (%d defined in total)", action.degree, len(enumerator.table))
    return table_from_action(action, 0, tuple(subgroup_gens))


def verify_table(lp: LPresentation, table: CosetTable) -> bool:
    """
    Whether a closed table is a coset table of lp: every fixed relator
    and every iterated relator under every node action of the
    substitution tree acts trivially on all cosets.
    """
    action = table.action
    for q in lp.fixed:
        if not act_word(action, q).is_identity():
            return False
    tree = iterating_endomorphisms(lp.substitutions, action)
    for node_action in tree.node_actions():
        for r in lp.iterated:
            if not act_word(node_action, r).is_identity():
                return False
    return True


def enumerate_cosets(lp: LPresentation,
                     subgroup_gens: Sequence[Word],
                     limits: Optional[EnumerationLimits] = None) -> CosetTable:
    """
    Truncate-and-verify coset enumeration.

    Args:
        lp: the L-presented group
        subgroup_gens: words over lp's alphabet generating the subgroup
        limits: coset cap and depth schedule, packaged defaults if absent

    Returns:
        A standardized table whose base stabilizer is exactly UK.

    Raises:
        EnumerationError: If no depth in the schedule gives a verified table.
        WordError: If a subgroup generator is not over lp's alphabet.
    """
    limits = limits if limits is not None else EnumerationLimits()
    for w in subgroup_gens:
        if w.max_generator() >= lp.rank:
            raise WordError("Subgroup generator uses a generator outside the alphabet")

    for depth in limits.depth_schedule:
        fp = instantiate(lp, depth)
        logger.info("Enumerating at depth %d with %d relators", depth, len(fp.relators))
        try:
            table = coset_enumeration(fp, subgroup_gens, limits.max_cosets)
        except ResourceLimitError as e:
            logger.info("Depth %d: %s", depth, e)
            continue
        if verify_table(lp, table):
            logger.info("Depth %d: verified table of index %d", depth, table.index)
            return table
        logger.info("Depth %d: table of index %d failed verification", depth, table.index)

    raise EnumerationError(
        f"No verified table for depths {list(limits.depth_schedule)} "
        f"with at most {limits.max_cosets} cosets"
    )
