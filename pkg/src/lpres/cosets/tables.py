"""
Coset tables: the action of the free group on the right cosets of a
finite-index subgroup, with coset 0 as the base coset.

Every table this package hands out is standardized: cosets are
numbered in the order a breadth-first search from the base coset
meets them, following positive generator letters in declaration
order. Equal subgroups therefore give equal tables.
"""
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.perms import (
    DEFAULT_CLOSURE_CAP, GeneratorAction, Permutation, PermutationError,
    ResourceLimitError, closure, direct_sum,
)
from ..core.words import Word, generator, inverse, multiply


@dataclass(frozen=True, eq=False)
class CosetTable:
    """
    A closed, transitive coset table with base coset 0.

    Attributes:
        action: the permutation action of each generator on the cosets
        subgroup_gens: words generating the subgroup the table was
            built for, when known
    """
    action: GeneratorAction
    subgroup_gens: Tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "subgroup_gens", tuple(self.subgroup_gens))
        if self.action.degree < 1:
            raise PermutationError("A coset table needs at least one coset")
        if len(_bfs_order(self.action)) != self.action.degree:
            raise PermutationError("A coset table must be transitive")

    @property
    def degree(self) -> int:
        return self.action.degree

    @property
    def index(self) -> int:
        return self.action.degree

    @property
    def rank(self) -> int:
        return self.action.rank

    @property
    def forward(self) -> np.ndarray:
        return self.action._forward

    @property
    def backward(self) -> np.ndarray:
        return self.action._backward

    def __eq__(self, other) -> bool:
        if not isinstance(other, CosetTable):
            return NotImplemented
        return self.action == other.action

    def __hash__(self) -> int:
        return hash(self.action)

    def sort_key(self) -> Tuple[int, Tuple[Tuple[int, ...], ...]]:
        return self.degree, tuple(p.images for p in self.action.images)


def _bfs_order(action: GeneratorAction, base: int = 0) -> List[int]:
    order = [base]
    seen = {base}
    queue = deque([base])
    while queue:
        c = queue.popleft()
        for perm in action.images:
            d = perm[c]
            if d not in seen:
                seen.add(d)
                order.append(d)
                queue.append(d)
    return order


def table_from_action(action: GeneratorAction,
                      base: int = 0,
                      subgroup_gens: Sequence[Word] = ()) -> CosetTable:
    """
    The standardized coset table of the stabilizer of base, obtained by
    restricting the action to the orbit of base.
    """
    order = _bfs_order(action, base)
    position = {c: i for i, c in enumerate(order)}
    images = []
    for perm in action.images:
        images.append(Permutation(tuple(position[perm[c]] for c in order)))
    return CosetTable(GeneratorAction(len(order), tuple(images)), tuple(subgroup_gens))


def standardize(table: CosetTable) -> CosetTable:
    """Renumber cosets in breadth-first order from the base coset."""
    return table_from_action(table.action, 0, table.subgroup_gens)


def table_action(table: CosetTable) -> GeneratorAction:
    return table.action


def trace(table: CosetTable, w: Word, start: int = 0) -> int:
    """The coset reached from start by reading w."""
    return table.action.trace(start, w)


def contains(table: CosetTable, w: Word) -> bool:
    """Membership in the subgroup: w fixes the base coset."""
    return trace(table, w) == 0


def transversal(table: CosetTable) -> List[Word]:
    """
    The breadth-first Schreier transversal, one word per coset,
    using positive letters in declaration order. It is prefix-closed.
    """
    words: List[Optional[Word]] = [None] * table.degree
    words[0] = Word()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g, perm in enumerate(table.action.images):
            d = perm[c]
            if words[d] is None:
                words[d] = multiply(words[c], generator(g))
                queue.append(d)
    return words


def schreier_generator_words(table: CosetTable,
                             representatives: Optional[Sequence[Word]] = None) -> List[Tuple[int, int, Word]]:
    """
    The nontrivial Schreier generators t x (rep(t x))^-1 as
    (coset, generator, word) triples in (coset, generator) order.
    """
    reps = list(representatives) if representatives is not None else transversal(table)
    result = []
    for c in range(table.degree):
        for g, perm in enumerate(table.action.images):
            word = multiply(reps[c], generator(g), inverse(reps[perm[c]]))
            if not word.is_identity():
                result.append((c, g, word))
    return result


def orbit_table(components: Sequence[Tuple[GeneratorAction, int]],
                max_cosets: Optional[int] = None) -> CosetTable:
    """
    The coset table of the stabilizer of a tuple of base points under
    the componentwise action. Points of the table are the reachable
    tuples, discovered breadth-first from the base tuple.

    Raises:
        ResourceLimitError: If the orbit has more than max_cosets points.
    """
    if not components:
        raise PermutationError("orbit_table needs at least one component")
    rank = components[0][0].rank
    if any(a.rank != rank for a, _ in components):
        raise PermutationError("All components must act on the same free group")

    base = tuple(point for _, point in components)
    points: Dict[Tuple[int, ...], int] = {base: 0}
    order = [base]
    edges: List[List[int]] = []
    queue = deque([base])
    while queue:
        current = queue.popleft()
        row = []
        for g in range(rank):
            image = tuple(a.images[g][p] for (a, _), p in zip(components, current))
            if image not in points:
                points[image] = len(order)
                order.append(image)
                queue.append(image)
                if max_cosets is not None and len(order) > max_cosets:
                    raise ResourceLimitError(
                        f"Orbit exceeded {max_cosets} points", limit=max_cosets
                    )
            row.append(points[image])
        edges.append(row)

    images = tuple(Permutation(tuple(edges[c][g] for c in range(len(order)))) for g in range(rank))
    raw = CosetTable(GeneratorAction(len(order), images))
    table = standardize(raw)
    return CosetTable(table.action, tuple(w for _, _, w in schreier_generator_words(table)))


def kernel_table(components: Sequence[GeneratorAction],
                 cap: int = DEFAULT_CLOSURE_CAP) -> CosetTable:
    """
    The coset table of the intersection of the kernels: the regular
    action of the image group of the combined homomorphism, by right
    multiplication.

    Raises:
        ResourceLimitError: If the image group exceeds cap elements.
    """
    if not components:
        raise PermutationError("kernel_table needs at least one component")
    combined = direct_sum(list(components))
    elements = closure(combined, cap)
    position = {p.images: i for i, p in enumerate(elements)}
    images = []
    for perm in combined.images:
        images.append(Permutation(tuple(position[(p * perm).images] for p in elements)))
    table = standardize(CosetTable(GeneratorAction(len(elements), tuple(images))))
    return CosetTable(table.action, tuple(w for _, _, w in schreier_generator_words(table)))


def quotient_elements(table: CosetTable, cap: int = DEFAULT_CLOSURE_CAP) -> List[Permutation]:
    """The image group of the coset action; regular when the table is normal."""
    return closure(table.action, cap)
