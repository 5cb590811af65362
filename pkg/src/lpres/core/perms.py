"""
Permutations on finite point sets and homomorphisms from a free
group into a symmetric group.

Points are 0-based internally and 1-based in cycle notation.
Actions are right actions: the product p * q applies p first,
so the point i goes to q[p[i]].

A GeneratorAction stores one permutation per free generator,
which determines a homomorphism F -> Sym(n). The pair-closure
test in factors_through decides whether one such homomorphism
factors through another.
"""
import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .words import FreeEndomorphism, Word, WordError


## Setup the error banks

class PermutationError(Exception):
    """
    Raised when permutation data is not a bijection, degrees
    disagree, or cycle text cannot be read.
    """
    pass


class ResourceLimitError(Exception):
    """
    Raised when a computation would exceed a configured
    resource limit, such as a closure element cap or a coset
    cap. The computation is inconclusive, not wrong.
    """
    def __init__(self, message: str, limit: Optional[int] = None):
        super().__init__(message)
        self.limit = limit


DEFAULT_CLOSURE_CAP = 1_000_000


## Permutations

@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., n-1}, stored as its image list."""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise PermutationError(f"Images {images} do not form a permutation")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise PermutationError(f"Cannot multiply permutations of degree {self.degree} and {other.degree}")
        return _trusted(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        result = [0] * self.degree
        for i, j in enumerate(self.images):
            result[j] = i
        return _trusted(tuple(result))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def order(self) -> int:
        result = 1
        for cycle in self.cycles():
            result = math.lcm(result, len(cycle))
        return result


def _trusted(images: Tuple[int, ...]) -> Permutation:
    perm = object.__new__(Permutation)
    object.__setattr__(perm, "images", images)
    return perm


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """
    Read 1-based cycle notation such as '(1,2)(3,5)'; '()' is
    the identity.

    Raises:
        PermutationError: On malformed text, repeated points, or
            points outside 1..degree.
    """
    stripped = re.sub(r"\s+", "", text)
    if _CYCLE.sub("", stripped):
        raise PermutationError(f"Cannot read cycle notation '{text}'")
    images = list(range(degree))
    used = set()
    for body in _CYCLE.findall(stripped):
        if not body:
            continue
        try:
            points = [int(p) - 1 for p in body.split(",")]
        except ValueError as e:
            raise PermutationError(f"Non-integer point in cycle '({body})'") from e
        for p in points:
            if p < 0 or p >= degree:
                raise PermutationError(f"Point {p + 1} outside 1..{degree}")
            if p in used:
                raise PermutationError(f"Point {p + 1} appears twice in '{text}'")
            used.add(p)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
    return Permutation(tuple(images))


def format_cycles(p: Permutation) -> str:
    """1-based cycle notation, identity printed as '()'."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles)


## Generator actions

@dataclass(frozen=True)
class GeneratorAction:
    """
    A homomorphism from the free group on k generators into
    Sym(degree), given by the image of each generator.
    """
    degree: int
    images: Tuple[Permutation, ...]

    def __post_init__(self):
        images = tuple(self.images)
        for index, perm in enumerate(images):
            if perm.degree != self.degree:
                raise PermutationError(
                    f"Generator {index} acts on {perm.degree} points, expected {self.degree}"
                )
        object.__setattr__(self, "images", images)
        forward = np.array([p.images for p in images], dtype=np.int64).reshape(len(images), self.degree)
        backward = np.empty_like(forward)
        for g in range(len(images)):
            backward[g, forward[g]] = np.arange(self.degree)
        object.__setattr__(self, "_forward", forward)
        object.__setattr__(self, "_backward", backward)

    @property
    def rank(self) -> int:
        return len(self.images)

    def trace(self, point: int, w: Word) -> int:
        """The image of one point under a word."""
        for g, s in w.letters:
            point = int(self._forward[g, point] if s == 1 else self._backward[g, point])
        return point


def action_from_cycles(texts: Sequence[str], degree: int) -> GeneratorAction:
    return GeneratorAction(degree, tuple(parse_cycles(t, degree) for t in texts))


def act_word(a: GeneratorAction, w: Word) -> Permutation:
    """
    The permutation a word induces, letters applied left to right.

    Raises:
        WordError: If w uses a generator the action does not know.
    """
    if w.max_generator() >= a.rank:
        raise WordError(f"Word uses generator {w.max_generator()} but the action has rank {a.rank}")
    points = np.arange(a.degree)
    for g, s in w.letters:
        points = (a._forward[g] if s == 1 else a._backward[g])[points]
    return _trusted(tuple(points.tolist()))


def compose_action(a: GeneratorAction, e: FreeEndomorphism) -> GeneratorAction:
    """The action x -> act_word(a, x^e), i.e. e followed by a."""
    if e.rank != a.rank:
        raise WordError(f"Endomorphism of rank {e.rank} does not match an action of rank {a.rank}")
    return GeneratorAction(a.degree, tuple(act_word(a, image) for image in e.images))


def actions_equal(a: GeneratorAction, b: GeneratorAction) -> bool:
    return a.degree == b.degree and a.images == b.images


def direct_sum(actions: Sequence[GeneratorAction]) -> GeneratorAction:
    """Componentwise action on the disjoint union of the point sets."""
    if not actions:
        raise PermutationError("direct_sum needs at least one action")
    rank = actions[0].rank
    if any(a.rank != rank for a in actions):
        raise PermutationError("Actions in a direct sum must share one alphabet")
    degree = sum(a.degree for a in actions)
    images = []
    for g in range(rank):
        combined: List[int] = []
        offset = 0
        for a in actions:
            combined.extend(offset + i for i in a.images[g].images)
            offset += a.degree
        images.append(_trusted(tuple(combined)))
    return GeneratorAction(degree, tuple(images))


def closure(a: GeneratorAction, cap: int = DEFAULT_CLOSURE_CAP) -> List[Permutation]:
    """
    All elements of the group generated by the generator images,
    in breadth-first order (layer, then generator order).

    Raises:
        ResourceLimitError: If the group has more than cap elements.
    """
    identity = Permutation.identity(a.degree)
    elements = [identity]
    seen = {identity.images}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in a.images:
            product = current * g
            if product.images not in seen:
                seen.add(product.images)
                elements.append(product)
                if len(elements) > cap:
                    raise ResourceLimitError(
                        f"Permutation group closure exceeded {cap} elements", limit=cap
                    )
                queue.append(product)
    return elements


## Factoring

@dataclass(frozen=True)
class PartialHom:
    """
    A homomorphism pi between image groups, recorded as pairs
    (source element, target element). The generator images
    pair up as source[i] -> target[i].
    """
    source: Tuple[Permutation, ...]
    target: Tuple[Permutation, ...]
    mapping: Tuple[Tuple[Permutation, Permutation], ...]

    def __call__(self, element: Permutation) -> Permutation:
        for s, t in self.mapping:
            if s == element:
                return t
        raise PermutationError("Element is not in the domain of the homomorphism")

    def is_bijective(self) -> bool:
        return len({t.images for _, t in self.mapping}) == len(self.mapping)


def factors_through(target: GeneratorAction,
                    through: GeneratorAction,
                    cap: int = DEFAULT_CLOSURE_CAP) -> Optional[PartialHom]:
    """
    Decide whether target = through followed by some homomorphism pi.

    The generator pairs (through image, target image) generate a
    subgroup of the direct product; pi exists exactly when no element
    of that subgroup pairs the identity with a non-identity.

    Returns:
        The witness pi, or None when no homomorphism exists.

    Raises:
        ResourceLimitError: If the pair closure exceeds cap.
    """
    if target.rank != through.rank:
        raise WordError("factors_through needs actions over the same alphabet")
    split = through.degree
    pairs = closure(direct_sum([through, target]), cap)
    mapping = []
    for element in pairs:
        left = _trusted(element.images[:split])
        right = _trusted(tuple(i - split for i in element.images[split:]))
        if left.is_identity() and not right.is_identity():
            return None
        mapping.append((left, right))
    return PartialHom(through.images, target.images, tuple(mapping))


## Primitivity and structure

class UnionFind:
    def __init__(self, points: Iterable[int]):
        self.parent = {x: x for x in points}
        self.size = {x: 1 for x in self.parent}

    def find(self, x: int) -> int:
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True


def minimal_block(a: GeneratorAction, beta: int) -> List[int]:
    """The smallest block of imprimitivity containing the points 0 and beta."""
    uf = UnionFind(range(a.degree))
    uf.union(0, beta)
    queue = deque([(0, beta)])
    while queue:
        x, y = queue.popleft()
        for perm in a.images:
            u, v = uf.find(perm[x]), uf.find(perm[y])
            if uf.union(u, v):
                queue.append((u, v))
    root = uf.find(0)
    return [p for p in range(a.degree) if uf.find(p) == root]


def is_primitive(a: GeneratorAction) -> bool:
    """
    Primitivity of a transitive action. Degree 1 counts as primitive;
    a finite-index subgroup is maximal iff its coset action is primitive.
    """
    return all(len(minimal_block(a, beta)) == a.degree for beta in range(1, a.degree))


@dataclass(frozen=True)
class GroupDescription:
    order: int
    abelian: bool
    dihedral: bool

    def serialize(self) -> Dict[str, object]:
        return {"order": self.order, "abelian": self.abelian, "dihedral": self.dihedral}


def describe_group(elements: Sequence[Permutation]) -> GroupDescription:
    """
    Order, commutativity and whether the group is dihedral of order
    2m >= 4: some element of order m has every element outside
    its cyclic subgroup an involution.
    """
    order = len(elements)
    abelian = all(p * q == q * p for i, p in enumerate(elements) for q in elements[i + 1:])
    dihedral = False
    if order >= 4 and order % 2 == 0:
        m = order // 2
        for r in elements:
            if r.order() != m:
                continue
            cyclic = set()
            power = Permutation.identity(r.degree)
            for _ in range(m):
                cyclic.add(power.images)
                power = power * r
            if all(p.images in cyclic or p.order() == 2 for p in elements):
                dihedral = True
                break
    return GroupDescription(order, abelian, dihedral)
