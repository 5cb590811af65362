"""
The finite tree of substitutions that an action sees.

Given substitutions Phi and an action phi of the free group on the
cosets of a subgroup, iterating_endomorphisms grows the tree V of
monoid elements breadth-first: a candidate psi*delta (psi applied
first, then the node delta) becomes a node unless its action equals
the action of an earlier node, in which case it is a leaf resolved to
that node. There are finitely many actions into a finite symmetric
group, so the tree is finite.

leadsto_subtree grows the same tree but closes a branch as soon as
the candidate's action factors through an earlier node's action.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..core.perms import (
    DEFAULT_CLOSURE_CAP, GeneratorAction, PartialHom, actions_equal,
    compose_action, factors_through,
)
from ..core.words import FreeEndomorphism, MonoidElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreeLeaf:
    """
    A candidate that did not become a node.

    Attributes:
        element: the monoid element psi*delta
        resolution: the node it was resolved to
        action: the action of element
        witness: for leadsto trees, the homomorphism through which the
            element's action factors over the resolution's action
    """
    element: MonoidElement
    resolution: MonoidElement
    action: GeneratorAction
    witness: Optional[PartialHom] = None


@dataclass(frozen=True, eq=False)
class SubstitutionTree:
    """
    Nodes in ascending order with their actions, the leafs, and for
    every (substitution index, node) pair the node the child resolves to.
    """
    nodes: Tuple[MonoidElement, ...]
    actions: Dict[MonoidElement, GeneratorAction]
    leafs: Tuple[TreeLeaf, ...]
    edges: Dict[Tuple[int, MonoidElement], MonoidElement] = field(repr=False)
    substitutions: Tuple[FreeEndomorphism, ...] = field(default=(), repr=False)

    @property
    def root(self) -> MonoidElement:
        return self.nodes[0]

    @property
    def root_action(self) -> GeneratorAction:
        return self.actions[self.root]

    @property
    def depth(self) -> int:
        return max(len(node) for node in self.nodes)

    def node_actions(self) -> List[GeneratorAction]:
        return [self.actions[node] for node in self.nodes]

    def resolve(self, element: MonoidElement) -> MonoidElement:
        """
        Walk an arbitrary monoid element down the tree. Factors are read
        from the right, since a child prepends its substitution. For
        trees built by iterating_endomorphisms the returned node has the
        same action as element.
        """
        node = self.root
        for f in reversed(element.factors):
            node = self.edges[(f, node)]
        return node


@dataclass(frozen=True, eq=False)
class LeadstoTree(SubstitutionTree):
    """A SubstitutionTree whose leafs resolve by factoring, with witnesses."""
    pass


Matcher = Callable[[GeneratorAction, List[MonoidElement], Dict[MonoidElement, GeneratorAction]],
                   Tuple[Optional[MonoidElement], Optional[PartialHom]]]


def _grow(phi: Sequence[FreeEndomorphism], action: GeneratorAction, match: Matcher):
    root = MonoidElement()
    nodes = [root]
    actions = {root: action}
    leafs: List[TreeLeaf] = []
    edges: Dict[Tuple[int, MonoidElement], MonoidElement] = {}

    # FIFO with prepended children visits candidates in ascending order.
    queue = deque((j, root) for j in range(len(phi)))
    while queue:
        j, parent = queue.popleft()
        candidate = MonoidElement((j,) + parent.factors)
        candidate_action = compose_action(actions[parent], phi[j])
        resolution, witness = match(candidate_action, nodes, actions)
        if resolution is not None:
            leafs.append(TreeLeaf(candidate, resolution, candidate_action, witness))
            edges[(j, parent)] = resolution
            continue
        nodes.append(candidate)
        actions[candidate] = candidate_action
        edges[(j, parent)] = candidate
        queue.extend((i, candidate) for i in range(len(phi)))
    return tuple(nodes), actions, tuple(leafs), edges


def iterating_endomorphisms(phi: Sequence[FreeEndomorphism], action: GeneratorAction) -> SubstitutionTree:
    """
    Compute the tree V: monoid elements with pairwise distinct actions,
    and the leafs where a candidate repeats an earlier node's action.

    Args:
        phi: the substitutions, in declaration order
        action: the coset action of the subgroup

    Returns:
        The SubstitutionTree with V as its node set.
    """
    def equal_action(candidate_action, nodes, actions):
        for node in nodes:
            if actions_equal(candidate_action, actions[node]):
                return node, None
        return None, None

    nodes, actions, leafs, edges = _grow(phi, action, equal_action)
    logger.debug("Substitution tree has %d nodes and %d leafs", len(nodes), len(leafs))
    return SubstitutionTree(nodes, actions, leafs, edges, tuple(phi))


def phi_leafs(tree: SubstitutionTree, action: GeneratorAction) -> List[MonoidElement]:
    """The leafs whose action equals the root action."""
    return [leaf.element for leaf in tree.leafs if actions_equal(leaf.action, action)]


def leadsto_subtree(tree: SubstitutionTree,
                    action: GeneratorAction,
                    cap: int = DEFAULT_CLOSURE_CAP) -> LeadstoTree:
    """
    Regrow the tree, closing a branch when the candidate's action factors
    through some earlier node's action. The leaf resolves to the first
    such node in ascending order and stores the witness.

    Args:
        tree: the tree V, which supplies the substitutions
        action: the coset action of the subgroup
        cap: closure element cap for the factoring test

    Raises:
        ResourceLimitError: If a factoring test exceeds cap.
    """
    def factoring(candidate_action, nodes, actions):
        for node in nodes:
            witness = factors_through(candidate_action, actions[node], cap)
            if witness is not None:
                return node, witness
        return None, None

    nodes, actions, leafs, edges = _grow(tree.substitutions, action, factoring)
    logger.debug("Leadsto subtree has %d nodes and %d leafs", len(nodes), len(leafs))
    return LeadstoTree(nodes, actions, leafs, edges, tree.substitutions)
