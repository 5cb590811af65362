"""
Classification of a finite-index subgroup by how the substitutions
treat it, and the stabilizing subgroup and core as coset tables.

Leaf-invariance asks that every leaf of the tree V has the root action.
Weak leaf-invariance asks that every leaf action factors through the
root action. That second property is reported twice: over the leafs of
V, and over the leafs of the leadsto subtree. The subgroup presentation
for weakly leaf-invariant normal subgroups is built from the second.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

from ..config import EnumerationLimits
from ..core.perms import (
    GroupDescription, actions_equal, describe_group, factors_through, is_primitive,
)
from ..core.words import LPresentation, MonoidElement
from ..cosets.schreier import is_normal
from ..cosets.tables import CosetTable, kernel_table, orbit_table, quotient_elements, schreier_generator_words
from .trees import LeadstoTree, SubstitutionTree, iterating_endomorphisms, leadsto_subtree, phi_leafs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubgroupReport:
    """
    Everything classify_subgroup learns about one subgroup.

    Attributes:
        index: number of cosets
        normal: whether the subgroup is normal
        maximal: whether the coset action is primitive
        phi_invariant: every substitution maps the subgroup into itself
        leaf_invariant: every leaf of V has the root action
        weakly_leaf_invariant_v: every leaf of V factors through the root
        weakly_leaf_invariant_vtilde: every leaf of the leadsto subtree
            factors through the root
        v_size: number of nodes of V
        vtilde_size: number of nodes of the leadsto subtree
        phi_leafs: the leafs of V with the root action
        strategy: the strongest construction that applies
        quotient: the finite quotient, for normal subgroups
    """
    index: int
    normal: bool
    maximal: bool
    phi_invariant: bool
    leaf_invariant: bool
    weakly_leaf_invariant_v: bool
    weakly_leaf_invariant_vtilde: bool
    v_size: int
    vtilde_size: int
    phi_leafs: Tuple[MonoidElement, ...]
    strategy: str
    quotient: Optional[GroupDescription] = None
    tree: Optional[SubstitutionTree] = field(default=None, repr=False, compare=False)
    leadsto: Optional[LeadstoTree] = field(default=None, repr=False, compare=False)

    def serialize(self, names: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        return {
            "index": self.index,
            "normal": self.normal,
            "maximal": self.maximal,
            "phi_invariant": self.phi_invariant,
            "leaf_invariant": self.leaf_invariant,
            "weakly_leaf_invariant_v": self.weakly_leaf_invariant_v,
            "weakly_leaf_invariant_vtilde": self.weakly_leaf_invariant_vtilde,
            "v_size": self.v_size,
            "vtilde_size": self.vtilde_size,
            "phi_leafs": [leaf.format(names) for leaf in self.phi_leafs],
            "strategy": self.strategy,
            "quotient": self.quotient.serialize() if self.quotient is not None else None,
        }


def phi_invariant(tree: SubstitutionTree, table: CosetTable) -> bool:
    """Every node of V maps every Schreier generator back into the subgroup."""
    words = [w for _, _, w in schreier_generator_words(table)]
    for node_action in tree.node_actions():
        for w in words:
            if node_action.trace(0, w) != 0:
                return False
    return True


def leaf_invariant(tree: SubstitutionTree) -> bool:
    return all(actions_equal(leaf.action, tree.root_action) for leaf in tree.leafs)


def weakly_leaf_invariant(tree: SubstitutionTree, cap: int) -> bool:
    """Every leaf action factors through the root action."""
    if isinstance(tree, LeadstoTree):
        return all(leaf.resolution == tree.root for leaf in tree.leafs)
    return all(factors_through(leaf.action, tree.root_action, cap) is not None for leaf in tree.leafs)


def recommend_strategy(lp: LPresentation, normal: bool, invariant: bool,
                       leaf: bool, weak_vtilde: bool) -> str:
    if not lp.invariant and not lp.is_ascending:
        return "general"
    if normal and invariant:
        return "invariant-normal"
    if leaf:
        return "leaf-invariant"
    if normal and weak_vtilde:
        return "weakly-leaf-invariant-normal"
    return "general"


def classify_subgroup(lp: LPresentation,
                      table: CosetTable,
                      limits: Optional[EnumerationLimits] = None) -> SubgroupReport:
    """
    Classify a verified coset table of lp.

    Raises:
        ResourceLimitError: If a closure exceeds limits.closure_cap.
    """
    limits = limits if limits is not None else EnumerationLimits()
    cap = limits.closure_cap
    action = table.action
    tree = iterating_endomorphisms(lp.substitutions, action)
    leadsto = leadsto_subtree(tree, action, cap)

    normal = is_normal(table)
    invariant = phi_invariant(tree, table)
    leaf = leaf_invariant(tree)
    weak_v = weakly_leaf_invariant(tree, cap)
    weak_vtilde = weakly_leaf_invariant(leadsto, cap)
    quotient = describe_group(quotient_elements(table, cap)) if normal else None
    strategy = recommend_strategy(lp, normal, invariant, leaf, weak_vtilde)

    logger.debug(
        "Index %d: normal=%s phi_invariant=%s leaf_invariant=%s strategy=%s",
        table.index, normal, invariant, leaf, strategy,
    )
    return SubgroupReport(
        index=table.index,
        normal=normal,
        maximal=is_primitive(action),
        phi_invariant=invariant,
        leaf_invariant=leaf,
        weakly_leaf_invariant_v=weak_v,
        weakly_leaf_invariant_vtilde=weak_vtilde,
        v_size=len(tree.nodes),
        vtilde_size=len(leadsto.nodes),
        phi_leafs=tuple(phi_leafs(tree, action)),
        strategy=strategy,
        quotient=quotient,
        tree=tree,
        leadsto=leadsto,
    )


def stabilizing_subgroup(lp: LPresentation,
                         table: CosetTable,
                         limits: Optional[EnumerationLimits] = None) -> CosetTable:
    """
    The table of the largest subgroup of UK invariant under every
    substitution: the joint stabilizer of the base coset under all
    node actions of V.

    Raises:
        ResourceLimitError: If the orbit exceeds limits.max_cosets.
    """
    limits = limits if limits is not None else EnumerationLimits()
    tree = iterating_endomorphisms(lp.substitutions, table.action)
    return orbit_table([(a, 0) for a in tree.node_actions()], limits.max_cosets)


def stabilizing_core(lp: LPresentation,
                     table: CosetTable,
                     limits: Optional[EnumerationLimits] = None) -> CosetTable:
    """
    The table of the intersection of the kernels of all node actions of V,
    the largest invariant subgroup of UK that is normal.

    Raises:
        ResourceLimitError: If the image group exceeds limits.closure_cap.
    """
    limits = limits if limits is not None else EnumerationLimits()
    tree = iterating_endomorphisms(lp.substitutions, table.action)
    return kernel_table(tree.node_actions(), limits.closure_cap)

