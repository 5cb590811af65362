"""
Abelian invariants of L-presented groups.

Abelianizing turns words into integer row vectors (exponent sums) and
substitutions into integer matrices acting on the right, so that
abelianize_word(w^e) = abelianize_word(w) * abelianize_endo(e). The
relation lattice of <X | Q | Phi | R> is then the span of the fixed
relators plus the smallest lattice containing the iterated relators and
closed under every substitution matrix, kept in Hermite form while it
is saturated. Its Smith form gives the abelian invariants.
"""
import logging
import warnings
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import hermite_normal_form as _hermite_normal_form
from sympy.matrices.normalforms import invariant_factors

from .config import EnumerationLimits
from .core.words import FinitePresentation, FreeEndomorphism, LPresentation, Word, abelian_exponents, instantiate

logger = logging.getLogger(__name__)

IntegerMatrix = List[List[int]]


## Setup the error banks

class LatticeError(Exception):
    """
    Raised when lattice saturation exceeds its round cap, or when
    truncated abelian invariants do not stabilize between depths.
    """
    pass


@dataclass(frozen=True)
class AbelianInvariants:
    """
    Z^rank x Z/d1 x Z/d2 x ... with d1 | d2 | ... and every di >= 2.
    Heuristic results come from truncated presentations.
    """
    rank: int
    torsion: Tuple[int, ...] = ()
    heuristic: bool = False

    def format(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        runs: List[List[int]] = []
        for d in self.torsion:
            if runs and runs[-1][0] == d:
                runs[-1][1] += 1
            else:
                runs.append([d, 1])
        for d, count in runs:
            parts.append(f"Z/{d}" if count == 1 else f"(Z/{d})^{count}")
        return " x ".join(parts) if parts else "1"

    def serialize(self) -> Dict[str, Any]:
        return {"rank": self.rank, "torsion": list(self.torsion), "heuristic": self.heuristic}


def abelianize_word(w: Word, k: int) -> List[int]:
    return abelian_exponents(w, k)


def abelianize_endo(e: FreeEndomorphism) -> IntegerMatrix:
    """Row i is the exponent-sum vector of the image of generator i."""
    return [abelianize_word(image, e.rank) for image in e.images]


def vector_times(v: Sequence[int], m: IntegerMatrix) -> List[int]:
    cols = len(m[0]) if m else 0
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(cols)]


def hermite_normal_form(rows: Sequence[Sequence[int]], k: Optional[int] = None) -> IntegerMatrix:
    """
    Canonical basis of the lattice spanned by rows, as the nonzero rows
    of the transposed column-style Hermite form. Two row sets span the
    same lattice exactly when their forms are equal.
    """
    width = k if k is not None else (len(rows[0]) if rows else 0)
    vectors = [list(map(int, row)) for row in rows if any(row)]
    if not vectors or width == 0:
        return []
    # sympy only reduces the bottom min(rows, columns) rows of the transpose.
    vectors += [[0] * width] * max(0, width - len(vectors))
    hermite = _hermite_normal_form(Matrix(vectors).T).T
    return [[int(v) for v in row] for row in hermite.tolist() if any(row)]


def invariant_lattice_closure(vectors: Sequence[Sequence[int]],
                              matrices: Sequence[IntegerMatrix],
                              k: Optional[int] = None,
                              max_rounds: int = 1000) -> IntegerMatrix:
    """
    The smallest sublattice of Z^k containing vectors and closed under
    v -> v * M for every matrix M, in Hermite form.

    Raises:
        LatticeError: If saturation needs more than max_rounds rounds.
    """
    if k is None:
        if vectors:
            k = len(vectors[0])
        elif matrices:
            k = len(matrices[0])
        else:
            return []
    basis = hermite_normal_form(vectors, k)
    for round_number in range(max_rounds):
        images = [vector_times(b, m) for b in basis for m in matrices]
        grown = hermite_normal_form(basis + images, k)
        if grown == basis:
            logger.debug("Lattice saturated after %d rounds", round_number + 1)
            return basis
        basis = grown
    raise LatticeError(f"Lattice closure did not saturate within {max_rounds} rounds")


def abelian_invariants_of_matrix(rows: Sequence[Sequence[int]], k: int) -> AbelianInvariants:
    """Invariants of Z^k modulo the row span of rows, via the Smith form."""
    nonzero = [list(map(int, row)) for row in rows if any(row)]
    if not nonzero or k == 0:
        return AbelianInvariants(k, ())
    factors = [abs(int(d)) for d in invariant_factors(Matrix(nonzero), domain=ZZ)]
    relations = [d for d in factors if d != 0]
    torsion = tuple(sorted(d for d in relations if d > 1))
    return AbelianInvariants(k - len(relations), torsion)


def finite_abelian_invariants(fp: FinitePresentation) -> AbelianInvariants:
    return abelian_invariants_of_matrix([abelianize_word(r, fp.rank) for r in fp.relators], fp.rank)


def abelian_invariants(lp: LPresentation,
                       depth: Optional[int] = None,
                       limits: Optional[EnumerationLimits] = None) -> AbelianInvariants:
    """
    Abelian invariants of an L-presented group.

    Without depth the relation lattice is computed exactly by closure.
    With depth the truncations at depth and depth + 1 are compared; the
    result is marked heuristic.

    Raises:
        LatticeError: If closure does not saturate, or the truncations
            disagree.
    """
    limits = limits if limits is not None else EnumerationLimits()
    k = lp.rank
    if depth is not None:
        first = finite_abelian_invariants(instantiate(lp, depth))
        second = finite_abelian_invariants(instantiate(lp, depth + 1))
        if first != second:
            raise LatticeError(
                f"Truncated invariants changed from {first.format()} at depth {depth} "
                f"to {second.format()} at depth {depth + 1}"
            )
        warnings.warn(
            f"Abelian invariants from truncation at depth {depth} are heuristic",
            UserWarning,
        )
        return AbelianInvariants(first.rank, first.torsion, heuristic=True)

    matrices = [abelianize_endo(e) for e in lp.substitutions]
    closed = invariant_lattice_closure(
        [abelianize_word(r, k) for r in lp.iterated], matrices, k, limits.max_saturation_rounds
    )
    fixed = [abelianize_word(q, k) for q in lp.fixed]
    return abelian_invariants_of_matrix(closed + fixed, k)
