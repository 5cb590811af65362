"""
Schreier transversals, Schreier generators and Reidemeister rewriting.

For a transversal T and generator x, the Schreier generator attached
to (t, x) is t x (rep(t x))^-1. The nontrivial ones freely generate
the subgroup; they are numbered x1, x2, ... in (transversal position,
generator) order. The rewriting map sends a subgroup member, read as
a path through the coset table, to the word in Schreier generators
met along the way.
"""
import textwrap
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.words import (
    FreeEndomorphism, GeneratorSymbol, Word, apply_endo, generator,
    inverse, make_alphabet, multiply, reduce,
)
from .tables import CosetTable, contains, schreier_generator_words, trace, transversal


## Setup the error banks

class NotAMemberError(Exception):
    """Raised when rewriting a word that does not lie in the subgroup."""
    pass


class NotInvariantError(Exception):
    """
    Raised when an endomorphism does not map the subgroup into
    itself. Names the Schreier generator whose image escaped.
    """
    def __init__(self, message: str, generator: str):
        msg = f"""\
        The endomorphism does not restrict to the subgroup.
        The image of Schreier generator "{generator}" leaves the subgroup.
        The error is:
        """
        msg = textwrap.dedent(msg) + "\n" + message
        super().__init__(msg)
        self.generator = generator


class NormalityRequiredError(Exception):
    """Raised when conjugation substitutions are requested for a non-normal subgroup."""
    pass


class TransversalError(Exception):
    """Raised when an explicit transversal is not a prefix-closed set of coset representatives."""
    pass


@dataclass(frozen=True, eq=False)
class SchreierData:
    """
    A Schreier transversal of a coset table together with the
    subgroup's free basis of nontrivial Schreier generators.

    Attributes:
        table: the coset table
        transversal: representative word of each coset, indexed by coset
        order: cosets in transversal order, which fixes the numbering of Y
        generators: the subgroup alphabet Y
        definitions: the (coset, generator) pair behind each element of Y
        words: the definition word t x (rep(t x))^-1 of each element of Y
    """
    table: CosetTable
    transversal: Tuple[Word, ...]
    order: Tuple[int, ...]
    generators: Tuple[GeneratorSymbol, ...]
    definitions: Tuple[Tuple[int, int], ...]
    words: Tuple[Word, ...]
    lookup: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> List[str]:
        return [symbol.name for symbol in self.generators]

    def transversal_words(self) -> List[Word]:
        """Representatives in transversal order."""
        return [self.transversal[c] for c in self.order]


def _validate_transversal(table: CosetTable, words: Sequence[Word]) -> List[int]:
    if len(words) != table.degree:
        raise TransversalError(
            f"A transversal needs {table.degree} words, got {len(words)}"
        )
    cosets = [trace(table, w) for w in words]
    if sorted(cosets) != list(range(table.degree)):
        raise TransversalError("Transversal words do not represent every coset exactly once")
    present = set(words)
    for w in words:
        if w.is_identity():
            continue
        if Word(w.letters[:-1]) not in present:
            raise TransversalError("Transversal is not prefix-closed")
    if Word() not in present:
        raise TransversalError("Transversal must contain the empty word")
    return cosets


def schreier_data(table: CosetTable,
                  transversal_words: Optional[Sequence[Word]] = None,
                  prefix: str = "x") -> SchreierData:
    """
    Build the Schreier data of a table.

    Args:
        table: a closed transitive coset table
        transversal_words: an optional prefix-closed transversal, one word
            per coset; its order fixes the numbering of the generators.
            Defaults to the breadth-first transversal.
        prefix: name prefix of the subgroup generators

    Raises:
        TransversalError: If an explicit transversal is invalid.
    """
    if transversal_words is None:
        reps = transversal(table)
        order = list(range(table.degree))
    else:
        order = _validate_transversal(table, transversal_words)
        reps = [Word()] * table.degree
        for c, w in zip(order, transversal_words):
            reps[c] = w

    triples = []
    for c in order:
        for g, perm in enumerate(table.action.images):
            word = multiply(reps[c], generator(g), inverse(reps[perm[c]]))
            if not word.is_identity():
                triples.append((c, g, word))

    lookup = {(c, g): i for i, (c, g, _) in enumerate(triples)}
    return SchreierData(
        table=table,
        transversal=tuple(reps),
        order=tuple(order),
        generators=make_alphabet(f"{prefix}{i + 1}" for i in range(len(triples))),
        definitions=tuple((c, g) for c, g, _ in triples),
        words=tuple(w for _, _, w in triples),
        lookup=lookup,
    )


def rewrite(sd: SchreierData, w: Word) -> Word:
    """
    Reidemeister rewriting of a subgroup member into the Schreier generators.

    Raises:
        NotAMemberError: If w is not in the subgroup.
    """
    if not contains(sd.table, w):
        raise NotAMemberError("Only members of the subgroup can be rewritten")
    forward = sd.table.forward
    backward = sd.table.backward
    letters = []
    c = 0
    for g, s in w.letters:
        if s == 1:
            y = sd.lookup.get((c, g))
            if y is not None:
                letters.append((y, 1))
            c = int(forward[g, c])
        else:
            c = int(backward[g, c])
            y = sd.lookup.get((c, g))
            if y is not None:
                letters.append((y, -1))
    return reduce(letters)


def expand(sd: SchreierData, w: Word) -> Word:
    """Substitute each Schreier generator by its definition word."""
    letters = []
    for y, s in w.letters:
        word = sd.words[y]
        letters.extend(word.letters if s == 1 else inverse(word).letters)
    return reduce(letters)


def is_normal(table: CosetTable) -> bool:
    """Normality: every Schreier generator fixes every coset."""
    for _, _, word in schreier_generator_words(table):
        for c in range(table.degree):
            if trace(table, word, c) != c:
                return False
    return True


def induced_endomorphism(sd: SchreierData, e: FreeEndomorphism) -> FreeEndomorphism:
    """
    The endomorphism of the subgroup's free group induced by e, sending
    each Schreier generator with definition word u to rewrite(u^e).

    Raises:
        NotInvariantError: If some u^e leaves the subgroup.
    """
    images = []
    for symbol, u in zip(sd.generators, sd.words):
        image = apply_endo(e, u)
        if not contains(sd.table, image):
            raise NotInvariantError(
                f"Its image lands in coset {trace(sd.table, image) + 1}, not the base coset",
                generator=symbol.name,
            )
        images.append(rewrite(sd, image))
    return FreeEndomorphism(tuple(images))


def conjugation_endo(sd: SchreierData, t: Word) -> FreeEndomorphism:
    """
    The endomorphism induced by g -> t g t^-1 on a normal subgroup.

    Raises:
        NormalityRequiredError: If the table is not normal.
    """
    if not is_normal(sd.table):
        raise NormalityRequiredError("Conjugation only restricts to a normal subgroup")
    t_inv = inverse(t)
    return FreeEndomorphism(tuple(rewrite(sd, multiply(t, u, t_inv)) for u in sd.words))
