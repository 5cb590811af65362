"""
Free-group words, endomorphisms of free groups, and the
finite L-presentation data model.

Every word in the package is stored freely reduced. Letters
are (generator index, sign) pairs, so a word does not know the
names of its generators; names live on the alphabet of whatever
presentation the word belongs to.

Composition convention: endomorphisms act on the right, and
compose(alpha, beta) applies alpha FIRST, so that
w^(alpha beta) = (w^alpha)^beta. Every other module builds
on this convention.
"""
from dataclasses import dataclass, field
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

Letter = Tuple[int, int]


## Setup the error banks

class WordError(Exception):
    """
    Raised when a word, endomorphism, or alphabet is malformed,
    or when objects over different alphabets are mixed.
    """
    pass


class InvarianceRequiredError(Exception):
    """
    Raised when an operation that needs an invariant
    L-presentation receives one that is not asserted invariant.
    """
    pass


## Words

@dataclass(frozen=True)
class GeneratorSymbol:
    """A named generator, with its position in the declaring alphabet."""
    name: str
    index: int


def make_alphabet(names: Iterable[str]) -> Tuple[GeneratorSymbol, ...]:
    """
    Build an alphabet from generator names in declaration order.

    Raises:
        WordError: If a name is empty or repeated.
    """
    alphabet = []
    seen = set()
    for index, name in enumerate(names):
        if not isinstance(name, str) or not name:
            raise WordError(f"Generator {index} has an empty or non-string name")
        if name in seen:
            raise WordError(f"Generator name '{name}' is declared twice")
        seen.add(name)
        alphabet.append(GeneratorSymbol(name, index))
    return tuple(alphabet)


def _is_reduced(letters: Sequence[Letter]) -> bool:
    for (g, s), (h, t) in zip(letters, letters[1:]):
        if g == h and s == -t:
            return False
    return True


@dataclass(frozen=True)
class Word:
    """
    A freely reduced word. The empty word is the identity.

    Construct words through reduce() or the helpers in this
    module; the constructor refuses unreduced letter sequences.
    """
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(g), int(s)) for g, s in self.letters)
        for g, s in letters:
            if g < 0 or s not in (1, -1):
                raise WordError(f"Malformed letter ({g}, {s})")
        if not _is_reduced(letters):
            raise WordError("Word is not freely reduced; use reduce()")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def is_identity(self) -> bool:
        return not self.letters

    def max_generator(self) -> int:
        """Largest generator index used, or -1 for the identity."""
        return max((g for g, _ in self.letters), default=-1)


def _trusted(letters: Tuple[Letter, ...]) -> Word:
    # Skips validation; callers guarantee a reduced, well-formed tuple.
    word = object.__new__(Word)
    object.__setattr__(word, "letters", letters)
    return word


IDENTITY = Word()


def reduce(letters: Iterable[Letter], rank: Optional[int] = None) -> Word:
    """
    Freely reduce a raw letter sequence.

    Args:
        letters: (generator index, sign) pairs
        rank: If given, the alphabet size the letters must fit.

    Returns:
        The unique freely reduced word equal to the input.

    Raises:
        WordError: If a letter is malformed or outside the alphabet.
    """
    stack: List[Letter] = []
    for g, s in letters:
        if g < 0 or (rank is not None and g >= rank):
            raise WordError(f"Unknown generator index {g} for an alphabet of size {rank}")
        if s not in (1, -1):
            raise WordError(f"Letter sign must be +1 or -1, got {s}")
        if stack and stack[-1][0] == g and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((g, s))
    return _trusted(tuple(stack))


def generator(index: int, sign: int = 1) -> Word:
    """The one-letter word x_index^sign."""
    return reduce([(index, sign)])


def inverse(w: Word) -> Word:
    return _trusted(tuple((g, -s) for g, s in reversed(w.letters)))


def multiply(*words: Word) -> Word:
    letters: List[Letter] = []
    for w in words:
        letters.extend(w.letters)
    return reduce(letters)


def power(w: Word, n: int) -> Word:
    if n < 0:
        return power(inverse(w), -n)
    return multiply(*([w] * n))


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u^-1 v^-1 u v"""
    return multiply(inverse(u), inverse(v), u, v)


def conjugate(u: Word, v: Word) -> Word:
    """u^v = v^-1 u v"""
    return multiply(inverse(v), u, v)


def syllables(w: Word) -> List[Tuple[int, int]]:
    """Group a word into maximal powers, as (generator, exponent) pairs."""
    result: List[Tuple[int, int]] = []
    for g, s in w.letters:
        if result and result[-1][0] == g and (result[-1][1] > 0) == (s > 0):
            result[-1] = (g, result[-1][1] + s)
        else:
            result.append((g, s))
    return result


def format_word(w: Word, alphabet: Sequence[GeneratorSymbol]) -> str:
    """
    Render a word in the presentation-file word grammar, for
    example 'a^-1 b^2 a'. The identity renders as '1'.
    """
    if w.is_identity():
        return "1"
    parts = []
    for g, exponent in syllables(w):
        if g >= len(alphabet):
            raise WordError(f"Generator index {g} outside alphabet of size {len(alphabet)}")
        name = alphabet[g].name
        parts.append(name if exponent == 1 else f"{name}^{exponent}")
    return " ".join(parts)


def abelian_exponents(w: Word, rank: int) -> List[int]:
    """Exponent sum of each generator."""
    sums = [0] * rank
    for g, s in w.letters:
        if g >= rank:
            raise WordError(f"Generator index {g} outside alphabet of size {rank}")
        sums[g] += s
    return sums


## Endomorphisms

@dataclass(frozen=True)
class FreeEndomorphism:
    """An endomorphism of a free group, given by the image of each generator."""
    images: Tuple[Word, ...]

    def __post_init__(self):
        images = tuple(self.images)
        rank = len(images)
        for index, image in enumerate(images):
            if not isinstance(image, Word):
                raise WordError(f"Image of generator {index} is not a Word")
            if image.max_generator() >= rank:
                raise WordError(
                    f"Image of generator {index} uses generator {image.max_generator()}, "
                    f"outside an alphabet of size {rank}"
                )
        object.__setattr__(self, "images", images)

    @property
    def rank(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(image == generator(i) for i, image in enumerate(self.images))


def identity_endomorphism(rank: int) -> FreeEndomorphism:
    return FreeEndomorphism(tuple(generator(i) for i in range(rank)))


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """
    Replace each letter of w by its image, inverting images of
    negative letters, and reduce. The images may live over any
    alphabet.
    """
    letters: List[Letter] = []
    for g, s in w.letters:
        if g >= len(images):
            raise WordError(f"No image given for generator {g}")
        image = images[g].letters
        if s == 1:
            letters.extend(image)
        else:
            letters.extend((h, -t) for h, t in reversed(image))
    return reduce(letters)


def apply_endo(e: FreeEndomorphism, w: Word) -> Word:
    """
    Apply an endomorphism to a word.

    Raises:
        WordError: If w uses generators outside e's alphabet.
    """
    if w.max_generator() >= e.rank:
        raise WordError(
            f"Word uses generator {w.max_generator()} but the endomorphism has rank {e.rank}"
        )
    return substitute(w, e.images)


def compose(first: FreeEndomorphism, second: FreeEndomorphism) -> FreeEndomorphism:
    """
    The endomorphism applying first, then second:
    apply_endo(compose(a, b), w) == apply_endo(b, apply_endo(a, w)).
    """
    if first.rank != second.rank:
        raise WordError(f"Cannot compose endomorphisms of rank {first.rank} and {second.rank}")
    return FreeEndomorphism(tuple(apply_endo(second, image) for image in first.images))


## Monoid elements

@dataclass(frozen=True)
class MonoidElement:
    """
    An element of the free monoid over the substitutions, stored
    as indices into the substitution list. The leftmost factor is
    applied first. The empty sequence is the identity.
    """
    factors: Tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        # Length first, then lexicographic read from the right.
        return len(self.factors), tuple(reversed(self.factors))

    def __lt__(self, other: "MonoidElement") -> bool:
        return self.sort_key < other.sort_key

    def __le__(self, other: "MonoidElement") -> bool:
        return self.sort_key <= other.sort_key

    def __gt__(self, other: "MonoidElement") -> bool:
        return self.sort_key > other.sort_key

    def __ge__(self, other: "MonoidElement") -> bool:
        return self.sort_key >= other.sort_key

    def then(self, other: "MonoidElement") -> "MonoidElement":
        """The element applying self first, then other."""
        return MonoidElement(self.factors + other.factors)

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        """Render as e.g. 'sigma^3' or 'phi1*phi2' (left factor first)."""
        if not self.factors:
            return "id"
        parts = []
        runs: List[List[int]] = []
        for f in self.factors:
            if runs and runs[-1][0] == f:
                runs[-1][1] += 1
            else:
                runs.append([f, 1])
        for f, count in runs:
            name = names[f] if names is not None and f < len(names) else f"phi{f + 1}"
            parts.append(name if count == 1 else f"{name}^{count}")
        return "*".join(parts)


def monoid_endomorphism(phi: Sequence[FreeEndomorphism],
                        element: MonoidElement,
                        rank: Optional[int] = None) -> FreeEndomorphism:
    """Materialize a monoid element as a free endomorphism."""
    if rank is None:
        if not phi:
            raise WordError("Cannot infer the rank of an empty substitution list")
        rank = phi[0].rank
    result = identity_endomorphism(rank)
    for f in element.factors:
        if f >= len(phi):
            raise WordError(f"Monoid element refers to substitution {f}, only {len(phi)} exist")
        result = compose(result, phi[f])
    return result


## Presentations

@dataclass(frozen=True)
class FinitePresentation:
    """A finite group presentation <X | K>."""
    alphabet: Tuple[GeneratorSymbol, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "relators", tuple(self.relators))
        for relator in self.relators:
            if relator.max_generator() >= len(self.alphabet):
                raise WordError("Relator uses a generator outside the alphabet")

    @property
    def rank(self) -> int:
        return len(self.alphabet)

    @property
    def names(self) -> List[str]:
        return [symbol.name for symbol in self.alphabet]


@dataclass(frozen=True)
class LPresentation:
    """
    A finite L-presentation <X | Q | Phi | R>.

    The invariant flag asserts that every substitution induces an
    endomorphism of the presented group. Substitution names are
    display labels only.
    """
    alphabet: Tuple[GeneratorSymbol, ...]
    fixed: Tuple[Word, ...] = ()
    substitutions: Tuple[FreeEndomorphism, ...] = ()
    iterated: Tuple[Word, ...] = ()
    invariant: bool = False
    substitution_names: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        for name in ("alphabet", "fixed", "substitutions", "iterated", "substitution_names"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        rank = len(self.alphabet)
        for word in self.fixed + self.iterated:
            if word.max_generator() >= rank:
                raise WordError("Relator uses a generator outside the alphabet")
        for index, endo in enumerate(self.substitutions):
            if endo.rank != rank:
                raise WordError(
                    f"Substitution {index} has rank {endo.rank}, alphabet has {rank} generators"
                )
        if not self.substitution_names:
            names = tuple(f"phi{i + 1}" for i in range(len(self.substitutions)))
            object.__setattr__(self, "substitution_names", names)
        if len(self.substitution_names) != len(self.substitutions):
            raise WordError("Substitution names do not match the substitutions")
        if len(set(self.substitution_names)) != len(self.substitution_names):
            raise WordError("Substitution names must be distinct")

    @property
    def rank(self) -> int:
        return len(self.alphabet)

    @property
    def names(self) -> List[str]:
        return [symbol.name for symbol in self.alphabet]

    @property
    def is_ascending(self) -> bool:
        return not self.fixed


## Constructions

def as_ascending(lp: LPresentation) -> LPresentation:
    """
    The ascending form <X | {} | Phi | Q u R> of an invariant L-presentation.

    Raises:
        InvarianceRequiredError: If lp is not asserted invariant.
    """
    if lp.is_ascending:
        return lp
    if not lp.invariant:
        raise InvarianceRequiredError(
            "Only an invariant L-presentation may move its fixed relators into the iterated ones"
        )
    return LPresentation(
        alphabet=lp.alphabet,
        fixed=(),
        substitutions=lp.substitutions,
        iterated=_dedupe(lp.fixed + lp.iterated),
        invariant=True,
        substitution_names=lp.substitution_names,
    )


def _dedupe(words: Iterable[Word]) -> Tuple[Word, ...]:
    seen = set()
    result = []
    for w in words:
        if w not in seen:
            seen.add(w)
            result.append(w)
    return tuple(result)


def monoid_levels(count: int, depth: int) -> List[List[MonoidElement]]:
    """
    All monoid elements of length at most depth, grouped by length,
    each group in ascending length-then-right-lexicographic order.
    """
    levels = [[MonoidElement()]]
    for _ in range(depth):
        previous = levels[-1]
        levels.append([MonoidElement(sigma.factors + (j,)) for j in range(count) for sigma in previous])
    return levels


def instantiate(lp: LPresentation, depth: int) -> FinitePresentation:
    """
    Truncate an L-presentation to the finite presentation with relators
    Q together with r^sigma for every r in R and every sigma of length at
    most depth. Exact duplicates are removed, first occurrence wins.
    """
    if depth < 0:
        raise WordError(f"Instantiation depth must be non-negative, got {depth}")
    relators: List[Word] = list(lp.fixed)
    level = [(MonoidElement(), list(lp.iterated))]
    relators.extend(lp.iterated)
    for _ in range(depth):
        if not lp.substitutions:
            break
        next_level = []
        for j, endo in enumerate(lp.substitutions):
            for sigma, words in level:
                images = [apply_endo(endo, w) for w in words]
                next_level.append((MonoidElement(sigma.factors + (j,)), images))
                relators.extend(images)
        level = next_level
    return FinitePresentation(lp.alphabet, _dedupe(w for w in relators if not w.is_identity()))


def _fresh_name(name: str, taken: set) -> str:
    if name not in taken:
        return name
    suffix = 1
    while f"{name}{suffix}" in taken:
        suffix += 1
    return f"{name}{suffix}"


def _shift(w: Word, offset: int) -> Word:
    return Word(tuple((g + offset, s) for g, s in w.letters))


def _rename_all(names: Sequence[str], taken: set) -> List[str]:
    result = []
    for name in names:
        fresh = _fresh_name(name, taken)
        taken.add(fresh)
        result.append(fresh)
    return result


def _extend_endo(endo: FreeEndomorphism, offset: int, total: int) -> FreeEndomorphism:
    """Embed an endomorphism of generators [offset, offset+rank) into rank total, fixing the rest."""
    images = [generator(i) for i in range(total)]
    for i, image in enumerate(endo.images):
        images[offset + i] = _shift(image, offset)
    return FreeEndomorphism(tuple(images))


def free_product(g: LPresentation, h: LPresentation) -> LPresentation:
    """
    The free product of two L-presented groups. Generators of h that
    collide with g's are renamed with the smallest free numeric suffix.
    """
    taken = set(g.names)
    h_names = _rename_all(h.names, taken)
    alphabet = make_alphabet(g.names + h_names)
    total = len(alphabet)
    offset = g.rank

    substitutions = tuple(_extend_endo(e, 0, total) for e in g.substitutions)
    substitutions += tuple(_extend_endo(e, offset, total) for e in h.substitutions)
    taken_subs = set(g.substitution_names)
    sub_names = tuple(g.substitution_names) + tuple(_rename_all(h.substitution_names, taken_subs))

    fixed = g.fixed + tuple(_shift(w, offset) for w in h.fixed)
    iterated = g.iterated + tuple(_shift(w, offset) for w in h.iterated)
    invariant = g.invariant and h.invariant
    if invariant:
        fixed, iterated = (), _dedupe(fixed + iterated)
    return LPresentation(alphabet, _dedupe(fixed), substitutions, _dedupe(iterated), invariant, sub_names)


def finite_extension(g: LPresentation,
                     h: FinitePresentation,
                     lifts: Mapping[Word, Word],
                     action: Mapping[Tuple[int, int], Word]) -> LPresentation:
    """
    An L-presentation of a group K with normal subgroup G and
    finitely presented quotient H = K/G.

    Args:
        g: L-presentation of the normal subgroup, over X
        h: finite presentation of the quotient, over Y
        lifts: for each relator r of h, the element g_r of G (a word
            over X) that r equals in K
        action: for each (x, t) with x in X and t in Y, the element
            g_(x,t) of G that the conjugate x^t equals in K

    Returns:
        <X u Y | Q u {r g_r^-1} u {x^t g_(x,t)^-1} | Phi | R>, with every
        substitution fixing the generators of Y. The output is never
        asserted invariant.

    Raises:
        WordError: If lifts or action are incomplete.
    """
    if not h.alphabet and not h.relators:
        return g
    taken = set(g.names)
    h_names = _rename_all(h.names, taken)
    alphabet = make_alphabet(g.names + h_names)
    total = len(alphabet)
    offset = g.rank

    fixed: List[Word] = list(g.fixed)
    for relator in h.relators:
        if relator not in lifts:
            raise WordError("Missing lift for a relator of the quotient presentation")
        lift = lifts[relator]
        if lift.max_generator() >= g.rank:
            raise WordError("A relator lift must be a word over the normal subgroup's generators")
        fixed.append(multiply(_shift(relator, offset), inverse(lift)))
    for x in range(g.rank):
        for t in range(h.rank):
            if (x, t) not in action:
                raise WordError(
                    f"Missing conjugation action of quotient generator {h_names[t]} on {g.names[x]}"
                )
            image = action[(x, t)]
            if image.max_generator() >= g.rank:
                raise WordError("A conjugation action image must be a word over the normal subgroup's generators")
            x_t = conjugate(generator(x), generator(offset + t))
            fixed.append(multiply(x_t, inverse(image)))

    substitutions = tuple(_extend_endo(e, 0, total) for e in g.substitutions)
    return LPresentation(
        alphabet=alphabet,
        fixed=tuple(fixed),
        substitutions=substitutions,
        iterated=g.iterated,
        invariant=False,
        substitution_names=g.substitution_names,
    )


def factor_lpres(g: LPresentation,
                 normal_gens: Sequence[Word],
                 phi_invariant: bool = False) -> LPresentation:
    """
    The quotient G/N, N the normal closure of normal_gens.

    With phi_invariant set and g invariant, the result is the
    ascending presentation <X | {} | Phi | Q u R u normal_gens>.
    """
    extra = tuple(w for w in normal_gens if not w.is_identity())
    for w in extra:
        if w.max_generator() >= g.rank:
            raise WordError("Normal generator uses a generator outside the alphabet")
    if not extra:
        return g
    if g.invariant and phi_invariant:
        return LPresentation(
            alphabet=g.alphabet,
            fixed=(),
            substitutions=g.substitutions,
            iterated=_dedupe(g.fixed + g.iterated + extra),
            invariant=True,
            substitution_names=g.substitution_names,
        )
    return LPresentation(
        alphabet=g.alphabet,
        fixed=_dedupe(g.fixed + extra),
        substitutions=g.substitutions,
        iterated=g.iterated,
        invariant=False,
        substitution_names=g.substitution_names,
    )

