"""
Presentation File Parser

Reads and writes the line-oriented presentation format:

    # lpres v1
    generators: a b
    fixed: a^2
    iterated: [a, a^b]
    endo sigma: a -> b^2, b -> a
    subgroup U: a, b a b^-1, b^3
    invariant: yes

Words are products of generators by juxtaposition (or '*'), with powers
'^n' and '^-n', commutators [u, v] = u^-1 v^-1 u v, conjugates
u^v = v^-1 u v, parentheses, and '1' for the identity. Everything after
'#' is a comment. Generators an endo line does not mention are fixed.
"""
import re
import textwrap
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.words import (
    FreeEndomorphism, GeneratorSymbol, LPresentation, Word, WordError, commutator,
    conjugate, format_word, generator, make_alphabet, multiply, power,
)

FORMAT_VERSION = 1


class PresentationParseError(Exception):
    """Exception raised when a presentation file cannot be parsed."""
    def __init__(self, message: str, line: int, column: int = 0):
        msg = f"""\
        Could not parse the presentation file.
        This occurred on line {line}, column {column}.
        The error is:
        """
        msg = textwrap.dedent(msg) + "\n" + message
        super().__init__(msg)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class PresentationFile:
    """
    A parsed presentation file.

    Attributes:
        presentation: the L-presentation
        subgroups: named lists of subgroup generators, in file order
    """
    presentation: LPresentation
    subgroups: Dict[str, Tuple[Word, ...]] = field(default_factory=dict)

    def subgroup(self, name: str) -> Tuple[Word, ...]:
        if name not in self.subgroups:
            known = ", ".join(self.subgroups) or "none"
            raise KeyError(f"No subgroup named '{name}' (known: {known})")
        return self.subgroups[name]


## Tokens

_TOKEN = re.compile(r"(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<arrow>->)|(?P<sym>[\^\-()\[\],*])")


@dataclass
class _Token:
    kind: str
    text: str
    column: int


def _tokenize(text: str, line: int, offset: int) -> List[_Token]:
    """Columns are 1-based and count from the start of the line."""
    tokens = []
    position = 0
    while position < len(text):
        if text[position].isspace():
            position += 1
            continue
        match = _TOKEN.match(text, position)
        if match is None:
            raise PresentationParseError(f"Unexpected character '{text[position]}'", line, offset + position + 1)
        tokens.append(_Token(match.lastgroup, match.group(), offset + position + 1))
        position = match.end()
    return tokens


class _WordParser:
    """Recursive descent over the tokens of one right-hand side."""

    def __init__(self, tokens: List[_Token], alphabet: Dict[str, int], line: int, end_column: int):
        self.tokens = tokens
        self.alphabet = alphabet
        self.line = line
        self.end_column = end_column
        self.index = 0

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def fail(self, message: str):
        token = self.peek()
        column = token.column if token is not None else self.end_column
        raise PresentationParseError(message, self.line, column)

    def take(self, text: str) -> _Token:
        token = self.peek()
        if token is None or token.text != text:
            self.fail(f"Expected '{text}'")
        self.index += 1
        return token

    def at_end(self) -> bool:
        return self.index >= len(self.tokens)

    def word(self) -> Word:
        factors = [self.term()]
        while True:
            token = self.peek()
            if token is None or token.text in (",", ")", "]", "->"):
                break
            if token.text == "*":
                self.index += 1
            factors.append(self.term())
        return multiply(*factors)

    def term(self) -> Word:
        base = self.atom()
        while self.peek() is not None and self.peek().text == "^":
            self.index += 1
            token = self.peek()
            if token is not None and token.text == "-":
                self.index += 1
                base = power(base, -self.integer())
            elif token is not None and token.kind == "int":
                base = power(base, self.integer())
            else:
                base = conjugate(base, self.atom())
        return base

    def integer(self) -> int:
        token = self.peek()
        if token is None or token.kind != "int":
            self.fail("Expected an integer exponent")
        self.index += 1
        return int(token.text)

    def atom(self) -> Word:
        token = self.peek()
        if token is None:
            self.fail("Expected a word")
        if token.kind == "int":
            if token.text != "1":
                self.fail(f"Unexpected number '{token.text}'; only '1' denotes a word")
            self.index += 1
            return Word()
        if token.kind == "name":
            if token.text not in self.alphabet:
                self.fail(f"Undeclared generator '{token.text}'")
            self.index += 1
            return generator(self.alphabet[token.text])
        if token.text == "(":
            self.index += 1
            inner = self.word()
            self.take(")")
            return inner
        if token.text == "[":
            self.index += 1
            u = self.word()
            self.take(",")
            v = self.word()
            self.take("]")
            return commutator(u, v)
        self.fail(f"Unexpected '{token.text}'")

    def word_list(self) -> List[Word]:
        words = []
        if self.at_end():
            return words
        words.append(self.word())
        while not self.at_end():
            self.take(",")
            words.append(self.word())
        return words

    def mapping(self) -> List[Tuple[str, int, Word]]:
        entries = []
        while not self.at_end():
            if entries:
                self.take(",")
            token = self.peek()
            if token is None or token.kind != "name":
                self.fail("Expected a generator name")
            if token.text not in self.alphabet:
                self.fail(f"Undeclared generator '{token.text}'")
            self.index += 1
            self.take("->")
            entries.append((token.text, token.column, self.word()))
        return entries


## Lines

_HEADER = re.compile(r"#\s*lpres\s+v(\d+)\s*$")
_KEYED = re.compile(r"^\s*(endo|subgroup)\s+([^\s:]+)\s*:(.*)$")
_PLAIN = re.compile(r"^\s*(generators|fixed|iterated|invariant)\s*:(.*)$")


def _strip_comment(text: str) -> str:
    return text.split("#", 1)[0]


def parse_presentation(text: str) -> PresentationFile:
    """
    Parse presentation-file text.

    Raises:
        PresentationParseError: On any grammar error, an undeclared or
            repeated generator, or a repeated endo or subgroup name.
    """
    names: Optional[List[str]] = None
    alphabet: Dict[str, int] = {}
    fixed: List[Word] = []
    iterated: List[Word] = []
    endos: Dict[str, FreeEndomorphism] = {}
    subgroups: Dict[str, Tuple[Word, ...]] = {}
    invariant = False

    for number, raw in enumerate(text.splitlines(), start=1):
        header = _HEADER.match(raw.strip())
        if header is not None:
            if int(header.group(1)) != FORMAT_VERSION:
                raise PresentationParseError(f"Unsupported format version {header.group(1)}", number, 1)
            continue
        content = _strip_comment(raw)
        if not content.strip():
            continue

        keyed = _KEYED.match(content)
        plain = _PLAIN.match(content)
        if keyed is None and plain is None:
            raise PresentationParseError(f"Unrecognized line '{content.strip()}'", number, 1)
        if keyed is not None:
            key, label, body = keyed.group(1), keyed.group(2), keyed.group(3)
            offset = keyed.start(3)
        else:
            key, label, body = plain.group(1), None, plain.group(2)
            offset = plain.start(2)

        if key == "generators":
            if names is not None:
                raise PresentationParseError("Generators are declared twice", number, 1)
            names = body.split()
            try:
                make_alphabet(names)
            except WordError as e:
                raise PresentationParseError(str(e), number, offset + 1) from e
            alphabet = {name: i for i, name in enumerate(names)}
            continue
        if key == "invariant":
            value = body.strip().lower()
            if value not in ("yes", "no"):
                raise PresentationParseError("invariant must be 'yes' or 'no'", number, offset + 1)
            invariant = value == "yes"
            continue
        if names is None:
            raise PresentationParseError("The generators line must come first", number, 1)

        parser = _WordParser(_tokenize(body, number, offset), alphabet, number, len(content) + 1)
        if key in ("fixed", "iterated"):
            words = parser.word_list()
            if not words:
                warnings.warn(f"Line {number}: empty '{key}:' list", UserWarning)
            (fixed if key == "fixed" else iterated).extend(words)
        elif key == "endo":
            if label in endos:
                raise PresentationParseError(f"Endomorphism '{label}' is declared twice", number, 1)
            images = [generator(i) for i in range(len(names))]
            seen = set()
            for name, column, image in parser.mapping():
                if name in seen:
                    raise PresentationParseError(f"Generator '{name}' is mapped twice", number, column)
                seen.add(name)
                images[alphabet[name]] = image
            endos[label] = FreeEndomorphism(tuple(images))
        else:
            if label in subgroups:
                raise PresentationParseError(f"Subgroup '{label}' is declared twice", number, 1)
            subgroups[label] = tuple(parser.word_list())

    if names is None:
        raise PresentationParseError("Missing generators line", 0, 0)
    presentation = LPresentation(
        alphabet=make_alphabet(names),
        fixed=tuple(fixed),
        substitutions=tuple(endos.values()),
        iterated=tuple(iterated),
        invariant=invariant or not fixed,
        substitution_names=tuple(endos),
    )
    return PresentationFile(presentation, subgroups)


def load_presentation(path: str) -> PresentationFile:
    """
    Parse a presentation file from disk.

    Raises:
        PresentationParseError: If the file cannot be read or parsed.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except FileNotFoundError:
        raise PresentationParseError(f"Presentation file not found: {path}", 0)
    except OSError as e:
        raise PresentationParseError(f"Cannot read presentation file {path}: {e}", 0) from e
    return parse_presentation(text)


def _word_list(words: Sequence[Word], alphabet: Sequence[GeneratorSymbol]) -> str:
    return ", ".join(format_word(w, alphabet) for w in words)


def format_presentation(pfile: PresentationFile) -> str:
    """Render a PresentationFile as text that parses back to an equal file."""
    lp = pfile.presentation
    alphabet = lp.alphabet
    lines = [f"# lpres v{FORMAT_VERSION}", "generators: " + " ".join(lp.names)]
    if lp.fixed:
        lines.append("fixed: " + _word_list(lp.fixed, alphabet))
    if lp.iterated:
        lines.append("iterated: " + _word_list(lp.iterated, alphabet))
    for name, endo in zip(lp.substitution_names, lp.substitutions):
        mapping = ", ".join(
            f"{symbol.name} -> {format_word(image, alphabet)}"
            for symbol, image in zip(alphabet, endo.images)
        )
        lines.append(f"endo {name}: {mapping}")
    for name, words in pfile.subgroups.items():
        lines.append(f"subgroup {name}: {_word_list(words, alphabet)}")
    if lp.invariant and lp.fixed:
        lines.append("invariant: yes")
    return "\n".join(lines) + "\n"
