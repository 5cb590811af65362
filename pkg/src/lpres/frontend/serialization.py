"""
JSON forms of the objects the command line prints.

Words are written in the presentation-file grammar, permutations as
1-based image lists. The shapes are documented by the JSON schemas
packaged under lpres/schemas.
"""
import json
import os
from typing import Any, Dict, Sequence, Union

from ..analysis.census import SubgroupCensus
from ..analysis.classify import SubgroupReport
from ..core.perms import GeneratorAction, Permutation
from ..core.words import FinitePresentation, GeneratorSymbol, LPresentation, format_word
from ..cosets.tables import CosetTable
from ..presentations.constructions import SubgroupPresentationResult

SCHEMA_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "schemas")
SCHEMA_NAMES = ("coset_table", "presentation", "subgroup_report", "abelian_invariants", "census")


def load_schema(name: str) -> Dict[str, Any]:
    """Load one of the packaged JSON schemas by name."""
    if name not in SCHEMA_NAMES:
        raise KeyError(f"Unknown schema '{name}'")
    with open(os.path.join(SCHEMA_DIR, f"{name}.json"), "r", encoding="utf-8") as f:
        return json.load(f)


def serialize_table(table: CosetTable, names: Sequence[str]) -> Dict[str, Any]:
    return {
        "degree": table.degree,
        "generators": list(names),
        "action": [[image + 1 for image in perm.images] for perm in table.action.images],
    }


def deserialize_table(data: Dict[str, Any]) -> CosetTable:
    """
    Rebuild a table from its JSON form.

    Raises:
        PermutationError: If the arrays are not permutations of the
            declared degree or the action is not transitive.
    """
    degree = int(data["degree"])
    images = tuple(Permutation(tuple(int(i) - 1 for i in row)) for row in data["action"])
    return CosetTable(GeneratorAction(degree, images))


def serialize_presentation(presentation: Union[LPresentation, FinitePresentation]) -> Dict[str, Any]:
    alphabet = presentation.alphabet
    if isinstance(presentation, FinitePresentation):
        return {
            "kind": "finite",
            "generators": presentation.names,
            "relators": [format_word(r, alphabet) for r in presentation.relators],
        }
    substitutions = []
    for name, endo in zip(presentation.substitution_names, presentation.substitutions):
        substitutions.append({
            "name": name,
            "images": {symbol.name: format_word(image, alphabet)
                       for symbol, image in zip(alphabet, endo.images)},
        })
    return {
        "kind": "l-presentation",
        "generators": presentation.names,
        "fixed": [format_word(q, alphabet) for q in presentation.fixed],
        "iterated": [format_word(r, alphabet) for r in presentation.iterated],
        "substitutions": substitutions,
        "invariant": presentation.invariant,
    }


def serialize_result(result: SubgroupPresentationResult,
                     alphabet: Sequence[GeneratorSymbol]) -> Dict[str, Any]:
    """The presentation, plus each of its generators as a word over the original alphabet."""
    data = serialize_presentation(result.presentation)
    data["strategy"] = result.strategy
    data["dictionary"] = {name: format_word(w, alphabet) for name, w in result.dictionary.items()}
    return data


def serialize_report(report: SubgroupReport,
                     table: CosetTable,
                     lp: LPresentation) -> Dict[str, Any]:
    data = report.serialize(lp.substitution_names)
    data["table"] = serialize_table(table, lp.names)
    return data


def serialize_census(census: SubgroupCensus) -> Dict[str, Any]:
    return census.serialize()


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2)
