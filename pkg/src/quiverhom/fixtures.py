"""Built-in example presentations, addressable from the CLI as @name.

Each fixture is stored as presentation text and goes through the ordinary
parser, so the fixtures double as format smoke tests.
"""

from __future__ import annotations

from .algebra import FiniteAlgebra, build, parse_presentation

__all__ = ["FIXTURES", "fixture_text", "fixture_algebra", "fixture_names"]

FIXTURES: dict[str, str] = {
    # two vertices swapped by alpha/beta, one length-3 zero path;
    # infinite global dimension with one chain per degree
    "paper": """\
field: 2
vertices: 1 2
arrows: alpha 1 2 ; beta 2 1
relations: alpha beta alpha
kind: monomial
""",
    # linear A3 quiver with the composite killed; global dimension 2
    "a3": """\
field: 2
vertices: 1 2 3
arrows: a 1 2 ; b 2 3
relations: a b
kind: monomial
""",
    # one loop with square zero; the syzygy of the simple is the simple
    "loop": """\
field: 2
vertices: 1
arrows: x 1 1
relations: x x
kind: monomial
""",
    # commutative square with the two composites identified; radical cube zero
    "square": """\
field: 2
vertices: 1 2 3 4
arrows: a 1 2 ; c 2 4 ; b 1 3 ; d 3 4
relations: a c - b d
kind: radcube
""",
    # a single vertex, no arrows: the field itself
    "ss": """\
field: 2
vertices: 1
arrows:
relations:
kind: monomial
""",
}


def fixture_names() -> list[str]:
    return sorted(FIXTURES)


def fixture_text(name: str) -> str:
    key = name.lstrip("@")
    if key not in FIXTURES:
        raise KeyError(f"unknown fixture '@{key}' (have: {', '.join('@' + n for n in fixture_names())})")
    return FIXTURES[key]


def fixture_algebra(name: str) -> FiniteAlgebra:
    return build(parse_presentation(fixture_text(name)))
