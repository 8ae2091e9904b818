"""Presentations, parsing and the finite-dimensional quotient construction."""

from __future__ import annotations

import numpy as np
import pytest

from quiverhom import (
    InfiniteDimensionalError,
    ParseError,
    build,
    build_algebra,
    fixture_algebra,
    fixture_text,
    loewy_length,
    opposite_algebra,
    parse_presentation,
)
from quiverhom.algebra import MonomialPresentation, Quiver, canonical_text

import helpers


def basis_labels(algebra):
    return [b.label for b in algebra.basis]


class TestFixtureAlgebras:
    def test_two_vertex_swap_algebra(self):
        a = fixture_algebra("paper")
        assert a.dim == 7
        assert basis_labels(a) == [
            "e_1",
            "e_2",
            "alpha",
            "beta",
            "alpha*beta",
            "beta*alpha",
            "beta*alpha*beta",
        ]
        assert loewy_length(a) == 4
        assert helpers.loewy_length_brute(a) == 4

    def test_a3(self):
        a = fixture_algebra("a3")
        assert a.dim == 5
        assert basis_labels(a) == ["e_1", "e_2", "e_3", "a", "b"]
        assert loewy_length(a) == 2

    def test_loop(self):
        a = fixture_algebra("loop")
        assert a.dim == 2
        assert loewy_length(a) == 2

    def test_square(self):
        a = fixture_algebra("square")
        assert a.dim == 9
        assert basis_labels(a) == [
            "e_1", "e_2", "e_3", "e_4", "a", "b", "c", "d", "b*d",
        ]
        assert loewy_length(a) == 3
        assert helpers.loewy_length_brute(a) == 3

    def test_semisimple(self):
        a = fixture_algebra("ss")
        assert a.dim == 1
        assert loewy_length(a) == 1

    def test_swap_algebra_products(self):
        a = fixture_algebra("paper")
        idx = {b.label: i for i, b in enumerate(a.basis)}
        # alpha * (beta*alpha) hits the zero path alpha*beta*alpha
        assert a.multiply(idx["alpha"], idx["beta*alpha"]) == ()
        assert a.multiply(idx["beta"], idx["alpha*beta"]) == ((idx["beta*alpha*beta"], 1),)
        # idempotents are orthogonal and fix paths on the matching side
        assert a.multiply(idx["e_1"], idx["e_2"]) == ()
        assert a.multiply(idx["e_1"], idx["alpha"]) == ((idx["alpha"], 1),)
        assert a.multiply(idx["alpha"], idx["e_1"]) == ()

    def test_square_identifies_composites(self):
        a = fixture_algebra("square")
        idx = {b.label: i for i, b in enumerate(a.basis)}
        assert a.multiply(idx["a"], idx["c"]) == ((idx["b*d"], 1),)
        assert a.multiply(idx["b"], idx["d"]) == ((idx["b*d"], 1),)
        # radical cube is zero: any arrow times a degree-2 element dies
        assert a.multiply(idx["b*d"], idx["d"]) == ()
        assert a.multiply(idx["a"], idx["b*d"]) == ()

    def test_fixture_associativity(self):
        for name in ("paper", "a3", "loop", "square", "ss"):
            helpers.all_associativity(fixture_algebra(name))


class TestNormalPathOracle:
    def test_counts_match_brute_enumeration(self):
        for name in ("paper", "a3", "loop", "ss"):
            a = fixture_algebra(name)
            pres = a.presentation
            brute = helpers.normal_paths_brute(pres, max_len=8)
            assert a.dim == a.num_vertices + len(brute)

    def test_truncated_cycle(self):
        text = """
        field: 3
        vertices: 1 2
        arrows: x 1 2 ; y 2 1
        truncate: 3
        kind: monomial
        """
        a = build(parse_presentation(text))
        # e_1, e_2, x, y, x*y, y*x
        assert a.dim == 6
        assert loewy_length(a) == 3
        assert helpers.loewy_length_brute(a) == 3
        brute = helpers.normal_paths_brute(a.presentation, max_len=6)
        assert a.dim == 2 + len(brute)

    def test_infinite_dimensional_raises(self):
        text = """
        vertices: 1
        arrows: x 1 1
        kind: monomial
        """
        with pytest.raises(InfiniteDimensionalError):
            build(parse_presentation(text))

    def test_relation_tail_still_infinite(self):
        text = """
        vertices: 1 2
        arrows: x 1 1 ; y 1 2
        relations: x y
        """
        with pytest.raises(InfiniteDimensionalError):
            build(parse_presentation(text))

    def test_factor_containment_minimized(self):
        q = Quiver(["1"], [("x", "1", "1")])
        pres = MonomialPresentation(
            2, q, (q.path(["x", "x"]), q.path(["x", "x", "x"])), 0
        )
        a = build_algebra(pres)
        assert a.normalized_relations == ((0, 0),)
        assert a.dim == 2


class TestOpposite:
    def test_involution_and_dim(self):
        for name in ("paper", "a3", "square"):
            a = fixture_algebra(name)
            op = opposite_algebra(a)
            assert op.dim == a.dim
            assert loewy_length(op) == loewy_length(a)
            opop = opposite_algebra(op)
            assert opop.canonical == a.canonical

    def test_opposite_multiplication_reverses(self):
        a = fixture_algebra("a3")
        op = opposite_algebra(a)
        # in the opposite algebra the composite b*a exists instead of a*b
        labels = [b.label for b in op.basis]
        assert "a" in labels and "b" in labels
        idx = {b.label: i for i, b in enumerate(op.basis)}
        assert op.multiply(idx["b"], idx["a"]) == ()
        helpers.all_associativity(op)


class TestParser:
    def test_duplicate_vertex_position(self):
        with pytest.raises(ParseError) as e:
            parse_presentation("field: 2\nvertices: 1 1\n")
        assert e.value.line == 2 and e.value.col == 13

    def test_missing_colon(self):
        with pytest.raises(ParseError) as e:
            parse_presentation("vertices 1 2\n")
        assert e.value.line == 1

    def test_unknown_arrow_in_relation(self):
        text = "field: 2\nvertices: 1 2 3\narrows: a 1 2 ; b 2 3\nrelations: a q\n"
        with pytest.raises(ParseError) as e:
            parse_presentation(text)
        assert e.value.line == 4 and e.value.col == 14

    def test_noncomposable_relation(self):
        text = "field: 2\nvertices: 1 2 3\narrows: a 1 2 ; b 2 3\nrelations: b a\n"
        with pytest.raises(ParseError) as e:
            parse_presentation(text)
        assert e.value.line == 4 and e.value.col == 12

    def test_short_relation_rejected(self):
        text = "vertices: 1 2\narrows: a 1 2\nrelations: a\n"
        with pytest.raises(ParseError) as e:
            parse_presentation(text)
        assert e.value.line == 3

    def test_field_must_be_prime(self):
        with pytest.raises(ParseError):
            parse_presentation("field: 6\nvertices: 1\n")

    def test_truncate_one_rejected(self):
        with pytest.raises(ParseError):
            parse_presentation("vertices: 1\ntruncate: 1\n")

    def test_comments_and_blank_lines(self):
        text = fixture_text("paper") + "\n# trailing comment\n\n"
        a = build(parse_presentation(text))
        assert a.dim == 7

    def test_quadratic_requires_single_class(self):
        text = (
            "vertices: 1 2 3\n"
            "arrows: a 1 2 ; b 2 3 ; c 2 2\n"
            "relations: a b - a c\n"
            "kind: radcube\n"
        )
        with pytest.raises(ParseError) as e:
            parse_presentation(text)
        assert "mixes" in e.value.message

    def test_monomial_rejects_sums(self):
        text = "vertices: 1 2\narrows: a 1 2 ; b 1 2\nrelations: a - b\n"
        with pytest.raises(ParseError):
            parse_presentation(text)

    def test_quadratic_coefficients(self):
        text = (
            "field: 5\n"
            "vertices: 1 2 3\n"
            "arrows: a 1 2 ; b 2 3 ; c 1 2\n"
            "relations: 2 a b - c b\n"
            "kind: radcube\n"
        )
        alg = build(parse_presentation(text))
        # two parallel length-2 paths, one relation: one survivor
        assert alg.dim == 3 + 3 + 1
        idx = {b.label: i for i, b in enumerate(alg.basis)}
        # 2*(a*b) = c*b, so a*b reduces to 3^{-1}... inverse of 2 mod 5 is 3
        assert alg.multiply(idx["a"], idx["b"]) == ((idx["c*b"], 3),)
        helpers.all_associativity(alg)

    def test_canonical_text_ignores_formatting(self):
        base = parse_presentation(fixture_text("paper"))
        spaced = parse_presentation(
            "kind: monomial\nfield: 2\nvertices:   1   2\n"
            "arrows:  alpha 1 2   ;   beta 2 1\nrelations:  alpha  beta  alpha\n"
        )
        assert canonical_text(base) == canonical_text(spaced)
