"""Quivers, path presentations and their finite-dimensional quotient algebras.

Paths read left to right: p*q means "walk p, then q" and is defined when
target(p) = source(q).  A monomial presentation kills a set of paths of
length >= 2 (plus, optionally, every path of length >= truncate); the surviving
"normal" paths, i.e. those containing no relation as a factor, form a basis of
the quotient.  A quadratic radical-cube presentation kills F_p-combinations of
parallel length-2 paths and truncates at radical degree 3, so the basis is
vertices, arrows and a chosen complement of the relation span in each parallel
class of length-2 paths.

Basis order is part of the contract: vertex idempotents first in declaration
order, then paths by (length, lexicographic arrow names).
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import fp
from .errors import PreconditionError

__all__ = [
    "ParseError",
    "InfiniteDimensionalError",
    "BasisCapExceeded",
    "Arrow",
    "Quiver",
    "Path",
    "MonomialPresentation",
    "QuadraticRadCubePresentation",
    "BasisElement",
    "FiniteAlgebra",
    "parse_presentation",
    "build_algebra",
    "build_algebra_radcube",
    "build",
    "loewy_length",
    "opposite_algebra",
    "opposite_presentation",
    "canonical_text",
]

DEFAULT_BASIS_CAP = 50_000


class ParseError(ValueError):
    """Presentation text error with 1-based line/column position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class InfiniteDimensionalError(PreconditionError):
    """The normal-path language is infinite (cyclic and untruncated)."""


class BasisCapExceeded(PreconditionError):
    """The basis is finite but larger than the configured cap."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """Finite quiver with string vertex ids and named arrows."""

    def __init__(self, vertex_ids: Iterable[str], arrows: Iterable[tuple[str, str, str]]):
        self.vertex_ids: tuple[str, ...] = tuple(str(v) for v in vertex_ids)
        if len(set(self.vertex_ids)) != len(self.vertex_ids):
            raise ValueError("duplicate vertex ids")
        self.vertex_index = {v: i for i, v in enumerate(self.vertex_ids)}
        arr = []
        for name, s, t in arrows:
            if str(s) not in self.vertex_index or str(t) not in self.vertex_index:
                raise ValueError(f"arrow {name} references unknown vertex")
            arr.append(Arrow(str(name), self.vertex_index[str(s)], self.vertex_index[str(t)]))
        self.arrows: tuple[Arrow, ...] = tuple(arr)
        if len({a.name for a in self.arrows}) != len(self.arrows):
            raise ValueError("duplicate arrow names")
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self.out_arrows: tuple[tuple[int, ...], ...] = tuple(
            tuple(i for i, a in enumerate(self.arrows) if a.source == v)
            for v in range(len(self.vertex_ids))
        )

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_ids)

    def path(self, arrow_names: Iterable[str]) -> "Path":
        idxs = tuple(self.arrow_index[n] for n in arrow_names)
        return self.path_from_indices(idxs)

    def path_from_indices(self, idxs: tuple[int, ...], source: int | None = None) -> "Path":
        if not idxs:
            if source is None:
                raise ValueError("a length-0 path needs a vertex")
            return Path(source, source, ())
        for a, b in zip(idxs, idxs[1:]):
            if self.arrows[a].target != self.arrows[b].source:
                raise ValueError(
                    f"arrows {self.arrows[a].name} and {self.arrows[b].name} do not compose"
                )
        return Path(self.arrows[idxs[0]].source, self.arrows[idxs[-1]].target, tuple(idxs))

    def path_label(self, idxs: tuple[int, ...]) -> str:
        return "*".join(self.arrows[i].name for i in idxs)

    def reversed(self) -> "Quiver":
        return Quiver(
            self.vertex_ids,
            [(a.name, self.vertex_ids[a.target], self.vertex_ids[a.source]) for a in self.arrows],
        )


@dataclass(frozen=True)
class Path:
    """A directed walk; length-0 paths are vertices (source == target)."""

    source: int
    target: int
    arrows: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class MonomialPresentation:
    field: int
    quiver: Quiver
    relations: tuple[Path, ...]
    truncate: int = 0

    kind = "monomial"

    def __post_init__(self):
        _check_field(self.field)
        for r in self.relations:
            if len(r) < 2:
                raise ValueError("monomial relations must have length >= 2")
        if self.truncate == 1:
            raise ValueError("truncation must be 0 or >= 2")


@dataclass(frozen=True)
class QuadraticRadCubePresentation:
    """Relations are F_p-combinations of parallel length-2 paths; J^3 = 0."""

    field: int
    quiver: Quiver
    relations: tuple[tuple[tuple[int, Path], ...], ...]

    kind = "radcube"
    truncate = 3

    def __post_init__(self):
        _check_field(self.field)
        for rel in self.relations:
            if not rel:
                raise ValueError("empty quadratic relation")
            pairs = {(t.source, t.target) for _, t in rel}
            if len(pairs) != 1:
                raise ValueError("quadratic relation mixes (source, target) pairs")
            for c, t in rel:
                if len(t) != 2:
                    raise ValueError("quadratic relation terms must have length 2")
                if c % self.field == 0:
                    raise ValueError("zero coefficient in quadratic relation")


def _check_field(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"field must be a prime, got {p}")


# ---------------------------------------------------------------------------
# presentation file format


_KEYS = ("field", "vertices", "arrows", "relations", "truncate", "kind")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_INT_RE = re.compile(r"-?\d+$")


def _tokens(segment: str, offset: int) -> list[tuple[str, int]]:
    return [(m.group(0), offset + m.start() + 1) for m in re.finditer(r"[^\s;]+|;", segment)]


def _split_on_semicolon(toks: list[tuple[str, int]]) -> list[list[tuple[str, int]]]:
    groups: list[list[tuple[str, int]]] = [[]]
    for t in toks:
        if t[0] == ";":
            groups.append([])
        else:
            groups[-1].append(t)
    return [g for g in groups if g]


def parse_presentation(
    text: str, default_field: int = 2
) -> MonomialPresentation | QuadraticRadCubePresentation:
    """Parse the line-oriented presentation format.

    Lines are ``key: value`` with ``#`` comments; keys are field, vertices,
    arrows, relations, truncate and kind.  Errors carry exact line/column.
    """
    fields: dict[str, tuple[str, int, int]] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'key: value'", ln, col)
        key_part, value_part = line.split(":", 1)
        key = key_part.strip()
        key_col = len(key_part) - len(key_part.lstrip()) + 1
        if key not in _KEYS:
            raise ParseError(f"unknown key '{key}'", ln, key_col)
        if key in fields:
            raise ParseError(f"duplicate key '{key}'", ln, key_col)
        fields[key] = (value_part, ln, len(key_part) + 1)

    def toks_of(key: str) -> list[tuple[str, int]]:
        value, ln, off = fields[key]
        return _tokens(value, off)

    kind = "monomial"
    if "kind" in fields:
        t = toks_of("kind")
        _, ln, off = fields["kind"]
        if len(t) != 1 or t[0][0] not in ("monomial", "radcube"):
            col = t[0][1] if t else off
            raise ParseError("kind must be 'monomial' or 'radcube'", ln, col)
        kind = t[0][0]

    p = default_field
    if "field" in fields:
        t = toks_of("field")
        _, ln, off = fields["field"]
        if len(t) != 1 or not _INT_RE.match(t[0][0]):
            col = t[0][1] if t else off
            raise ParseError("field must be a single integer", ln, col)
        p = int(t[0][0])
        try:
            _check_field(p)
        except ValueError as e:
            raise ParseError(str(e), ln, t[0][1]) from None

    if "vertices" not in fields:
        raise ParseError("missing 'vertices' line", max(ln for _, ln, _ in fields.values()) if fields else 1, 1)
    vt = toks_of("vertices")
    _, vln, voff = fields["vertices"]
    if not vt:
        raise ParseError("at least one vertex is required", vln, voff)
    seen: set[str] = set()
    for v, col in vt:
        if v in seen:
            raise ParseError(f"duplicate vertex '{v}'", vln, col)
        seen.add(v)
    vertex_ids = [v for v, _ in vt]

    arrow_triples: list[tuple[str, str, str]] = []
    if "arrows" in fields:
        _, aln, aoff = fields["arrows"]
        for group in _split_on_semicolon(toks_of("arrows")):
            if len(group) != 3:
                raise ParseError("arrow needs 'name source target'", aln, group[0][1])
            (name, ncol), (s, scol), (t, tcol) = group
            if not _NAME_RE.match(name):
                raise ParseError(f"bad arrow name '{name}'", aln, ncol)
            if s not in seen:
                raise ParseError(f"unknown vertex '{s}'", aln, scol)
            if t not in seen:
                raise ParseError(f"unknown vertex '{t}'", aln, tcol)
            if any(name == n for n, _, _ in arrow_triples):
                raise ParseError(f"duplicate arrow name '{name}'", aln, ncol)
            arrow_triples.append((name, s, t))

    quiver = Quiver(vertex_ids, arrow_triples)

    truncate = 0
    if "truncate" in fields:
        t = toks_of("truncate")
        _, tln, toff = fields["truncate"]
        if len(t) != 1 or not _INT_RE.match(t[0][0]):
            col = t[0][1] if t else toff
            raise ParseError("truncate must be a single integer", tln, col)
        truncate = int(t[0][0])
        if truncate < 0 or truncate == 1:
            raise ParseError("truncate must be 0 or >= 2", tln, t[0][1])

    rel_groups: list[list[tuple[str, int]]] = []
    rln = roff = 1
    if "relations" in fields:
        _, rln, roff = fields["relations"]
        rel_groups = _split_on_semicolon(toks_of("relations"))

    def parse_path(group: list[tuple[str, int]], min_len: int) -> Path:
        idxs = []
        for name, col in group:
            if name not in quiver.arrow_index:
                raise ParseError(f"unknown arrow '{name}'", rln, col)
            idxs.append(quiver.arrow_index[name])
        if len(idxs) < min_len:
            raise ParseError(f"relation path needs length >= {min_len}", rln, group[0][1])
        for (a, acol), b in zip(group, idxs[1:]):
            ai = quiver.arrow_index[a]
            if quiver.arrows[ai].target != quiver.arrows[b].source:
                raise ParseError("arrows do not compose", rln, acol)
        return quiver.path_from_indices(tuple(idxs))

    if kind == "monomial":
        relations = []
        for group in rel_groups:
            for name, col in group:
                if name in ("+", "-") or _INT_RE.match(name):
                    raise ParseError("monomial relations are single paths", rln, col)
            relations.append(parse_path(group, 2))
        return MonomialPresentation(p, quiver, tuple(relations), truncate)

    # radcube: each relation is  term (('+'|'-') term)*  with term = [int] arrow arrow
    qrelations = []
    for group in rel_groups:
        terms: list[tuple[int, Path]] = []
        sign = 1
        current: list[tuple[str, int]] = []
        coeff = 1

        def flush(col: int) -> None:
            nonlocal current, coeff, sign
            if not current:
                raise ParseError("empty term in quadratic relation", rln, col)
            path = parse_path(current, 2)
            if len(path) != 2:
                raise ParseError("quadratic terms must be length-2 paths", rln, current[0][1])
            terms.append(((sign * coeff) % p, path))
            current, coeff = [], 1

        for name, col in group:
            if name in ("+", "-"):
                flush(col)
                sign = 1 if name == "+" else -1
            elif _INT_RE.match(name):
                if current:
                    raise ParseError("coefficient must lead its term", rln, col)
                coeff = int(name)
            else:
                current.append((name, col))
        flush(group[-1][1])
        if all(c == 0 for c, _ in terms):
            raise ParseError("quadratic relation is zero mod p", rln, group[0][1])
        pairs = {(t.source, t.target) for _, t in terms}
        if len(pairs) != 1:
            raise ParseError("quadratic relation mixes (source, target) pairs", rln, group[0][1])
        qrelations.append(tuple((c, t) for c, t in terms if c != 0))
    return QuadraticRadCubePresentation(p, quiver, tuple(qrelations))


# ---------------------------------------------------------------------------
# normal paths via the relation-suffix automaton


def _contains_factor(word: tuple[int, ...], rel: tuple[int, ...]) -> bool:
    k = len(rel)
    return any(word[i : i + k] == rel for i in range(len(word) - k + 1))


def _minimize_relations(rels: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    uniq = sorted(set(rels), key=len)
    kept: list[tuple[int, ...]] = []
    for r in uniq:
        if not any(_contains_factor(r, s) for s in kept):
            kept.append(r)
    return kept


def _enumerate_paths_bounded(quiver: Quiver, rels: list[tuple[int, ...]], max_len: int,
                             cap: int) -> list[tuple[int, tuple[int, ...]]]:
    """All normal paths of length <= max_len as (source, arrows), by brute walk."""
    out: list[tuple[int, tuple[int, ...]]] = []
    frontier: list[tuple[int, tuple[int, ...]]] = [(v, ()) for v in range(quiver.num_vertices)]
    length = 0
    while frontier and length < max_len:
        nxt = []
        for src, word in frontier:
            at = quiver.arrows[word[-1]].target if word else src
            for a in quiver.out_arrows[at]:
                w = word + (a,)
                # only suffixes can become newly forbidden
                if any(w[-len(r):] == r for r in rels if len(r) <= len(w)):
                    continue
                nxt.append((src, w))
        out.extend(nxt)
        if len(out) > cap:
            raise BasisCapExceeded(f"more than {cap} paths while enumerating")
        frontier = nxt
        length += 1
    return out


class _SuffixAutomaton:
    """Tracks the longest path suffix that is a proper prefix of a relation."""

    def __init__(self, quiver: Quiver, rels: list[tuple[int, ...]]):
        self.quiver = quiver
        self.rels = rels
        self.rel_set = set(rels)
        self.prefixes: set[tuple[int, ...]] = {()}
        for r in rels:
            for k in range(1, len(r)):
                self.prefixes.add(r[:k])
        self.max_rel = max((len(r) for r in rels), default=0)

    def step(self, state: tuple[int, tuple[int, ...]], arrow: int):
        """Next state after appending an arrow, or None if a relation appears."""
        vertex, suffix = state
        if self.quiver.arrows[arrow].source != vertex:
            return None
        w = suffix + (arrow,)
        # new relation factors can only be suffixes of the tracked window
        for k in range(min(len(w), self.max_rel), 1, -1):
            if w[len(w) - k:] in self.rel_set:
                return None
        target = self.quiver.arrows[arrow].target
        for k in range(min(len(w), self.max_rel - 1), 0, -1):
            if w[len(w) - k:] in self.prefixes:
                return (target, w[len(w) - k:])
        return (target, ())

    def has_cycle(self) -> list[str] | None:
        """Arrow names around a reachable cycle, or None if the walk set is finite."""
        starts = [(v, ()) for v in range(self.quiver.num_vertices)]
        color: dict = {}
        parent_edge: dict = {}
        for s in starts:
            if s in color:
                continue
            stack = [(s, iter(range(len(self.quiver.arrows))))]
            color[s] = 1
            while stack:
                node, it = stack[-1]
                advanced = False
                for a in it:
                    nxt = self.step(node, a)
                    if nxt is None:
                        continue
                    if color.get(nxt) == 1:
                        cycle = [self.quiver.arrows[a].name]
                        cur = node
                        while cur != nxt:
                            pa, pn = parent_edge[cur]
                            cycle.append(self.quiver.arrows[pa].name)
                            cur = pn
                        cycle.reverse()
                        return cycle
                    if nxt not in color:
                        color[nxt] = 1
                        parent_edge[nxt] = (a, node)
                        stack.append((nxt, iter(range(len(self.quiver.arrows)))))
                        advanced = True
                        break
                if not advanced:
                    color[node] = 2
                    stack.pop()
        return None

    def enumerate(self, cap: int) -> list[tuple[int, tuple[int, ...]]]:
        out: list[tuple[int, tuple[int, ...]]] = []
        for v in range(self.quiver.num_vertices):
            stack: list[tuple[tuple[int, tuple[int, ...]], tuple[int, ...]]] = [((v, ()), ())]
            while stack:
                state, word = stack.pop()
                if word:
                    out.append((v, word))
                    if len(out) > cap:
                        raise BasisCapExceeded(f"more than {cap} normal paths")
                for a in range(len(self.quiver.arrows) - 1, -1, -1):
                    nxt = self.step(state, a)
                    if nxt is not None:
                        stack.append((nxt, word + (a,)))
        return out


# ---------------------------------------------------------------------------
# the finite-dimensional quotient


@dataclass(frozen=True)
class BasisElement:
    """One basis vector: a normal path or a chosen length-2 class representative.

    expansion writes the element as a combination of actual paths (pairs of a
    coefficient and an arrow-index tuple); representations evaluate it through
    that expansion, which is well-defined because relations act by zero.
    """

    label: str
    source: int
    target: int
    raddeg: int
    expansion: tuple[tuple[int, tuple[int, ...]], ...]


class FiniteAlgebra:
    """Finite-dimensional basic algebra with an exact multiplication table."""

    def __init__(self, presentation, basis: list[BasisElement],
                 normalized_relations: list[tuple[int, ...]] | None,
                 reductions: dict[tuple[int, int], tuple[tuple[int, int], ...]] | None):
        self.presentation = presentation
        self.p: int = presentation.field
        self.quiver: Quiver = presentation.quiver
        self.kind: str = presentation.kind
        self.basis: tuple[BasisElement, ...] = tuple(basis)
        # monomial: the minimized relation set with truncation materialized
        self.normalized_relations = tuple(normalized_relations or ())
        self._reductions = reductions or {}
        self._path_index: dict[tuple[int, ...], int] = {}
        for i, b in enumerate(self.basis):
            if len(b.expansion) == 1 and b.expansion[0][0] == 1:
                self._path_index.setdefault(b.expansion[0][1], i)
        self._mult_cache: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        self._opposite: FiniteAlgebra | None = None
        self._towers: dict = {}  # simple-module resolution cache, see modules.py
        self.canonical = canonical_text(presentation)
        self.hash = hashlib.sha256(self.canonical.encode()).hexdigest()[:12]

    # -- structure ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def num_vertices(self) -> int:
        return self.quiver.num_vertices

    def idempotent_index(self, vertex: int) -> int:
        return vertex  # vertices head the basis in declaration order

    def arrow_element(self, arrow: int) -> int:
        return self._path_index[(arrow,)]

    @property
    def loewy_length(self) -> int:
        # every basis element of radical degree d is a product of d arrows,
        # so the radical filtration is the degree filtration
        return 1 + max((b.raddeg for b in self.basis), default=0)

    def relation_vectors(self) -> list[tuple[tuple[int, tuple[int, ...]], ...]]:
        """Relations as (coeff, arrow tuple) combinations.

        Monomial: the minimized set with truncation walls materialized.
        Quadratic: the presentation's combinations; the J^3 = 0 wall is
        implicit and handled by consumers via the Loewy length.
        """
        if self.kind == "monomial":
            return [((1, r),) for r in self.normalized_relations]
        out = [tuple((c, t.arrows) for c, t in rel) for rel in self.presentation.relations]
        return out

    # -- multiplication ----------------------------------------------------

    def multiply(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        """Product basis[i] * basis[j] as a sparse vector of (index, coeff)."""
        key = (i, j)
        hit = self._mult_cache.get(key)
        if hit is not None:
            return hit
        bi, bj = self.basis[i], self.basis[j]
        if bi.target != bj.source:
            out: tuple[tuple[int, int], ...] = ()
        elif bi.raddeg == 0:
            out = ((j, 1),)
        elif bj.raddeg == 0:
            out = ((i, 1),)
        elif self.kind == "monomial":
            word = bi.expansion[0][1] + bj.expansion[0][1]
            k = self._path_index.get(word)
            out = ((k, 1),) if k is not None else ()
        else:
            if bi.raddeg + bj.raddeg > 2:
                out = ()
            else:
                word = bi.expansion[0][1] + bj.expansion[0][1]
                out = self._reductions.get(word, ())
        self._mult_cache[key] = out
        return out

    def multiply_vectors(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two coefficient vectors over the basis."""
        out = np.zeros(self.dim, dtype=np.int64)
        for i in np.nonzero(x)[0]:
            for j in np.nonzero(y)[0]:
                for k, c in self.multiply(int(i), int(j)):
                    out[k] += x[i] * y[j] * c
        return out % self.p

    def opposite(self) -> "FiniteAlgebra":
        if self._opposite is None:
            self._opposite = build(opposite_presentation(self.presentation))
        return self._opposite

    def __repr__(self) -> str:
        return f"FiniteAlgebra(kind={self.kind}, p={self.p}, dim={self.dim}, hash={self.hash})"


def build_algebra(pres: MonomialPresentation, basis_cap: int = DEFAULT_BASIS_CAP) -> FiniteAlgebra:
    """Quotient of the path algebra by a monomial ideal (plus truncation)."""
    quiver = pres.quiver
    rels = _minimize_relations(r.arrows for r in pres.relations)
    if pres.truncate:
        n = pres.truncate
        walls = [
            w for _, w in _enumerate_paths_bounded(quiver, rels, n, basis_cap)
            if len(w) == n
        ]
        rels = _minimize_relations(rels + walls)
    auto = _SuffixAutomaton(quiver, rels)
    cycle = auto.has_cycle()
    if cycle is not None:
        raise InfiniteDimensionalError(
            "infinite-dimensional: normal paths cycle through " + "*".join(cycle)
        )
    paths = auto.enumerate(basis_cap)
    paths.sort(key=lambda sw: (len(sw[1]), tuple(quiver.arrows[a].name for a in sw[1])))
    basis = [
        BasisElement(f"e_{quiver.vertex_ids[v]}", v, v, 0, ((1, ()),))
        for v in range(quiver.num_vertices)
    ]
    for src, word in paths:
        tgt = quiver.arrows[word[-1]].target
        basis.append(BasisElement(quiver.path_label(word), src, tgt, len(word), ((1, word),)))
    return FiniteAlgebra(pres, basis, rels, None)


def build_algebra_radcube(pres: QuadraticRadCubePresentation) -> FiniteAlgebra:
    """Quotient by quadratic relations with the radical cubed to zero."""
    quiver = pres.quiver
    p = pres.field
    classes: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for a, ar in enumerate(quiver.arrows):
        for b in quiver.out_arrows[ar.target]:
            key = (ar.source, quiver.arrows[b].target)
            classes.setdefault(key, []).append((a, b))
    for key in classes:
        classes[key].sort(key=lambda ab: (quiver.arrows[ab[0]].name, quiver.arrows[ab[1]].name))

    by_class: dict[tuple[int, int], list[np.ndarray]] = {}
    for rel in pres.relations:
        key = (rel[0][1].source, rel[0][1].target)
        paths2 = classes.get(key, [])
        vec = np.zeros(len(paths2), dtype=np.int64)
        for c, t in rel:
            pair = (t.arrows[0], t.arrows[1])
            if pair not in paths2:
                raise ValueError("quadratic relation over a non-composable path")
            vec[paths2.index(pair)] = c % p
        by_class.setdefault(key, []).append(vec)

    reductions: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    survivors: list[tuple[tuple[int, int], tuple[int, int]]] = []  # (class key, pair)
    class_free: dict[tuple[int, int], list[int]] = {}
    class_rref: dict[tuple[int, int], tuple[np.ndarray, list[int]]] = {}
    for key, paths2 in classes.items():
        relmat = np.array(by_class.get(key, np.zeros((0, len(paths2)), dtype=np.int64)),
                          dtype=np.int64).reshape(-1, len(paths2))
        r, pivots = fp.rref(relmat, p)
        free = [c for c in range(len(paths2)) if c not in pivots]
        class_free[key] = free
        class_rref[key] = (r, pivots)
        for f in free:
            survivors.append((key, paths2[f]))

    survivors.sort(key=lambda kp: (quiver.arrows[kp[1][0]].name, quiver.arrows[kp[1][1]].name))
    basis = [
        BasisElement(f"e_{quiver.vertex_ids[v]}", v, v, 0, ((1, ()),))
        for v in range(quiver.num_vertices)
    ]
    arrow_order = sorted(range(len(quiver.arrows)), key=lambda a: quiver.arrows[a].name)
    for a in arrow_order:
        ar = quiver.arrows[a]
        basis.append(BasisElement(ar.name, ar.source, ar.target, 1, ((1, (a,)),)))
    deg2_index: dict[tuple[int, int], int] = {}
    for key, pair in survivors:
        idx = len(basis)
        deg2_index[pair] = idx
        basis.append(
            BasisElement(
                quiver.path_label(pair), key[0], key[1], 2, ((1, pair),)
            )
        )

    for key, paths2 in classes.items():
        r, pivots = class_rref[key]
        free = class_free[key]
        for c, pair in enumerate(paths2):
            if c in free:
                reductions[pair] = ((deg2_index[pair], 1),)
            else:
                row = pivots.index(c)
                combo = tuple(
                    (deg2_index[paths2[f]], int((-r[row, f]) % p))
                    for f in free
                    if r[row, f] % p
                )
                reductions[pair] = combo
    return FiniteAlgebra(pres, basis, None, reductions)


def build(pres) -> FiniteAlgebra:
    if isinstance(pres, MonomialPresentation):
        return build_algebra(pres)
    if isinstance(pres, QuadraticRadCubePresentation):
        return build_algebra_radcube(pres)
    raise TypeError(f"not a presentation: {pres!r}")


def loewy_length(algebra: FiniteAlgebra) -> int:
    """Least n with J^n = 0."""
    return algebra.loewy_length


def opposite_presentation(pres):
    quiver = pres.quiver
    rq = quiver.reversed()
    if isinstance(pres, MonomialPresentation):
        rels = tuple(rq.path_from_indices(tuple(reversed(r.arrows))) for r in pres.relations)
        return MonomialPresentation(pres.field, rq, rels, pres.truncate)
    rels = tuple(
        tuple((c, rq.path_from_indices(tuple(reversed(t.arrows)))) for c, t in rel)
        for rel in pres.relations
    )
    return QuadraticRadCubePresentation(pres.field, rq, rels)


def opposite_algebra(algebra: FiniteAlgebra) -> FiniteAlgebra:
    """Same underlying space with reversed multiplication (reversed quiver)."""
    return algebra.opposite()


def canonical_text(pres) -> str:
    """Stable serialization used for hashing and byte-identical reports."""
    quiver = pres.quiver
    lines = [
        f"kind: {pres.kind}",
        f"field: {pres.field}",
        "vertices: " + " ".join(quiver.vertex_ids),
        "arrows: "
        + " ; ".join(
            f"{a.name} {quiver.vertex_ids[a.source]} {quiver.vertex_ids[a.target]}"
            for a in quiver.arrows
        ),
    ]
    if pres.kind == "monomial":
        rels = sorted(
            tuple(quiver.arrows[i].name for i in r.arrows) for r in pres.relations
        )
        lines.append("relations: " + " ; ".join(" ".join(r) for r in rels))
        lines.append(f"truncate: {pres.truncate}")
    else:
        rels = []
        for rel in pres.relations:
            terms = sorted(
                (tuple(quiver.arrows[i].name for i in t.arrows), c % pres.field)
                for c, t in rel
            )
            rels.append(" + ".join(f"{c} {' '.join(w)}" for w, c in terms))
        lines.append("relations: " + " ; ".join(sorted(rels)))
        lines.append("truncate: 3")
    return "\n".join(lines) + "\n"
