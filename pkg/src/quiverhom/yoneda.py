"""The Yoneda ring E = Ext*(A/J, A/J) and its generation profile.

Ext^n(S_i, A/J) is taken, by definition, as Hom(Omega^n S_i, A/J) on the
minimal resolution: a basis element is the functional dual to one chosen top
lift of the n-th cover, and products are composition with a chain-map lift
computed cover by cover.  Lifts are linear in the lifted class and are cached
per basis element, so profiling products across many degrees stays cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chains as chains_mod
from . import fp
from .algebra import FiniteAlgebra
from .errors import InternalInvariantError, PreconditionError
from .modules import (
    ModuleMap,
    Representation,
    chain_lift_step,
    semisimple_top,
    tower,
)


def _space_cache(algebra: FiniteAlgebra) -> dict:
    cache = getattr(algebra, "_ext_spaces", None)
    if cache is None:
        cache = {}
        algebra._ext_spaces = cache
    return cache


class ExtSpace:
    """Ext^n(S_i, A/J) with the dual basis of the chosen top lifts.

    Basis element k corresponds to the k-th summand of the n-th cover in the
    minimal resolution of S_i; summands are emitted in vertex order, so the
    basis is ordered by (target vertex, copy).
    """

    __slots__ = (
        "algebra",
        "source",
        "degree",
        "syzygy",
        "summand_vertices",
        "lifts",
        "funcs",
        "_lift_cache",
    )

    def __init__(self, algebra: FiniteAlgebra, source: int, degree: int) -> None:
        self.algebra = algebra
        self.source = source
        self.degree = degree
        t = tower(algebra, source)
        t.ensure(degree)
        cov = t.covers[degree]
        self.syzygy: Representation = t.syzygies[degree]
        self.summand_vertices = cov.proj.summands
        self.lifts = cov.targets
        p = algebra.p
        funcs: list[np.ndarray] = [np.zeros(0, dtype=np.int64)] * len(self.summand_vertices)
        for v in range(algebra.num_vertices):
            ks = [k for k, j in enumerate(self.summand_vertices) if j == v]
            d = self.syzygy.dims[v]
            if not ks or d == 0:
                continue
            rad = cov.rad[v]
            cols = [rad] + [self.lifts[k].reshape(-1, 1) for k in ks]
            basis = np.hstack(cols)
            if basis.shape[0] != basis.shape[1]:
                raise InternalInvariantError("top lifts do not complete the radical")
            inv = fp.invert(basis, p)
            for pos, k in enumerate(ks):
                funcs[k] = inv[rad.shape[1] + pos].copy()
        self.funcs = tuple(funcs)
        self._lift_cache: dict[tuple[int, int], ModuleMap] = {}

    @property
    def dim(self) -> int:
        return len(self.summand_vertices)

    def zero_rows(self) -> tuple[np.ndarray, ...]:
        return tuple(
            np.zeros(self.syzygy.dims[v], dtype=np.int64)
            for v in range(self.algebra.num_vertices)
        )

    def basis_element(self, k: int) -> "GradedExtElement":
        rows = list(self.zero_rows())
        v = self.summand_vertices[k]
        rows[v] = (rows[v] + self.funcs[k]) % self.algebra.p
        return GradedExtElement(self, tuple(rows))

    def basis(self) -> list["GradedExtElement"]:
        return [self.basis_element(k) for k in range(self.dim)]

    def from_coords(self, coords: np.ndarray) -> "GradedExtElement":
        rows = [r.copy() for r in self.zero_rows()]
        for k, c in enumerate(np.asarray(coords, dtype=np.int64) % self.algebra.p):
            if c:
                v = self.summand_vertices[k]
                rows[v] = (rows[v] + int(c) * self.funcs[k]) % self.algebra.p
        return GradedExtElement(self, tuple(rows))

    def coords_of(self, rows: tuple[np.ndarray, ...]) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for k, v in enumerate(self.summand_vertices):
            out[k] = int(rows[v] @ self.lifts[k]) % self.algebra.p
        return out

    def basis_lift(self, k: int, m: int) -> ModuleMap:
        """Chain-map lift of basis element k through m cover steps, cached."""
        if m == 0:
            return self._as_component_map(self.basis_element(k), self.summand_vertices[k])
        key = (k, m)
        got = self._lift_cache.get(key)
        if got is None:
            prev = self.basis_lift(k, m - 1)
            got = _lift_once(
                self.algebra,
                self.source,
                self.degree + m - 1,
                self.summand_vertices[k],
                m - 1,
                prev,
            )
            self._lift_cache[key] = got
        return got

    def _as_component_map(self, f: "GradedExtElement", j: int) -> ModuleMap:
        """The component of f at vertex j, as a map onto the simple S_j."""
        alg = self.algebra
        target = tower(alg, j).syzygies[0]
        mats = []
        for v in range(alg.num_vertices):
            mats.append(f.rows[v].reshape(1, -1) if v == j else
                        np.zeros((0, self.syzygy.dims[v]), dtype=np.int64))
        return ModuleMap(self.syzygy, target, mats)


@dataclass(frozen=True)
class GradedExtElement:
    """An element of Ext^n(S_i, A/J): a radical-killing functional per vertex."""

    space: ExtSpace
    rows: tuple[np.ndarray, ...]

    @property
    def degree(self) -> int:
        return self.space.degree

    @property
    def source(self) -> int:
        return self.space.source

    @property
    def is_zero(self) -> bool:
        return all(not r.any() for r in self.rows)

    def coords(self) -> np.ndarray:
        return self.space.coords_of(self.rows)

    def component(self, j: int) -> "GradedExtElement":
        rows = list(self.space.zero_rows())
        rows[j] = self.rows[j].copy()
        return GradedExtElement(self.space, tuple(rows))

    def target_vertex(self) -> int | None:
        """The unique vertex carrying this element, or None if zero or mixed."""
        hot = [v for v, r in enumerate(self.rows) if r.any()]
        return hot[0] if len(hot) == 1 else None

    def as_module_map(self) -> ModuleMap:
        """The underlying map Omega^n S_i -> A/J."""
        alg = self.space.algebra
        return ModuleMap(
            self.space.syzygy,
            semisimple_top(alg),
            [r.reshape(1, -1) for r in self.rows],
        )


def ext_space(algebra: FiniteAlgebra, source: int, degree: int) -> ExtSpace:
    cache = _space_cache(algebra)
    key = (source, degree)
    if key not in cache:
        cache[key] = ExtSpace(algebra, source, degree)
    return cache[key]


def ext_basis(algebra: FiniteAlgebra, degree: int) -> list[GradedExtElement]:
    """Basis of E_degree = Ext^degree(A/J, A/J), ordered by (source, target, copy)."""
    out: list[GradedExtElement] = []
    for i in range(algebra.num_vertices):
        out.extend(ext_space(algebra, i, degree).basis())
    return out


def _lift_once(
    algebra: FiniteAlgebra,
    src_simple: int,
    src_level: int,
    tgt_simple: int,
    tgt_level: int,
    h: ModuleMap,
    rng=None,
) -> ModuleMap:
    """Push h: Omega^a S_i -> Omega^b S_j one syzygy step to the left."""
    ti = tower(algebra, src_simple)
    tj = tower(algebra, tgt_simple)
    ti.ensure(src_level)
    tj.ensure(tgt_level)
    return chain_lift_step(
        h,
        ti.covers[src_level],
        ti.embeds[src_level],
        ti.syzygies[src_level + 1],
        tj.covers[tgt_level],
        tj.embeds[tgt_level],
        tj.syzygies[tgt_level + 1],
        rng=rng,
    )


def lift_map(
    f: GradedExtElement, m: int, target: int | None = None, rng=None
) -> ModuleMap:
    """Lift f to a map Omega^{n+m} S_i -> Omega^m S_j, j = f's target component."""
    if target is None:
        target = f.target_vertex()
        if target is None:
            raise PreconditionError("lift needs a single-component element")
    space = f.space
    h = space._as_component_map(f, target)
    for r in range(m):
        h = _lift_once(
            space.algebra, space.source, space.degree + r, target, r, h, rng=rng
        )
    return h


def zero_element(algebra: FiniteAlgebra, source: int, degree: int) -> GradedExtElement:
    space = ext_space(algebra, source, degree)
    return GradedExtElement(space, space.zero_rows())


def yoneda_product(
    g: GradedExtElement, f: GradedExtElement, rng=None
) -> GradedExtElement:
    """g . f = g composed with a lift of f's g-source component.

    A component mismatch (f has nothing at g's source vertex) gives zero by
    contract rather than an error.
    """
    alg = f.space.algebra
    if g.space.algebra is not alg:
        raise PreconditionError("product factors live over different algebras")
    j = g.source
    m = g.degree
    n = f.degree
    out_space = ext_space(alg, f.source, n + m)
    if not f.rows[j].any():
        return GradedExtElement(out_space, out_space.zero_rows())
    p = alg.p
    if rng is not None:
        h = lift_map(f.component(j), m, target=j, rng=rng)
    else:
        # linearity of the lift: combine cached basis lifts
        coords = f.coords()
        h = None
        for k, c in enumerate(coords):
            if not c or f.space.summand_vertices[k] != j:
                continue
            part = f.space.basis_lift(k, m)
            if h is None:
                h = [int(c) * mm % p for mm in part.mats]
            else:
                h = [(acc + int(c) * mm) % p for acc, mm in zip(h, part.mats)]
        if h is None:
            return GradedExtElement(out_space, out_space.zero_rows())
        h = ModuleMap(
            tower(alg, f.source).syzygies[n + m], tower(alg, j).syzygies[m], h
        )
    rows = tuple((g.rows[v] @ h.mats[v]) % p for v in range(alg.num_vertices))
    return GradedExtElement(out_space, rows)


@dataclass(frozen=True)
class GenerationProfile:
    """Degreewise dimensions, product-span dimensions, and new-generator counts."""

    rows: tuple[tuple[int, int, int, int], ...]  # (n, dim E_n, dim products, new)
    bound: int
    s: int | None  # last degree needing a new generator; None if that is the bound

    def new_generators(self, n: int) -> int:
        return self.rows[n - 1][3]

    def as_json(self) -> dict:
        return {
            "rows": [
                {"degree": n, "dim": d, "products": pr, "new_generators": new}
                for n, d, pr, new in self.rows
            ],
            "bound": self.bound,
            "s": self.s,
        }


def _full_coords(algebra: FiniteAlgebra, e: GradedExtElement) -> np.ndarray:
    """Coordinates of e inside E_n across all source simples."""
    n = e.degree
    blocks = []
    for i in range(algebra.num_vertices):
        space = ext_space(algebra, i, n)
        if i == e.source:
            blocks.append(e.coords())
        else:
            blocks.append(np.zeros(space.dim, dtype=np.int64))
    if not blocks:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(blocks)


def generation_profile(algebra: FiniteAlgebra, bound: int) -> GenerationProfile:
    """Span products of lower degrees against each E_n, degree by degree."""
    if bound < 1:
        raise PreconditionError("profile bound must be >= 1")
    bases: dict[int, list[GradedExtElement]] = {
        n: ext_basis(algebra, n) for n in range(1, bound + 1)
    }
    rows = []
    last_new = 0
    for n in range(1, bound + 1):
        dim_n = len(bases[n])
        cols = []
        for k in range(1, n):
            for f in bases[k]:
                for g in bases[n - k]:
                    prod = yoneda_product(g, f)
                    if not prod.is_zero:
                        cols.append(_full_coords(algebra, prod))
        if cols and dim_n:
            span = fp.rank(np.stack(cols, axis=1), algebra.p)
        else:
            span = 0
        new = dim_n - span
        if new:
            last_new = n
        rows.append((n, dim_n, span, new))
    s: int | None
    if last_new >= bound and any(r[3] for r in rows):
        s = None
    else:
        s = last_new
    return GenerationProfile(tuple(rows), bound, s)


@dataclass(frozen=True)
class Certificate:
    """The m*r*s global-dimension certificate and how far it was verified."""

    r: int
    s: int | None
    s_bound: int
    m: int | None
    m_exact: bool
    bound: int | None
    verdict: str
    gldim_upper: int | None

    def as_json(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "s_bound": self.s_bound,
            "m": self.m,
            "m_exact": self.m_exact,
            "bound": self.bound,
            "verdict": self.verdict,
            "gldim_upper": self.gldim_upper,
        }


def gldim_certificate(algebra: FiniteAlgebra, bound: int) -> Certificate:
    """Assemble r, s, m; certify finite global dimension when the pieces allow.

    r counts the simples, s comes from the generation profile (refutable only
    up to the bound), and m is exact for monomial presentations via the chain
    decision, otherwise a bounded diagonal scan.
    """
    r = algebra.num_vertices
    profile = generation_profile(algebra, bound)
    if algebra.kind == "monomial":
        self_ext = chains_mod.ext_self_vanishing_decide(algebra)
        if not self_ext.eventually_zero:
            return Certificate(
                r, profile.s, bound, None, True, None,
                "refuted: self-extensions never vanish", None,
            )
        m, m_exact = self_ext.m, True
    else:
        last = 0
        for n in range(1, bound + 1):
            for i in range(algebra.num_vertices):
                space = ext_space(algebra, i, n)
                if any(j == i for j in space.summand_vertices):
                    last = n
        m, m_exact = last + 1, False
    if profile.s is None:
        return Certificate(
            r, None, bound, m, m_exact,
            None, "not certified: new generators up to the bound", None,
        )
    s = profile.s
    prod_bound = m * r * s
    if not m_exact:
        return Certificate(
            r, s, bound, m, False, prod_bound,
            "conditional: m only scanned to the bound", None,
        )
    if bound <= prod_bound:
        return Certificate(
            r, s, bound, m, True, prod_bound,
            "inconclusive: verification bound does not exceed m*r*s", None,
        )
    tail = [
        row for row in profile.rows if row[0] > prod_bound and row[1] > 0
    ]
    if tail:
        return Certificate(
            r, s, bound, m, True, prod_bound,
            "inconclusive: Ext nonzero above m*r*s, generation degree exceeds the scan",
            None,
        )
    return Certificate(
        r, s, bound, m, True, prod_bound, "finite (certified)", prod_bound
    )


@dataclass(frozen=True)
class YonedaQuiverReport:
    """New generators per degree (as quiver arrows) and the product-vanishing table."""

    generators: tuple[tuple[int, str, str, int], ...]  # (degree, source, target, count)
    products: tuple[tuple[str, str, int, bool], ...]  # (f, g, total degree, is zero)
    bound: int

    def as_json(self) -> dict:
        return {
            "new_generators": [
                {"degree": d, "source": s, "target": t, "count": c}
                for d, s, t, c in self.generators
            ],
            "products": [
                {"f": f, "g": g, "total_degree": d, "zero": z}
                for f, g, d, z in self.products
            ],
            "bound": self.bound,
        }


def yoneda_quiver(algebra: FiniteAlgebra, bound: int) -> YonedaQuiverReport:
    """Generator-by-degree shape of E, with arrows drawn opposite to Ext direction.

    A class in Ext^n(S_i, S_j) contributes an arrow j -> i, matching the
    composition-order convention for the quiver of a basic graded algebra.
    """
    ids = algebra.quiver.vertex_ids
    chosen: list[tuple[int, int, int, GradedExtElement]] = []  # (degree, i, j, elt)
    for n in range(1, bound + 1):
        cols: list[np.ndarray] = []
        for k in range(1, n):
            for f in ext_basis(algebra, k):
                for g in ext_basis(algebra, n - k):
                    prod = yoneda_product(g, f)
                    if not prod.is_zero:
                        cols.append(_full_coords(algebra, prod))
        have = np.stack(cols, axis=1) if cols else None
        for i in range(algebra.num_vertices):
            space = ext_space(algebra, i, n)
            for k in range(space.dim):
                e = space.basis_element(k)
                vec = _full_coords(algebra, e).reshape(-1, 1)
                if have is None:
                    is_new = True
                elif fp.in_column_span(have, vec, algebra.p):
                    is_new = False
                else:
                    is_new = True
                if is_new:
                    chosen.append((n, i, space.summand_vertices[k], e))
                    have = vec if have is None else np.hstack([have, vec])
    counts: dict[tuple[int, int, int], int] = {}
    for n, i, j, _ in chosen:
        counts[(n, j, i)] = counts.get((n, j, i), 0) + 1
    generators = tuple(
        (n, ids[a], ids[b], c) for (n, a, b), c in sorted(counts.items())
    )
    labels = {
        idx: f"deg{n}:{ids[j]}->{ids[i]}#{idx}"
        for idx, (n, i, j, _) in enumerate(chosen)
    }
    products = []
    for a, (n1, _i1, j1, f) in enumerate(chosen):
        for b, (n2, i2, _j2, g) in enumerate(chosen):
            if n1 + n2 > bound or i2 != j1:
                continue
            prod = yoneda_product(g, f)
            products.append((labels[a], labels[b], n1 + n2, prod.is_zero))
    return YonedaQuiverReport(generators, tuple(products), bound)


def products_vanish(
    algebra: FiniteAlgebra, total_degree: int
) -> tuple[bool, int, str | None]:
    """Check every positive-degree basis pair multiplies to zero."""
    checked = 0
    for a in range(1, total_degree):
        for b in range(1, total_degree - a + 1):
            for f in ext_basis(algebra, a):
                for g in ext_basis(algebra, b):
                    checked += 1
                    prod = yoneda_product(g, f)
                    if not prod.is_zero:
                        ids = algebra.quiver.vertex_ids
                        return (
                            False,
                            checked,
                            f"deg {b} x deg {a} at S_{ids[f.source]} is nonzero",
                        )
    return True, checked, None


def dims_of_e(algebra: FiniteAlgebra, bound: int) -> list[int]:
    return [len(ext_basis(algebra, n)) for n in range(bound + 1)]
