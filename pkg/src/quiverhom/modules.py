"""Quiver representations and minimal projective resolutions over F_p.

A representation assigns a vector space to every vertex and a matrix to
every arrow (rows indexed by the target vertex, columns by the source).
Projectives P(i) carry the normal-path basis with source i, so their
radical filtration is coordinate-aligned; everything else is exact
linear algebra on top of that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import fp
from .algebra import FiniteAlgebra
from .errors import InternalInvariantError


def _empty(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


class Representation:
    """Finite-dimensional module presented by per-vertex spaces and arrow matrices."""

    __slots__ = ("algebra", "dims", "act")

    def __init__(
        self,
        algebra: FiniteAlgebra,
        dims: Sequence[int],
        act: Sequence[np.ndarray],
    ) -> None:
        quiver = algebra.quiver
        if len(dims) != algebra.num_vertices:
            raise ValueError("dimension vector does not match the vertex count")
        if len(act) != len(quiver.arrows):
            raise ValueError("need one matrix per arrow")
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        mats = []
        for t, arrow in enumerate(quiver.arrows):
            m = np.asarray(act[t], dtype=np.int64)
            want = (self.dims[arrow.target], self.dims[arrow.source])
            if m.shape != want:
                raise ValueError(
                    f"arrow {arrow.name}: matrix shape {m.shape}, expected {want}"
                )
            mats.append(m % algebra.p)
        self.act = tuple(mats)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    def act_word(self, word: Iterable[int], source: int) -> np.ndarray:
        """Matrix of the path action, walking the arrows left to right."""
        m = fp.eye(self.dims[source])
        v = source
        for t in word:
            arrow = self.algebra.quiver.arrows[t]
            if arrow.source != v:
                raise ValueError("word does not compose")
            m = fp.matmul(self.act[t], m, self.algebra.p)
            v = arrow.target
        return m

    def act_element(self, basis_index: int) -> np.ndarray:
        """Action matrix of an algebra basis element, from its source to its target."""
        b = self.algebra.basis[basis_index]
        out = _empty(self.dims[b.target], self.dims[b.source])
        for coeff, word in b.expansion:
            out = (out + coeff * self.act_word(word, b.source)) % self.algebra.p
        return out

    def dimvec(self) -> tuple[int, ...]:
        return self.dims

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"


class ModuleMap:
    """Map of representations: one matrix per vertex, commuting with arrows."""

    __slots__ = ("source", "target", "mats")

    def __init__(
        self,
        source: Representation,
        target: Representation,
        mats: Sequence[np.ndarray],
    ) -> None:
        self.source = source
        self.target = target
        fixed = []
        for v in range(len(source.dims)):
            m = np.asarray(mats[v], dtype=np.int64)
            want = (target.dims[v], source.dims[v])
            if m.shape != want:
                raise ValueError(f"vertex {v}: matrix shape {m.shape}, expected {want}")
            fixed.append(m % source.algebra.p)
        self.mats = tuple(fixed)

    @property
    def is_zero(self) -> bool:
        return all(not m.any() for m in self.mats)

    def commutes(self) -> bool:
        p = self.source.algebra.p
        for t, arrow in enumerate(self.source.algebra.quiver.arrows):
            u, w = arrow.source, arrow.target
            lhs = fp.matmul(self.target.act[t], self.mats[u], p)
            rhs = fp.matmul(self.mats[w], self.source.act[t], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def __repr__(self) -> str:
        return f"ModuleMap({self.source.dims} -> {self.target.dims})"


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g after f."""
    p = f.source.algebra.p
    return ModuleMap(
        f.source, g.target, [fp.matmul(g.mats[v], f.mats[v], p) for v in range(len(f.mats))]
    )


def identity_map(m: Representation) -> ModuleMap:
    return ModuleMap(m, m, [fp.eye(d) for d in m.dims])


def zero_map(source: Representation, target: Representation) -> ModuleMap:
    return ModuleMap(
        source, target, [_empty(target.dims[v], source.dims[v]) for v in range(len(source.dims))]
    )


def zero_module(algebra: FiniteAlgebra) -> Representation:
    nv = algebra.num_vertices
    return Representation(
        algebra,
        [0] * nv,
        [_empty(0, 0) for _ in algebra.quiver.arrows],
    )


def simple_module(algebra: FiniteAlgebra, i: int) -> Representation:
    dims = [1 if v == i else 0 for v in range(algebra.num_vertices)]
    act = [
        _empty(dims[a.target], dims[a.source]) for a in algebra.quiver.arrows
    ]
    return Representation(algebra, dims, act)


def semisimple_top(algebra: FiniteAlgebra) -> Representation:
    """A/J as a representation: one dimension per vertex, arrows act as zero."""
    nv = algebra.num_vertices
    return Representation(
        algebra, [1] * nv, [_empty(1, 1) for _ in algebra.quiver.arrows]
    )


class ProjectiveRep:
    """Direct sum of indecomposable projectives P(i), on the normal-path basis.

    Coordinates at vertex v enumerate pairs (summand, basis element with the
    summand's source and target v), summands first.  The radical filtration
    is read off the path degree of each coordinate.
    """

    __slots__ = ("algebra", "summands", "rep", "coords", "gen_pos", "raddeg")

    def __init__(self, algebra: FiniteAlgebra, summands: Sequence[int]) -> None:
        self.algebra = algebra
        self.summands = tuple(int(i) for i in summands)
        nv = algebra.num_vertices
        # summand counts grow fast on wild algebras; charge before allocating
        fp.charge(len(self.summands) * max(1, algebra.dim))
        coords: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
        by_source: dict[int, list[int]] = {}
        for idx, b in enumerate(algebra.basis):
            by_source.setdefault(b.source, []).append(idx)
        for k, i in enumerate(self.summands):
            for idx in by_source.get(i, []):
                coords[algebra.basis[idx].target].append((k, idx))
        self.coords = tuple(tuple(c) for c in coords)
        dims = [len(c) for c in coords]
        pos_of = [
            {pair: n for n, pair in enumerate(coords[v])} for v in range(nv)
        ]
        act = []
        for t, arrow in enumerate(algebra.quiver.arrows):
            u, w = arrow.source, arrow.target
            fp.charge(dims[w] * dims[u])
            m = _empty(dims[w], dims[u])
            a_elt = algebra.arrow_element(t)
            for col, (k, idx) in enumerate(self.coords[u]):
                for out_idx, coeff in algebra.multiply(idx, a_elt):
                    m[pos_of[w][(k, out_idx)], col] = coeff
            act.append(m)
        self.rep = Representation(algebra, dims, act)
        gen_pos = []
        for k, i in enumerate(self.summands):
            gen_pos.append((i, pos_of[i][(k, algebra.idempotent_index(i))]))
        self.gen_pos = tuple(gen_pos)
        self.raddeg = tuple(
            np.array([algebra.basis[idx].raddeg for _, idx in self.coords[v]], dtype=np.int64)
            for v in range(nv)
        )

    @property
    def is_zero(self) -> bool:
        return not self.summands

    def rad_subspace(self, v: int, power: int = 1) -> np.ndarray:
        """Standard-basis columns spanning (J^power P)_v."""
        n = self.rep.dims[v]
        picks = np.nonzero(self.raddeg[v] >= power)[0]
        out = _empty(n, len(picks))
        for col, row in enumerate(picks):
            out[row, col] = 1
        return out

    def dimvec_labels(self) -> list[str]:
        return [self.algebra.quiver.vertex_ids[i] for i in self.summands]


def projective_module(algebra: FiniteAlgebra, i: int) -> ProjectiveRep:
    return ProjectiveRep(algebra, [i])


def map_from_generators(
    p: ProjectiveRep, target: Representation, values: Sequence[np.ndarray]
) -> ModuleMap:
    """The module map P -> target sending the k-th summand generator to values[k].

    values[k] is a coordinate vector in target at the summand's vertex; the
    rest of the map is forced by the right-extension action on path coordinates.
    """
    if len(values) != len(p.summands):
        raise ValueError("need one value per summand")
    alg = p.algebra
    mats = []
    for v in range(alg.num_vertices):
        fp.charge(target.dims[v] * p.rep.dims[v])
        m = _empty(target.dims[v], p.rep.dims[v])
        for col, (k, idx) in enumerate(p.coords[v]):
            vec = np.asarray(values[k], dtype=np.int64).reshape(-1)
            m[:, col] = (target.act_element(idx) @ vec) % alg.p
        mats.append(m)
    return ModuleMap(p.rep, target, mats)


def radical_subspaces(m: Representation) -> list[np.ndarray]:
    """Per-vertex column basis of (JM)_v = sum of incoming arrow images."""
    p = m.algebra.p
    out = []
    for v in range(len(m.dims)):
        blocks = [
            m.act[t]
            for t, a in enumerate(m.algebra.quiver.arrows)
            if a.target == v and m.act[t].size
        ]
        if not blocks:
            out.append(_empty(m.dims[v], 0))
            continue
        out.append(fp.column_basis(np.hstack(blocks), p))
    return out


def socle_subspaces(m: Representation) -> list[np.ndarray]:
    """Per-vertex basis of Soc(M)_v, the joint kernel of outgoing arrows."""
    p = m.algebra.p
    out = []
    for v in range(len(m.dims)):
        blocks = [
            m.act[t]
            for t, a in enumerate(m.algebra.quiver.arrows)
            if a.source == v
        ]
        if not blocks:
            out.append(fp.eye(m.dims[v]))
            continue
        out.append(fp.kernel(np.vstack(blocks), p))
    return out


def sub_representation(
    m: Representation, subspaces: Sequence[np.ndarray]
) -> tuple[Representation, ModuleMap]:
    """The submodule spanned by the given per-vertex columns, with its inclusion.

    The spans must be arrow-stable; violations surface as unsolvable
    coordinate systems.
    """
    p = m.algebra.p
    cols = [np.asarray(s, dtype=np.int64) % p for s in subspaces]
    dims = [c.shape[1] for c in cols]
    act = []
    for t, arrow in enumerate(m.algebra.quiver.arrows):
        u, w = arrow.source, arrow.target
        image = fp.matmul(m.act[t], cols[u], p)
        sol = fp.solve(cols[w], image, p)
        if sol is None:
            raise InternalInvariantError("subspace family is not arrow-stable")
        act.append(sol)
    sub = Representation(m.algebra, dims, act)
    return sub, ModuleMap(sub, m, cols)


def radical(m: Representation) -> tuple[Representation, ModuleMap]:
    return sub_representation(m, radical_subspaces(m))


def socle(m: Representation) -> tuple[Representation, ModuleMap]:
    return sub_representation(m, socle_subspaces(m))


def top_dims(m: Representation) -> tuple[int, ...]:
    rad = radical_subspaces(m)
    return tuple(m.dims[v] - rad[v].shape[1] for v in range(len(m.dims)))


def direct_sum(
    a: Representation, b: Representation
) -> tuple[Representation, tuple[ModuleMap, ModuleMap], tuple[ModuleMap, ModuleMap]]:
    """Block sum with the two inclusions and the two projections."""
    dims = [a.dims[v] + b.dims[v] for v in range(len(a.dims))]
    act = []
    for t in range(len(a.act)):
        arrow = a.algebra.quiver.arrows[t]
        u, w = arrow.source, arrow.target
        m = _empty(dims[w], dims[u])
        m[: a.dims[w], : a.dims[u]] = a.act[t]
        m[a.dims[w] :, a.dims[u] :] = b.act[t]
        act.append(m)
    total = Representation(a.algebra, dims, act)
    inc_a, inc_b, pr_a, pr_b = [], [], [], []
    for v in range(len(dims)):
        ia = _empty(dims[v], a.dims[v])
        ia[: a.dims[v]] = fp.eye(a.dims[v])
        ib = _empty(dims[v], b.dims[v])
        ib[a.dims[v] :] = fp.eye(b.dims[v])
        inc_a.append(ia)
        inc_b.append(ib)
        pr_a.append(ia.T.copy())
        pr_b.append(ib.T.copy())
    return (
        total,
        (ModuleMap(a, total, inc_a), ModuleMap(b, total, inc_b)),
        (ModuleMap(total, a, pr_a), ModuleMap(total, b, pr_b)),
    )


@dataclass(frozen=True)
class Cover:
    """A projective cover P -> M together with the chosen top lifts."""

    proj: ProjectiveRep
    eps: ModuleMap
    targets: tuple[np.ndarray, ...]
    rad: tuple[np.ndarray, ...]


def projective_cover(m: Representation) -> Cover:
    alg = m.algebra
    rad = radical_subspaces(m)
    summands: list[int] = []
    targets: list[np.ndarray] = []
    for v in range(alg.num_vertices):
        lifts = fp.extend_basis(rad[v], fp.eye(m.dims[v]), alg.p)
        for c in range(lifts.shape[1]):
            summands.append(v)
            targets.append(lifts[:, c].copy())
    proj = ProjectiveRep(alg, summands)
    eps = map_from_generators(proj, m, targets)
    return Cover(proj, eps, tuple(targets), tuple(rad))


def syzygy(m: Representation) -> tuple[Representation, ModuleMap, Cover]:
    """Kernel of the projective cover, as a submodule of rad P."""
    cov = projective_cover(m)
    p = m.algebra.p
    kernels = [fp.kernel(cov.eps.mats[v], p) for v in range(len(m.dims))]
    omega, embed = sub_representation(cov.proj.rep, kernels)
    return omega, embed, cov


def chain_lift_step(
    h: ModuleMap,
    cov_src: Cover,
    emb_src: ModuleMap,
    omega_src: Representation,
    cov_tgt: Cover,
    emb_tgt: ModuleMap,
    omega_tgt: Representation,
    rng=None,
) -> ModuleMap:
    """Push h: M -> N one syzygy step to the left along chosen covers.

    Solves for generator preimages at the cover level, then restricts to the
    kernels.  The optional rng perturbs each preimage inside the cover's
    kernel; any perturbation must wash out after composing with a map into a
    semisimple module.
    """
    alg = h.source.algebra
    p = alg.p
    values = []
    for k, v in enumerate(cov_src.proj.summands):
        y = (h.mats[v] @ cov_src.targets[k]) % p
        z = fp.solve(cov_tgt.eps.mats[v], y.reshape(-1, 1), p)
        if z is None:
            raise InternalInvariantError("cover is not surjective at a generator")
        z = z[:, 0]
        if rng is not None:
            ker = fp.kernel(cov_tgt.eps.mats[v], p)
            if ker.shape[1]:
                mix = np.array(
                    [rng.randrange(p) for _ in range(ker.shape[1])], dtype=np.int64
                )
                z = (z + ker @ mix) % p
        values.append(z)
    big = map_from_generators(cov_src.proj, cov_tgt.proj.rep, values)
    mats = []
    for v in range(alg.num_vertices):
        image = fp.matmul(big.mats[v], emb_src.mats[v], p)
        sol = fp.solve(emb_tgt.mats[v], image, p)
        if sol is None:
            raise InternalInvariantError("lift does not preserve the kernel")
        mats.append(sol)
    return ModuleMap(omega_src, omega_tgt, mats)


class ResolutionTower:
    """Lazily extended minimal projective resolution of one module.

    Index n carries the n-th syzygy, its cover P_n and the embedding of the
    (n+1)-st syzygy into P_n.  Extension is append-only, so cached towers can
    be shared by every consumer.
    """

    __slots__ = ("module", "syzygies", "covers", "embeds")

    def __init__(self, module: Representation) -> None:
        self.module = module
        self.syzygies: list[Representation] = [module]
        self.covers: list[Cover] = []
        self.embeds: list[ModuleMap] = []

    def ensure(self, n: int) -> None:
        """Make covers[0..n] (hence syzygies[0..n+1]) available."""
        while len(self.covers) <= n:
            omega, embed, cov = syzygy(self.syzygies[-1])
            self.covers.append(cov)
            self.embeds.append(embed)
            self.syzygies.append(omega)

    def syzygy_module(self, n: int) -> Representation:
        if n > 0:
            self.ensure(n - 1)
        return self.syzygies[n]

    def multiplicities(self, n: int) -> tuple[int, ...]:
        """Multiplicity of each P(j) in P_n, i.e. dim Ext^n(module, S_j)."""
        self.ensure(n)
        counts = [0] * self.module.algebra.num_vertices
        for i in self.covers[n].proj.summands:
            counts[i] += 1
        return tuple(counts)


def tower(algebra: FiniteAlgebra, i: int) -> ResolutionTower:
    """The cached minimal resolution tower of the simple S_i."""
    cached = algebra._towers.get(i)
    if cached is None:
        cached = ResolutionTower(simple_module(algebra, i))
        algebra._towers[i] = cached
    return cached


@dataclass(frozen=True)
class ResolutionSegment:
    """An initial segment P_n -> ... -> P_0 -> M of a minimal resolution."""

    module: Representation
    covers: tuple[ProjectiveRep, ...]
    differentials: tuple[ModuleMap, ...]
    augmentation: ModuleMap

    def dimvecs(self) -> list[tuple[int, ...]]:
        return [p.rep.dims for p in self.covers]

    def multiplicity_vectors(self) -> list[tuple[int, ...]]:
        nv = self.module.algebra.num_vertices
        out = []
        for p in self.covers:
            counts = [0] * nv
            for i in p.summands:
                counts[i] += 1
            out.append(tuple(counts))
        return out


def minimal_resolution(m: Representation, n: int) -> ResolutionSegment:
    if n < 0:
        raise ValueError("resolution length must be >= 0")
    t = ResolutionTower(m)
    t.ensure(n)
    diffs = []
    for k in range(1, n + 1):
        diffs.append(compose(t.embeds[k - 1], t.covers[k].eps))
    return ResolutionSegment(
        m,
        tuple(c.proj for c in t.covers[: n + 1]),
        tuple(diffs),
        t.covers[0].eps,
    )


def ext_dims(m: Representation, n: int) -> list[tuple[int, ...]]:
    """dim Ext^k(M, S_j) for 0 <= k <= n, one multiplicity vector per degree."""
    t = ResolutionTower(m)
    return [t.multiplicities(k) for k in range(n + 1)]


def ext_table(algebra: FiniteAlgebra, n: int) -> list[list[tuple[int, ...]]]:
    """table[k][i] = multiplicity vector of Ext^k(S_i, -) over all simples."""
    table: list[list[tuple[int, ...]]] = []
    for k in range(n + 1):
        table.append(
            [tower(algebra, i).multiplicities(k) for i in range(algebra.num_vertices)]
        )
    return table


@dataclass(frozen=True)
class BoundedDim:
    """A homological dimension, either known exactly or only bounded below."""

    finite: bool
    value: int

    def as_json(self) -> dict:
        return {"kind": "finite" if self.finite else "at_least", "value": self.value}

    def __str__(self) -> str:
        return f"{self.value}" if self.finite else f">={self.value}"


def finite_dim(d: int) -> BoundedDim:
    return BoundedDim(True, d)


def at_least(b: int) -> BoundedDim:
    return BoundedDim(False, b)


def proj_dim_bounded(m: Representation, bound: int) -> BoundedDim:
    if bound < 0:
        raise ValueError("bound must be >= 0")
    t = ResolutionTower(m)
    for k in range(bound + 2):
        if t.syzygy_module(k).is_zero:
            return finite_dim(max(k - 1, 0))
    return at_least(bound + 1)


def dual_over_opposite(m: Representation) -> Representation:
    """The dual representation, living over the opposite algebra."""
    op = m.algebra.opposite()
    return Representation(op, m.dims, [a.T.copy() for a in m.act])


def inj_dim_bounded(m: Representation, bound: int) -> BoundedDim:
    return proj_dim_bounded(dual_over_opposite(m), bound)


def gldim_bounded(algebra: FiniteAlgebra, bound: int) -> BoundedDim:
    """max over simples of pd, exact when every simple resolves within the bound."""
    best = 0
    for i in range(algebra.num_vertices):
        pd = proj_dim_bounded(simple_module(algebra, i), bound)
        if not pd.finite:
            return pd
        best = max(best, pd.value)
    return finite_dim(best)


def hom_space(m: Representation, n: Representation) -> list[ModuleMap]:
    """Basis of Hom(M, N) by solving the arrow-commutation system exactly."""
    p = m.algebra.p
    nv = len(m.dims)
    sizes = [n.dims[v] * m.dims[v] for v in range(nv)]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    rows: list[np.ndarray] = []
    for t, arrow in enumerate(m.algebra.quiver.arrows):
        u, w = arrow.source, arrow.target
        block_rows = n.dims[w] * m.dims[u]
        if block_rows == 0:
            continue
        eq = _empty(block_rows, total)
        if sizes[u]:
            eq[:, offsets[u] : offsets[u + 1]] = np.kron(n.act[t], fp.eye(m.dims[u]))
        if sizes[w]:
            eq[:, offsets[w] : offsets[w + 1]] -= np.kron(fp.eye(n.dims[w]), m.act[t].T)
        rows.append(eq % p)
    if rows:
        system = np.vstack(rows)
        basis = fp.kernel(system, p)
    else:
        basis = fp.eye(total)
    out = []
    for c in range(basis.shape[1]):
        mats = []
        for v in range(nv):
            flat = basis[offsets[v] : offsets[v + 1], c]
            mats.append(flat.reshape(n.dims[v], m.dims[v]))
        out.append(ModuleMap(m, n, mats))
    return out


def validate_representation(m: Representation) -> None:
    """Assert every defining relation acts as zero; for tests and debugging."""
    alg = m.algebra
    if alg.kind == "monomial":
        for rel in alg.normalized_relations:
            src = alg.quiver.arrows[rel[0]].source
            if m.act_word(rel, src).any():
                raise InternalInvariantError("monomial relation acts nonzero")
    else:
        for rel in alg.relation_vectors():
            acc = None
            for coeff, word in rel:
                src = alg.quiver.arrows[word[0]].source
                term = coeff * m.act_word(word, src)
                acc = term if acc is None else acc + term
            if acc is not None and (acc % alg.p).any():
                raise InternalInvariantError("quadratic relation acts nonzero")
    # Loewy wall: every word of the critical length acts as zero
    ell = alg.loewy_length
    quiver = alg.quiver
    stack: list[tuple[int, tuple[int, ...]]] = [
        (v, ()) for v in range(alg.num_vertices)
    ]
    while stack:
        v, word = stack.pop()
        if len(word) == ell:
            if m.act_word(word, quiver.arrows[word[0]].source).any():
                raise InternalInvariantError("path beyond the Loewy wall acts nonzero")
            continue
        for t in quiver.out_arrows[v]:
            stack.append((quiver.arrows[t].target, word + (t,)))
