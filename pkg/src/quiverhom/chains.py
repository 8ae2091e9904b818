"""Overlap chains of a monomial presentation and their decision procedures.

Chains are built degree by degree: a degree-(k+1) chain extends a degree-k
chain by the shortest new word that lets some relation cover the tail while
properly overlapping the previous covering relation.  Because the extension
rule only inspects the last covering relation, chains of degree >= 2
correspond to walks in a finite transition graph on the relation set, which
turns global-dimension finiteness and eventual self-extension vanishing into
graph reachability questions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FiniteAlgebra
from .errors import PreconditionError


def _require_monomial(algebra: FiniteAlgebra) -> None:
    if algebra.kind != "monomial":
        raise PreconditionError(
            "chain combinatorics needs a monomial presentation; "
            f"got kind {algebra.kind!r}"
        )


def _word_source(algebra: FiniteAlgebra, word: tuple[int, ...]) -> int:
    return algebra.quiver.arrows[word[0]].source


def _word_target(algebra: FiniteAlgebra, word: tuple[int, ...]) -> int:
    return algebra.quiver.arrows[word[-1]].target


def _word_str(algebra: FiniteAlgebra, word: tuple[int, ...]) -> str:
    return " ".join(algebra.quiver.arrows[t].name for t in word)


@dataclass(frozen=True)
class Chain:
    """A chain: its path, degree, and the covering relations with offsets."""

    source: int
    arrows: tuple[int, ...]
    degree: int
    coverings: tuple[tuple[int, int], ...]

    def label(self, algebra: FiniteAlgebra) -> str:
        if not self.arrows:
            return algebra.quiver.vertex_ids[self.source]
        return _word_str(algebra, self.arrows)


def chain_endpoints(algebra: FiniteAlgebra, c: Chain) -> tuple[int, int]:
    if not c.arrows:
        return c.source, c.source
    return _word_source(algebra, c.arrows), _word_target(algebra, c.arrows)


def _extension_candidates(
    words: tuple[tuple[int, ...], ...], r: int, min_off: int
) -> list[tuple[int, int, tuple[int, ...]]]:
    """Minimal proper-overlap extensions of a chain whose last cover is words[r].

    min_off is where the previous relation ended inside words[r]: the next
    relation must start at or after it, or it would overlap two covers back.
    Returns (next relation, overlap length, extension word).  A candidate
    survives when no other candidate's word is a proper prefix of its own;
    equal words keep the longest-overlap, lowest-index cover.
    """
    base = words[r]
    n = len(base)
    raw: dict[tuple[int, ...], tuple[int, int]] = {}
    for r2, cand in enumerate(words):
        # start offset k inside base, past the previous cover, before its end
        for k in range(max(min_off, 1), n):
            overlap = n - k
            if len(cand) <= overlap:
                continue
            if cand[:overlap] != base[k:]:
                continue
            u = cand[overlap:]
            # equal words: keep the smallest start offset, then lowest index
            best = raw.get(u)
            if best is None or (k, r2) < (n - best[1], best[0]):
                raw[u] = (r2, overlap)
    out = []
    for u, (r2, overlap) in raw.items():
        if any(other != u and other == u[: len(other)] for other in raw):
            continue
        out.append((r2, overlap, u))
    out.sort(key=lambda item: (item[2], item[0]))
    return out


def chains_up_to(algebra: FiniteAlgebra, n: int) -> list[list[Chain]]:
    """Gamma_0 .. Gamma_n; degree 0 = vertices, 1 = arrows, 2 = relations."""
    _require_monomial(algebra)
    if n < 0:
        raise ValueError("degree bound must be >= 0")
    words = algebra.normalized_relations
    out: list[list[Chain]] = []
    out.append([Chain(v, (), 0, ()) for v in range(algebra.num_vertices)])
    if n == 0:
        return out
    out.append(
        [
            Chain(a.source, (t,), 1, ())
            for t, a in enumerate(algebra.quiver.arrows)
        ]
    )
    if n >= 2:
        out.append(
            [
                Chain(_word_source(algebra, w), w, 2, ((r, 0),))
                for r, w in enumerate(words)
            ]
        )
    for k in range(3, n + 1):
        nxt = []
        for c in out[k - 1]:
            r_last, off = c.coverings[-1]
            if len(c.coverings) >= 2:
                r_prev, off_prev = c.coverings[-2]
                min_off = off_prev + len(words[r_prev]) - off
            else:
                min_off = 1
            for r2, overlap, u in _extension_candidates(words, r_last, min_off):
                arrows = c.arrows + u
                cover_off = len(arrows) - len(words[r2])
                nxt.append(
                    Chain(c.source, arrows, k, c.coverings + ((r2, cover_off),))
                )
        out.append(nxt)
    return out


@dataclass(frozen=True)
class ChainTransitionGraph:
    """Relation-overlap transitions; walks of length k-2 realize Gamma_k.

    A node is a state (relation, offset floor): the floor records where the
    previous cover ended inside the relation, since the next one must start
    at or after that point.  Chains enter at floor 1, and only states
    reachable from an entry are materialized.
    """

    words: tuple[tuple[int, ...], ...]
    states: tuple[tuple[int, int], ...]
    entry: tuple[int, ...]
    sources: tuple[int, ...]
    targets: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    def out_edges(self, st: int) -> list[tuple[int, int]]:
        return [(b, ell) for a, b, ell in self.edges if a == st]

    def successors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.states]
        for a, b, _ in self.edges:
            adj[a].append(b)
        return adj

    def state_label(self, algebra: FiniteAlgebra, st: int) -> str:
        r, floor = self.states[st]
        word = _word_str(algebra, self.words[r])
        return word if floor == 1 else f"{word} @{floor}"

    def to_dot(self, algebra: FiniteAlgebra) -> str:
        lines = ["digraph chains {"]
        for st in range(len(self.states)):
            lines.append(f'  n{st} [label="{self.state_label(algebra, st)}"];')
        for a, b, ell in self.edges:
            lines.append(f'  n{a} -> n{b} [label="{ell}"];')
        lines.append("}")
        return "\n".join(lines)


def transition_graph(algebra: FiniteAlgebra) -> ChainTransitionGraph:
    _require_monomial(algebra)
    words = algebra.normalized_relations
    index: dict[tuple[int, int], int] = {}
    states: list[tuple[int, int]] = []
    queue: list[tuple[int, int]] = []

    def intern(r: int, floor: int) -> int:
        key = (r, floor)
        if key not in index:
            index[key] = len(states)
            states.append(key)
            queue.append(key)
        return index[key]

    entry = tuple(intern(r, 1) for r in range(len(words)))
    edges = []
    qi = 0
    while qi < len(queue):
        r, floor = queue[qi]
        qi += 1
        a = index[(r, floor)]
        for r2, overlap, _ in _extension_candidates(words, r, floor):
            edges.append((a, intern(r2, overlap), overlap))
    return ChainTransitionGraph(
        words,
        tuple(states),
        entry,
        tuple(_word_source(algebra, words[r]) for r, _ in states),
        tuple(_word_target(algebra, words[r]) for r, _ in states),
        tuple(edges),
    )


def chain_ext_table(algebra: FiniteAlgebra, n: int) -> list[list[list[int]]]:
    """table[k][i][j] = number of degree-k chains with source i and target j.

    Degrees >= 2 are counted by walk propagation on the transition graph, so
    the table stays cheap even when individual chain paths get long.
    """
    _require_monomial(algebra)
    nv = algebra.num_vertices
    table = [[[0] * nv for _ in range(nv)] for _ in range(n + 1)]
    for v in range(nv):
        table[0][v][v] = 1
    if n == 0:
        return table
    for a in algebra.quiver.arrows:
        table[1][a.source][a.target] += 1
    graph = transition_graph(algebra)
    adj = graph.successors()
    for i in range(nv):
        ways = [0] * len(graph.states)
        for st in graph.entry:
            if graph.sources[st] == i:
                ways[st] = 1
        for k in range(2, n + 1):
            for st, c in enumerate(ways):
                if c:
                    table[k][i][graph.targets[st]] += c
            nxt = [0] * len(ways)
            for st, c in enumerate(ways):
                if c:
                    for st2 in adj[st]:
                        nxt[st2] += c
            ways = nxt
    return table


def _sccs(n: int, adj: list[list[int]]) -> list[list[int]]:
    """Tarjan strongly connected components, iteratively."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while pi < len(adj[v]):
                w = adj[v][pi]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _cycle_witness(
    graph: ChainTransitionGraph, algebra: FiniteAlgebra
) -> list[str] | None:
    """Relation labels along one shortest cycle, if any exists."""
    adj = graph.successors()
    n = len(graph.states)
    for comp in _sccs(n, adj):
        comp_set = set(comp)
        nontrivial = len(comp) > 1 or comp[0] in adj[comp[0]]
        if not nontrivial:
            continue
        start = min(comp)
        # BFS back to start inside the component
        prev: dict[int, int] = {}
        frontier = [w for w in adj[start] if w in comp_set]
        for w in frontier:
            prev.setdefault(w, start)
        seen = set(frontier)
        while frontier and start not in prev:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w in comp_set and w not in seen:
                        seen.add(w)
                        prev[w] = v
                        nxt.append(w)
                    if w == start and start not in prev:
                        prev[start] = v
            frontier = nxt
        cycle = [start]
        at = prev[start]
        while at != start:
            cycle.append(at)
            at = prev[at]
        cycle.reverse()
        return [_word_str(algebra, graph.words[graph.states[st][0]]) for st in cycle]
    return None


@dataclass(frozen=True)
class GldimVerdict:
    finite: bool
    value: int | None
    witness_cycle: tuple[str, ...] | None

    def as_json(self) -> dict:
        if self.finite:
            return {"verdict": "finite", "value": self.value}
        return {"verdict": "infinite", "witness_cycle": list(self.witness_cycle or ())}


def gldim_decide(algebra: FiniteAlgebra) -> GldimVerdict:
    """Exact global dimension of a monomial algebra via chain termination."""
    _require_monomial(algebra)
    graph = transition_graph(algebra)
    cycle = _cycle_witness(graph, algebra)
    if cycle is not None:
        return GldimVerdict(False, None, tuple(cycle))
    n = len(graph.states)
    if n == 0:
        d = 1 if algebra.quiver.arrows else 0
        return GldimVerdict(True, d, None)
    adj = graph.successors()
    # longest walk in a DAG by reverse-topological dynamic programming
    order: list[int] = []
    state = [0] * n
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, 0)]
        state[root] = 1
        while stack:
            v, pi = stack.pop()
            while pi < len(adj[v]) and state[adj[v][pi]]:
                pi += 1
            if pi < len(adj[v]):
                w = adj[v][pi]
                stack.append((v, pi + 1))
                state[w] = 1
                stack.append((w, 0))
            else:
                order.append(v)
    longest = [0] * n
    for v in order:
        for w in adj[v]:
            longest[v] = max(longest[v], 1 + longest[w])
    return GldimVerdict(True, 2 + max(longest), None)


@dataclass(frozen=True)
class SelfExtVerdict:
    """Eventual vanishing of the diagonal chain entries, with the bound m."""

    eventually_zero: bool
    m: int | None
    witness: str | None
    horizon: int
    horizon_note: str

    def as_json(self) -> dict:
        return {
            "eventually_zero": self.eventually_zero,
            "m": self.m,
            "witness": self.witness,
            "horizon": self.horizon,
            "horizon_note": self.horizon_note,
        }


def _longest_simple_path(algebra: FiniteAlgebra) -> int:
    quiver = algebra.quiver
    best = 0
    for start in range(algebra.num_vertices):
        stack = [(start, 0, 1 << start)]
        while stack:
            v, length, seen = stack.pop()
            best = max(best, length)
            for t in quiver.out_arrows[v]:
                w = quiver.arrows[t].target
                if not (seen >> w) & 1:
                    stack.append((w, length + 1, seen | (1 << w)))
    return best


def ext_self_vanishing_decide(algebra: FiniteAlgebra) -> SelfExtVerdict:
    """Decide whether all diagonal Ext entries vanish in high degrees.

    Unbounded diagonal degrees happen exactly when some walk from a relation
    starting at vertex i to a relation ending at i passes through a cycle of
    the transition graph.  When none does, the last nonzero diagonal degree is
    found by a bounded scan and m = that degree + 1 (at least 1, since degree
    zero never vanishes).
    """
    _require_monomial(algebra)
    graph = transition_graph(algebra)
    adj = graph.successors()
    n = len(graph.states)
    rev: list[list[int]] = [[] for _ in range(n)]
    for a, b, _ in graph.edges:
        rev[b].append(a)
    cyclic = set()
    for comp in _sccs(n, adj):
        if len(comp) > 1 or comp[0] in adj[comp[0]]:
            cyclic.update(comp)

    def closure(seed: set[int], edges: list[list[int]]) -> set[int]:
        out = set(seed)
        frontier = list(seed)
        while frontier:
            v = frontier.pop()
            for w in edges[v]:
                if w not in out:
                    out.add(w)
                    frontier.append(w)
        return out

    for i in range(algebra.num_vertices):
        fwd = closure({st for st in graph.entry if graph.sources[st] == i}, adj)
        bwd = closure({st for st in range(n) if graph.targets[st] == i}, rev)
        hot = fwd & bwd & cyclic
        if hot:
            st = min(hot)
            word = graph.words[graph.states[st][0]]
            witness = (
                f"diagonal walks at vertex {algebra.quiver.vertex_ids[i]} pass "
                f"through the cyclic relation {_word_str(algebra, word)}"
            )
            return SelfExtVerdict(False, None, witness, 0, "not scanned")

    max_len = max((len(w) for w in graph.words), default=0)
    horizon = n * max_len + _longest_simple_path(algebra)
    note = (
        "scanned diagonal chain degrees up to #overlap states * max relation "
        "length + longest simple path; a cycle-free walk never revisits a "
        "state, so the diagonal stays zero beyond the horizon"
    )
    last = 0
    if any(a.source == a.target for a in algebra.quiver.arrows):
        last = 1
    table = chain_ext_table(algebra, max(horizon, 2))
    for k in range(2, len(table)):
        if any(table[k][v][v] for v in range(algebra.num_vertices)):
            last = k
    return SelfExtVerdict(True, last + 1, None, horizon, note)
