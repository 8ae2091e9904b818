"""Independent brute-force oracles used to pin expected values.

Everything here recomputes structure from first principles, sharing as little
code as possible with the package: paths are enumerated by exhaustive walks,
radical powers by explicit products of algebra elements, and hom spaces by
solving the commuting-square equations directly.
"""

from __future__ import annotations

import itertools

import numpy as np

from quiverhom.algebra import FiniteAlgebra, MonomialPresentation, Quiver


def walks_up_to(quiver: Quiver, max_len: int) -> list[tuple[int, tuple[int, ...]]]:
    """Every composable walk (source, arrows) with length <= max_len."""
    out: list[tuple[int, tuple[int, ...]]] = [(v, ()) for v in range(quiver.num_vertices)]
    frontier = list(out)
    for _ in range(max_len):
        nxt = []
        for src, word in frontier:
            at = quiver.arrows[word[-1]].target if word else src
            for a, arrow in enumerate(quiver.arrows):
                if arrow.source == at:
                    nxt.append((src, word + (a,)))
        out.extend(nxt)
        frontier = nxt
    return out


def contains_factor(word: tuple[int, ...], rel: tuple[int, ...]) -> bool:
    return any(word[i : i + len(rel)] == rel for i in range(len(word) - len(rel) + 1))


def normal_paths_brute(pres: MonomialPresentation, max_len: int) -> list[tuple[int, tuple[int, ...]]]:
    """Normal paths of length 1..max_len by filtering all walks."""
    rels = [r.arrows for r in pres.relations]
    if pres.truncate:
        max_len = min(max_len, pres.truncate - 1)
    result = []
    for src, word in walks_up_to(pres.quiver, max_len):
        if not word:
            continue
        if pres.truncate and len(word) >= pres.truncate:
            continue
        if any(contains_factor(word, r) for r in rels):
            continue
        result.append((src, word))
    return result


def radical_power_dims(algebra: FiniteAlgebra, n: int) -> list[int]:
    """dim J^k for k = 0..n by explicit products of spanning vectors."""

    def span_dim(vectors: list[np.ndarray]) -> int:
        if not vectors:
            return 0
        m = np.array(vectors, dtype=np.int64).T % algebra.p
        from quiverhom import fp

        return fp.rank(m, algebra.p)

    unit = [np.eye(algebra.dim, dtype=np.int64)[i] for i in range(algebra.dim)]
    rad = [unit[i] for i, b in enumerate(algebra.basis) if b.raddeg >= 1]
    layers = [unit, rad]
    while len(layers) <= n:
        prev = layers[-1]
        nxt = []
        for x in prev:
            for y in rad:
                v = algebra.multiply_vectors(x, y)
                if v.any():
                    nxt.append(v)
        layers.append(nxt)
    return [span_dim(layer) for layer in layers[: n + 1]]


def loewy_length_brute(algebra: FiniteAlgebra) -> int:
    dims = radical_power_dims(algebra, algebra.dim + 1)
    for k, d in enumerate(dims):
        if d == 0:
            return k
    raise AssertionError("radical did not vanish")


def associativity_samples(algebra: FiniteAlgebra, count: int, seed: int) -> int:
    """Check (xy)z == x(yz) on random triples; returns how many were checked."""
    import random

    rng = random.Random(seed)
    n = algebra.dim
    checked = 0
    for _ in range(count):
        x, y, z = (rng.randrange(n) for _ in range(3))
        ex = np.eye(n, dtype=np.int64)
        lhs = algebra.multiply_vectors(algebra.multiply_vectors(ex[x], ex[y]), ex[z])
        rhs = algebra.multiply_vectors(ex[x], algebra.multiply_vectors(ex[y], ex[z]))
        assert np.array_equal(lhs, rhs), (x, y, z)
        checked += 1
    return checked


def all_associativity(algebra: FiniteAlgebra) -> None:
    n = algebra.dim
    ex = np.eye(n, dtype=np.int64)
    for x, y, z in itertools.product(range(n), repeat=3):
        lhs = algebra.multiply_vectors(algebra.multiply_vectors(ex[x], ex[y]), ex[z])
        rhs = algebra.multiply_vectors(ex[x], algebra.multiply_vectors(ex[y], ex[z]))
        assert np.array_equal(lhs, rhs), (x, y, z)
