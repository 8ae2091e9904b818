"""Exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced mod p.  A subspace is
always presented as a matrix whose *columns* span it.  All reductions pick the
first usable pivot, so bases, particular solutions and complements are
deterministic functions of the input.

The module also hosts the work meter: every echelon pass and matrix product
charges an operation count, and a configured limit turns runaway computations
into a WorkBoundExceeded instead of a hang.  The CLI wires the limit to the
HOMOTOOL_MAX_DIM environment variable; library callers get no limit unless
they ask for one.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "WorkBoundExceeded",
    "set_work_limit",
    "work_used",
    "charge",
    "modp",
    "zeros",
    "eye",
    "inv_scalar",
    "matmul",
    "rref",
    "rank",
    "solve",
    "kernel",
    "column_basis",
    "extend_basis",
    "complement",
    "intersect",
    "in_column_span",
    "spans_equal",
    "invert",
]


class WorkBoundExceeded(RuntimeError):
    """Raised when the configured field-operation budget is exhausted."""


_METER = {"used": 0, "limit": None}


def set_work_limit(limit: int | None) -> None:
    """Install an operation budget (None removes it) and reset the counter."""
    _METER["limit"] = limit
    _METER["used"] = 0


def work_used() -> int:
    return _METER["used"]


def charge(ops: int) -> None:
    _METER["used"] += int(ops)
    limit = _METER["limit"]
    if limit is not None and _METER["used"] > limit:
        raise WorkBoundExceeded(
            f"field-operation budget exhausted ({_METER['used']} > {limit})"
        )


def modp(a, p: int) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    return m


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inv_scalar(a: int, p: int) -> int:
    # p prime, a nonzero mod p
    return pow(int(a) % p, p - 2, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    charge(a.shape[0] * max(a.shape[1], 1) * b.shape[1])
    # entries < p <= 2**16 and inner dim < 2**20 keep int64 exact
    return (a @ b) % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form with the tuple of pivot columns."""
    r = modp(a, p).copy()
    m, n = r.shape
    charge(m * n * (min(m, n) + 1))
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        lead = row + int(nz[0])
        if lead != row:
            r[[row, lead]] = r[[lead, row]]
        r[row] = (r[row] * inv_scalar(r[row, col], p)) % p
        hit = r[:, col] != 0
        hit[row] = False
        if hit.any():
            r[hit] = (r[hit] - np.outer(r[hit, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r, tuple(pivots)


def rank(a: np.ndarray, p: int) -> int:
    return len(rref(a, p)[1])


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a @ x = b (matrix right-hand sides), or None.

    Free variables are set to zero, so the particular solution is
    deterministic.
    """
    a = modp(a, p)
    b = modp(b, p)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    n = a.shape[1]
    r, pivots = rref(np.hstack([a, b]), p)
    if any(c >= n for c in pivots):
        return None
    x = zeros(n, b.shape[1])
    for i, c in enumerate(pivots):
        x[c] = r[i, n:]
    return x


def kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the null space of a."""
    a = modp(a, p)
    n = a.shape[1]
    r, pivots = rref(a, p)
    free = [c for c in range(n) if c not in pivots]
    k = zeros(n, len(free))
    for j, c in enumerate(free):
        k[c, j] = 1
        for i, pc in enumerate(pivots):
            k[pc, j] = (-r[i, c]) % p
    return k


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """The earliest columns of a that form a basis of its column space."""
    a = modp(a, p)
    _, pivots = rref(a, p)
    return a[:, pivots]


def extend_basis(w: np.ndarray, u: np.ndarray, p: int) -> np.ndarray:
    """Columns of u extending col(w) to a basis of col(w) + col(u)."""
    w = modp(w, p)
    u = modp(u, p)
    if w.shape[0] != u.shape[0]:
        raise ValueError(f"ambient mismatch {w.shape} vs {u.shape}")
    _, pivots = rref(np.hstack([w, u]), p)
    chosen = [c - w.shape[1] for c in pivots if c >= w.shape[1]]
    return u[:, chosen]


def complement(w: np.ndarray, p: int) -> np.ndarray:
    """Standard basis vectors completing col(w) to the full ambient space."""
    return extend_basis(w, eye(w.shape[0]), p)


def intersect(u: np.ndarray, w: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning col(u) intersected with col(w)."""
    u = modp(u, p)
    w = modp(w, p)
    if u.shape[0] != w.shape[0]:
        raise ValueError(f"ambient mismatch {u.shape} vs {w.shape}")
    if u.shape[1] == 0 or w.shape[1] == 0:
        return zeros(u.shape[0], 0)
    k = kernel(np.hstack([u, (-w) % p]), p)
    vecs = matmul(u, k[: u.shape[1]], p)
    return column_basis(vecs, p)


def in_column_span(w: np.ndarray, v: np.ndarray, p: int) -> bool:
    return solve(w, v, p) is not None


def spans_equal(u: np.ndarray, w: np.ndarray, p: int) -> bool:
    ru = rank(u, p)
    if ru != rank(w, p):
        return False
    return rank(np.hstack([modp(u, p), modp(w, p)]), p) == ru


def invert(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix; raises if singular."""
    a = modp(a, p)
    m, n = a.shape
    if m != n:
        raise ValueError(f"not square: {a.shape}")
    x = solve(a, eye(n), p)
    if x is None or rank(a, p) != n:
        raise ValueError("matrix is singular")
    return x


if __name__ == "__main__":
    a = modp([[1, 2], [3, 4]], 5)
    assert np.array_equal(matmul(a, invert(a, 5), 5), eye(2))
    assert kernel(modp([[1, 1, 0]], 2), 2).shape == (3, 2)
    print("[fp] ok")
