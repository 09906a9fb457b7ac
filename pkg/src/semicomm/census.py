"""Exhaustive enumeration of small semigroups.

The backtracker fills table cells one at a time (row-major by default) and
rejects a partial table as soon as some triple whose four products are all
decided violates associativity. The search loop is compiled with numba;
order 5 (183732 labeled tables) takes a few seconds.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Callable, Iterator, Sequence

import numpy as np
from numba import njit

from .errors import InputError
from .table import CayleyTable

MAX_ENUMERATION_ORDER = 5


@njit(cache=True)
def _consistent(t, n, i, j):
    # every triple using cell (i, j) in one of its four products
    v = t[i, j]
    for z in range(n):  # (ij)z vs i(jz)
        a = t[v, z]
        b = t[j, z]
        if a >= 0 and b >= 0:
            c = t[i, b]
            if c >= 0 and c != a:
                return False
    for x in range(n):  # (xi)j vs x(ij)
        a = t[x, i]
        if a >= 0:
            left = t[a, j]
            right = t[x, v]
            if left >= 0 and right >= 0 and left != right:
                return False
    for x in range(n):  # (xy)j with xy = i, vs x(yj)
        for y in range(n):
            if t[x, y] == i:
                b = t[y, j]
                if b >= 0:
                    c = t[x, b]
                    if c >= 0 and c != v:
                        return False
    for y in range(n):  # (iy)z vs i(yz) with yz = j
        a = t[i, y]
        if a < 0:
            continue
        for z in range(n):
            if t[y, z] == j:
                left = t[a, z]
                if left >= 0 and left != v:
                    return False
    return True


@njit(cache=True)
def _backtrack(n, cell_i, cell_j, prefix):
    m = n * n
    t = -np.ones((n, n), dtype=np.int8)
    cap = 1024
    out = np.empty((cap, m), dtype=np.int8)
    count = 0
    k0 = prefix.shape[0]
    for k in range(k0):
        t[cell_i[k], cell_j[k]] = prefix[k]
        if not _consistent(t, n, cell_i[k], cell_j[k]):
            return out[:0]
    if k0 == m:
        out[0] = t.ravel()
        return out[:1]
    val = np.full(m, -1, dtype=np.int64)
    k = k0
    while k >= k0:
        i = cell_i[k]
        j = cell_j[k]
        v = val[k] + 1
        placed = False
        while v < n:
            t[i, j] = v
            if _consistent(t, n, i, j):
                placed = True
                break
            v += 1
        if not placed:
            t[i, j] = -1
            val[k] = -1
            k -= 1
            continue
        val[k] = v
        if k == m - 1:
            if count == cap:
                cap *= 2
                grown = np.empty((cap, m), dtype=np.int8)
                grown[:count] = out[:count]
                out = grown
            out[count] = t.ravel()
            count += 1
        else:
            k += 1
    return out[:count]


@njit(cache=True)
def _orbit_minimal(tables, perms, inverses):
    # tables: (N, n*n); keep rows that are lexicographically <= every relabeling
    N = tables.shape[0]
    P = perms.shape[0]
    n = perms.shape[1]
    keep = np.ones(N, dtype=np.bool_)
    for r in range(N):
        for q in range(P):
            p = perms[q]
            inv = inverses[q]
            # compare relabeled table against the original, cell by cell
            for c in range(n * n):
                a = c // n
                b = c % n
                relabeled = p[tables[r, inv[a] * n + inv[b]]]
                orig = tables[r, c]
                if relabeled < orig:
                    keep[r] = False
                    break
                if relabeled > orig:
                    break
            if not keep[r]:
                break
    return keep


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise InputError(f"enumeration order must be in 1..{MAX_ENUMERATION_ORDER}, got {n}")


def _cells(n: int, cell_order: Sequence[tuple[int, int]] | None):
    if cell_order is None:
        cell_order = [(i, j) for i in range(n) for j in range(n)]
    cell_order = [tuple(c) for c in cell_order]
    if sorted(cell_order) != [(i, j) for i in range(n) for j in range(n)]:
        raise InputError("cell_order must list every cell exactly once")
    ci = np.array([c[0] for c in cell_order], dtype=np.int64)
    cj = np.array([c[1] for c in cell_order], dtype=np.int64)
    return ci, cj


def enumerate_array(
    n: int,
    prefix: Sequence[int] = (),
    cell_order: Sequence[tuple[int, int]] | None = None,
) -> np.ndarray:
    """All associative tables of order n as an ``(N, n, n)`` int8 array in
    lexicographic (row-major) order.

    ``prefix`` fixes the values of the first ``len(prefix)`` cells of the
    search order, which partitions the search space for parallel workers.
    """
    _check_order(n)
    ci, cj = _cells(n, cell_order)
    pre = np.asarray(prefix, dtype=np.int8)
    if len(pre) > n * n or (len(pre) and (pre.min() < 0 or pre.max() >= n)):
        raise InputError("bad enumeration prefix")
    flat = _backtrack(n, ci, cj, pre)
    if cell_order is not None and len(flat) > 1:
        flat = flat[np.lexsort(flat.T[::-1])]
    return flat.reshape(-1, n, n)


def partition_prefixes(n: int, jobs: int) -> list[tuple[int, ...]]:
    """Prefixes of the first row splitting the search into about ``jobs`` parts."""
    depth = 0
    while n**depth < jobs and depth < n:
        depth += 1
    return list(itertools.product(range(n), repeat=depth))


def _enumerate_prefix(args):
    n, prefix = args
    return enumerate_array(n, prefix)


@lru_cache(maxsize=None)
def _all_tables_cached(n: int) -> np.ndarray:
    arr = enumerate_array(n)
    arr.setflags(write=False)
    return arr


def all_tables(n: int, jobs: int = 1) -> np.ndarray:
    """Cached full labeled census of order n (read-only array)."""
    _check_order(n)
    if jobs <= 1:
        return _all_tables_cached(n)
    prefixes = partition_prefixes(n, jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_enumerate_prefix, [(n, p) for p in prefixes]))
    # row-major prefixes in lexicographic order keep the merge sorted
    arr = np.concatenate(parts) if parts else np.empty((0, n, n), dtype=np.int8)
    arr.setflags(write=False)
    return arr


def orbit_minimal_mask(tables: np.ndarray) -> np.ndarray:
    """Which tables are lexicographically least among all their relabelings."""
    N, n, _ = tables.shape
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    inverses = np.argsort(perms, axis=1).astype(np.int64)
    return _orbit_minimal(tables.reshape(N, n * n).astype(np.int64), perms, inverses)


# ---------------------------------------------------------------------------
# vectorized class predicates over stacks of tables, used to cut the census
# down before the exact per-table predicates run


def _batch_products(T):
    N, n, _ = T.shape
    K = np.arange(N)[:, None, None]
    return K, T.astype(np.intp)


def batch_commutative(T: np.ndarray) -> np.ndarray:
    return (T == T.transpose(0, 2, 1)).all(axis=(1, 2))


def batch_cancellative(T: np.ndarray) -> np.ndarray:
    n = T.shape[1]
    want = np.arange(n)
    rows = (np.sort(T, axis=2) == want).all(axis=(1, 2))
    cols = (np.sort(T, axis=1) == want[:, None]).all(axis=(1, 2))
    return rows & cols


def batch_separative(T: np.ndarray) -> np.ndarray:
    n = T.shape[1]
    d = np.diagonal(T, axis1=1, axis2=2)
    xx, yy = d[:, :, None], d[:, None, :]
    xy, yx = T, T.transpose(0, 2, 1)
    distinct = ~np.eye(n, dtype=bool)
    bad = (((xy == xx) & (yx == yy)) | ((xy == yy) & (yx == xx))) & distinct
    return ~bad.any(axis=(1, 2))


def _batch_inverse_matrix(T):
    K, Ti = _batch_products(T)
    n = T.shape[1]
    a = np.arange(n)[None, :, None]
    b = np.arange(n)[None, None, :]
    aba = Ti[K, Ti, a]
    bab = Ti[K, Ti.transpose(0, 2, 1), b]
    return (aba == a) & (bab == b)


def batch_regular(T: np.ndarray) -> np.ndarray:
    return _batch_inverse_matrix(T).any(axis=2).all(axis=1)


def batch_inverse(T: np.ndarray) -> np.ndarray:
    return (_batch_inverse_matrix(T).sum(axis=2) == 1).all(axis=1)


def batch_completely_regular(T: np.ndarray) -> np.ndarray:
    M = _batch_inverse_matrix(T) & (T == T.transpose(0, 2, 1))
    return M.any(axis=2).all(axis=1)


BATCH_FILTERS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "commutative": batch_commutative,
    "cancellative": batch_cancellative,
    "separative": batch_separative,
    "regular": batch_regular,
    "inverse": batch_inverse,
    "completely_regular": batch_completely_regular,
    "clifford": lambda T: batch_inverse(T) & batch_completely_regular(T),
}


def filter_mask(tables: np.ndarray, name: str, chunk: int = 20000) -> np.ndarray:
    try:
        fn = BATCH_FILTERS[name]
    except KeyError:
        raise InputError(f"unknown filter {name!r}; choose from {sorted(BATCH_FILTERS)}") from None
    if len(tables) == 0:
        return np.zeros(0, dtype=bool)
    return np.concatenate([fn(tables[i : i + chunk]) for i in range(0, len(tables), chunk)])


def enumerate_semigroups(
    n: int,
    filter: str | Callable[[CayleyTable], bool] | None = None,
    up_to_iso: bool = False,
) -> Iterator[CayleyTable]:
    """Stream every associative table of order n in lexicographic order.

    ``filter`` is a batch-filter name (see :data:`BATCH_FILTERS`) or a
    per-table predicate. With ``up_to_iso`` only orbit-minimal tables are
    yielded, one per isomorphism class.
    """
    arr = all_tables(n)
    if up_to_iso:
        arr = arr[orbit_minimal_mask(arr)]
    if isinstance(filter, str):
        arr = arr[filter_mask(arr, filter)]
        filter = None
    for t in arr:
        S = CayleyTable(t)
        S._assoc = True
        if filter is None or filter(S):
            yield S


def count_semigroups(n: int, up_to_iso: bool = False, filter: str | None = None) -> int:
    arr = all_tables(n)
    if up_to_iso:
        arr = arr[orbit_minimal_mask(arr)]
    if filter is not None:
        arr = arr[filter_mask(arr, filter)]
    return len(arr)


def universe(max_order: int, filter: str | None = None, min_order: int = 1) -> Iterator[CayleyTable]:
    for n in range(min_order, max_order + 1):
        yield from enumerate_semigroups(n, filter=filter)
