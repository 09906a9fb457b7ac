"""Named semigroups, general constructions, and the triangular matrix semigroup."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterator, Sequence

import numpy as np

from .errors import InputError, InvariantFailure, ResourceLimitError
from .table import CayleyTable, is_associative

MAX_CANONICAL_ORDER = 7


def brandt_b2() -> CayleyTable:
    """Five-element Brandt semigroup on ``{0, e, f, a, b}``.

    ``e, f, a, b`` are the matrix units E11, E22, E12, E21; every product
    that is not a matrix unit is the zero.
    """
    names = ("0", "e", "f", "a", "b")
    units = {"e": (0, 0), "f": (1, 1), "a": (0, 1), "b": (1, 0)}
    by_unit = {v: k for k, v in units.items()}
    idx = {s: i for i, s in enumerate(names)}
    rows = [[0] * 5 for _ in range(5)]
    for x, (i, j) in units.items():
        for y, (k, l) in units.items():
            if j == k:
                rows[idx[x]][idx[y]] = idx[by_unit[(i, l)]]
    return CayleyTable(rows, names)


def left_zero(n: int) -> CayleyTable:
    if n < 1:
        raise InputError("order must be positive")
    return CayleyTable([[x] * n for x in range(n)])


def right_zero(n: int) -> CayleyTable:
    if n < 1:
        raise InputError("order must be positive")
    return CayleyTable([list(range(n)) for _ in range(n)])


def cyclic_group(n: int) -> CayleyTable:
    if n < 1:
        raise InputError("order must be positive")
    i = np.arange(n)
    return CayleyTable((i[:, None] + i[None, :]) % n)


def klein_group() -> CayleyTable:
    return CayleyTable(np.bitwise_xor.outer(np.arange(4), np.arange(4)))


def monogenic(index: int, period: int) -> CayleyTable:
    """``{x, x^2, ..., x^(m+r-1)}`` with ``x^(m+r) = x^m``; element ``i`` is ``x^(i+1)``."""
    m, r = index, period
    if m < 1 or r < 1:
        raise InputError("index and period must be positive")
    size = m + r - 1

    def reduce(k):
        return k if k < m + r else m + (k - m) % r

    rows = [[reduce(i + j + 2) - 1 for j in range(size)] for i in range(size)]
    names = ["x"] + [f"x{k}" for k in range(2, size + 1)]
    return CayleyTable(rows, names)


def semilattice_chain(k: int) -> CayleyTable:
    """``{0 < 1 < ... < k-1}`` under meet (min)."""
    if k < 1:
        raise InputError("chain length must be positive")
    i = np.arange(k)
    return CayleyTable(np.minimum.outer(i, i))


def adjoin_identity(S: CayleyTable, name: str = "1") -> CayleyTable:
    """``S`` with a new identity prepended as element 0."""
    n = S.order
    rows = [list(range(n + 1))]
    for x in range(n):
        rows.append([x + 1] + [int(v) + 1 for v in S.table[x]])
    return CayleyTable(rows, (name,) + S.names)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def heisenberg_mod(p: int) -> CayleyTable:
    """Upper unitriangular 3x3 matrices over Z/p.

    ``(a, b, c)`` stands for ``[[1, a, c], [0, 1, b], [0, 0, 1]]`` and is
    stored at index ``a*p^2 + b*p + c``; the identity is index 0.
    """
    if not _is_prime(p):
        raise InputError(f"{p} is not prime")
    elems = list(itertools.product(range(p), repeat=3))
    pos = {e: i for i, e in enumerate(elems)}
    rows = [
        [pos[((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p)] for (a2, b2, c2) in elems]
        for (a, b, c) in elems
    ]
    return CayleyTable(rows, [f"h{a}{b}{c}" for a, b, c in elems])


def symmetric_group(n: int) -> CayleyTable:
    """Permutations of ``range(n)`` in lexicographic order; ``x*y`` is ``x`` after ``y``."""
    if n < 1:
        raise InputError("degree must be positive")
    if factorial(n) > 720:
        raise ResourceLimitError("symmetric_group is capped at degree 6")
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    rows = [[pos[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms]
    return CayleyTable(rows, ["p" + "".join(map(str, s)) for s in perms])


def group_identity(G: CayleyTable) -> int:
    T = G.table
    idx = np.arange(G.order)
    for e in range(G.order):
        if np.array_equal(T[e], idx) and np.array_equal(T[:, e], idx):
            return e
    raise InputError("table has no identity element")


def is_group(G: CayleyTable) -> bool:
    if not is_associative(G):
        return False
    try:
        e = group_identity(G)
    except InputError:
        return False
    return all((G.table[x] == e).any() for x in range(G.order))


def is_homomorphism(G: CayleyTable, H: CayleyTable, phi: Sequence[int]) -> bool:
    phi = np.asarray(phi, dtype=np.intp)
    if phi.shape != (G.order,) or phi.min() < 0 or phi.max() >= H.order:
        return False
    return bool(np.array_equal(phi[G.table], H.table[phi[:, None], phi[None, :]]))


def group_homomorphisms(G: CayleyTable, H: CayleyTable) -> list[tuple[int, ...]]:
    """Every homomorphism ``G -> H``, by brute force over all maps."""
    if H.order ** G.order > 10**6:
        raise ResourceLimitError("hom search space too large")
    eG, eH = group_identity(G), group_identity(H)
    out = []
    for images in itertools.product(range(H.order), repeat=G.order - 1):
        phi = list(images)
        phi.insert(eG, eH)
        if is_homomorphism(G, H, phi):
            out.append(tuple(phi))
    return out


def strong_semilattice_of_groups(
    groups: Sequence[CayleyTable], homs: Sequence[Sequence[int]]
) -> CayleyTable:
    """Clifford semigroup over a chain ``G_0 > G_1 > ... > G_{k-1}``.

    ``homs[i]`` maps ``G_i`` into ``G_{i+1}``. Elements of ``G_i`` and
    ``G_j`` multiply in ``G_max(i, j)`` after pushing both factors down.
    """
    k = len(groups)
    if k < 1:
        raise InputError("need at least one group")
    if len(homs) != k - 1:
        raise InputError(f"chain of {k} groups needs {k - 1} homomorphisms")
    for G in groups:
        if not is_group(G):
            raise InputError("every component must be a group")
    for i, phi in enumerate(homs):
        if not is_homomorphism(groups[i], groups[i + 1], phi):
            raise InputError(f"homs[{i}] is not a homomorphism G_{i} -> G_{i + 1}")
    offsets = np.cumsum([0] + [G.order for G in groups])
    level = np.repeat(np.arange(k), [G.order for G in groups])
    local = np.concatenate([np.arange(G.order) for G in groups])
    n = int(offsets[-1])

    def push(x, target):
        lv, v = int(level[x]), int(local[x])
        for i in range(lv, target):
            v = int(homs[i][v])
        return v

    rows = []
    for s in range(n):
        row = []
        for t in range(n):
            m = max(level[s], level[t])
            row.append(int(offsets[m]) + int(groups[m].table[push(s, m), push(t, m)]))
        rows.append(row)
    names = [f"{lv}:{G.names[v]}" for lv, G in enumerate(groups) for v in range(G.order)]
    S = CayleyTable(rows, names)
    if not is_associative(S):
        raise InvariantFailure("strong semilattice of groups is not associative")
    from .classify import check_regularity

    if not check_regularity(S).clifford:
        raise InvariantFailure("strong semilattice of groups is not Clifford")
    return S


def small_groups(max_order: int = 8) -> list[CayleyTable]:
    """Cyclic groups, the Klein group and S3, up to ``max_order``."""
    out = [cyclic_group(n) for n in range(1, max_order + 1)]
    if max_order >= 4:
        out.append(klein_group())
    if max_order >= 6:
        out.append(symmetric_group(3))
    return sorted(out, key=lambda G: G.order)


def clifford_chains(max_order: int = 8, max_length: int = 3) -> Iterator[CayleyTable]:
    """Every strong semilattice of :func:`small_groups` over a chain of at most
    ``max_length`` levels and total order at most ``max_order``, over all
    connecting homomorphisms."""
    groups = small_groups(max_order)
    hom_cache: dict[tuple[int, int], list] = {}

    def homs(i, j):
        if (i, j) not in hom_cache:
            hom_cache[(i, j)] = group_homomorphisms(groups[i], groups[j])
        return hom_cache[(i, j)]

    def chains(prefix, total):
        if prefix:
            yield prefix
        if len(prefix) == max_length:
            return
        for j, G in enumerate(groups):
            if total + G.order <= max_order:
                yield from chains(prefix + [j], total + G.order)

    for chain in chains([], 0):
        for hs in itertools.product(*(homs(a, b) for a, b in zip(chain, chain[1:]))):
            yield strong_semilattice_of_groups([groups[i] for i in chain], hs)


# ---------------------------------------------------------------------------
# canonical forms


def canonical_form(S: CayleyTable) -> CayleyTable:
    """Lexicographically least table (row-major) over all relabelings."""
    n = S.order
    if n > MAX_CANONICAL_ORDER:
        raise ResourceLimitError(f"canonical_form is capped at order {MAX_CANONICAL_ORDER}")
    T = S.table
    best = None
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        inv = np.argsort(p)
        cand = p[T[inv[:, None], inv[None, :]]].ravel()
        if best is None or tuple(cand) < tuple(best):
            best = cand
    return CayleyTable(best.reshape(n, n))


def is_canonical(S: CayleyTable) -> bool:
    return np.array_equal(canonical_form(S).table, S.table)


# ---------------------------------------------------------------------------
# the semigroup of matrices [[1, a], [0, b]] with a, b positive integers


@dataclass(frozen=True, order=True, repr=False)
class TriElement:
    a: int
    b: int

    def __repr__(self):
        return f"({self.a},{self.b})"

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise InputError("TriElement entries must be positive integers")

    def __mul__(self, other: "TriElement") -> "TriElement":
        return tri_mul(self, other)

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((1, self.a), (0, self.b))


def tri_mul(x: TriElement, y: TriElement) -> TriElement:
    # [[1, a], [0, b]] [[1, c], [0, d]] = [[1, c + a d], [0, b d]]
    return TriElement(y.a + x.a * y.b, x.b * y.b)


def tri_power(x: TriElement, k: int) -> TriElement:
    if k < 1:
        raise InputError("power requires k >= 1")
    r = x
    for _ in range(k - 1):
        r = tri_mul(r, x)
    return r


NAMED = {
    "brandt-b2": (brandt_b2, 0),
    "left-zero": (left_zero, 1),
    "right-zero": (right_zero, 1),
    "cyclic": (cyclic_group, 1),
    "klein": (klein_group, 0),
    "monogenic": (monogenic, 2),
    "heisenberg": (heisenberg_mod, 1),
    "symmetric": (symmetric_group, 1),
    "chain": (semilattice_chain, 1),
}


def build(name: str, *params: int) -> CayleyTable:
    """Look up a constructor by CLI name, e.g. ``build("monogenic", 2, 1)``."""
    try:
        fn, arity = NAMED[name]
    except KeyError:
        raise InputError(f"unknown construction {name!r}; choose from {sorted(NAMED)}") from None
    if len(params) != arity:
        raise InputError(f"{name} takes {arity} integer parameter(s), got {len(params)}")
    return fn(*params)

