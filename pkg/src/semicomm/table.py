"""Finite magmas as Cayley tables, plus the ``.sg`` text format.

A :class:`CayleyTable` is an immutable ``n x n`` integer array with element
labels. Row ``i``, column ``j`` holds the index of ``i*j``. Nothing about the
table asserts associativity; call :func:`is_associative` (the result is cached
on the table) or :func:`require_semigroup` before using semigroup-only
operations.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation, InputError, ResourceLimitError

MAX_PRODUCT_ORDER = 4096


class CayleyTable:
    __slots__ = ("_table", "_names", "_assoc", "_hash")

    def __init__(self, table, names: Sequence[str] | None = None):
        arr = np.array(table, dtype=np.intp)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise InputError(f"table must be a non-empty square array, got shape {arr.shape}")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise InputError(f"table entries must lie in [0, {n})")
        if names is None:
            names = tuple(f"e{i}" for i in range(n))
        else:
            names = tuple(str(s) for s in names)
            if len(names) != n:
                raise InputError(f"expected {n} names, got {len(names)}")
            if len(set(names)) != n:
                raise InputError("element names must be pairwise distinct")
            for s in names:
                if not s or any(c.isspace() for c in s):
                    raise InputError(f"bad element name {s!r}")
        arr.setflags(write=False)
        self._table = arr
        self._names = names
        self._assoc = None
        self._hash = None

    @property
    def order(self) -> int:
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        """Read-only view of the multiplication table."""
        return self._table

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    @property
    def validated(self) -> bool:
        """True once :func:`is_associative` has confirmed associativity."""
        return bool(self._assoc)

    def index(self, x) -> int:
        """Resolve an element given by index or by name."""
        if isinstance(x, (int, np.integer)):
            x = int(x)
            if not 0 <= x < self.order:
                raise InputError(f"element index {x} out of range for order {self.order}")
            return x
        try:
            return self._names.index(x)
        except ValueError:
            raise InputError(f"no element named {x!r}") from None

    def __getitem__(self, xy) -> int:
        x, y = xy
        return int(self._table[self.index(x), self.index(y)])

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self._table)

    def with_names(self, names: Sequence[str] | None) -> "CayleyTable":
        return CayleyTable(self._table, names)

    def __eq__(self, other):
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return self._names == other._names and np.array_equal(self._table, other._table)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._table.tobytes(), self.order, self._names))
        return self._hash

    def __repr__(self):
        return f"CayleyTable(order={self.order}, rows={self.rows()})"


def _default_names(n: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(n))


def multiply(S: CayleyTable, x, y) -> int:
    return S[x, y]


def is_associative(S: CayleyTable) -> bool:
    """Exact check of ``(xy)z == x(yz)`` over all triples.

    The whole ``n^3`` cube is compared at once with numpy fancy indexing.
    """
    if S._assoc is None:
        S._assoc = associativity_witness(S) is None
    return S._assoc


def associativity_witness(S: CayleyTable) -> tuple[int, int, int] | None:
    """Lexicographically smallest triple violating associativity, or None."""
    T = S.table
    n = S.order
    left = T[T]  # left[x, y, z] = (xy)z
    right = T[np.arange(n)[:, None, None], T[None, :, :]]  # right[x, y, z] = x(yz)
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def require_semigroup(S: CayleyTable) -> None:
    if not is_associative(S):
        raise ContractViolation(
            f"operation requires an associative table; failing triple {associativity_witness(S)}"
        )


def generating_set(S: CayleyTable) -> list[int]:
    """A small generating set, chosen greedily by element index."""
    T = S.table
    generated: set[int] = set()
    gens: list[int] = []
    for x in range(S.order):
        if x in generated:
            continue
        gens.append(x)
        frontier = set(gens) | generated
        closure = set(frontier)
        while frontier:
            new = {int(T[a, b]) for a in closure for b in frontier} | {
                int(T[b, a]) for a in closure for b in frontier
            }
            frontier = new - closure
            closure |= frontier
        generated = closure
    return gens


def is_associative_light(S: CayleyTable, generators: Iterable[int] | None = None) -> bool:
    """Light's test: associativity need only be checked with the middle
    factor ranging over a generating set."""
    T = S.table
    gens = generating_set(S) if generators is None else list(generators)
    for g in gens:
        # (x g) y  versus  x (g y)
        if not np.array_equal(T[T[:, g]], T[:, T[g, :]]):
            return False
    return True


def power(S: CayleyTable, x, k: int) -> int:
    if k < 1:
        raise InputError("power requires k >= 1; no identity is assumed")
    require_semigroup(S)
    x = S.index(x)
    T = S.table
    result = None
    base = x
    # binary powering; valid by associativity
    while k:
        if k & 1:
            result = base if result is None else int(T[result, base])
        k >>= 1
        if k:
            base = int(T[base, base])
    return result


def power_map(S: CayleyTable, k: int) -> np.ndarray:
    """Array ``P`` with ``P[x] = x^k`` for every element (by iteration)."""
    if k < 1:
        raise InputError("power requires k >= 1")
    T = S.table
    idx = np.arange(S.order)
    p = idx.copy()
    for _ in range(k - 1):
        p = T[p, idx]
    return p


def power_maps(S: CayleyTable, kmax: int) -> np.ndarray:
    """Stack of power maps: row ``k`` holds ``x^k`` (row 0 is unused)."""
    T = S.table
    idx = np.arange(S.order)
    out = np.empty((kmax + 1, S.order), dtype=np.intp)
    out[0] = -1
    out[1] = idx
    for k in range(2, kmax + 1):
        out[k] = T[out[k - 1], idx]
    return out


def idempotents(S: CayleyTable) -> frozenset[int]:
    T = S.table
    return frozenset(int(x) for x in range(S.order) if T[x, x] == x)


def direct_product(S: CayleyTable, T: CayleyTable, max_order: int = MAX_PRODUCT_ORDER) -> CayleyTable:
    n, m = S.order, T.order
    if n * m > max_order:
        raise ResourceLimitError(f"product order {n * m} exceeds maximum {max_order}")
    A, B = S.table, T.table
    # element (s, t) -> s*m + t
    prod = (A[:, None, :, None] * m + B[None, :, None, :]).reshape(n * m, n * m)
    names = [f"{a}.{b}" for a in S.names for b in T.names]
    return CayleyTable(prod, names)


def opposite(S: CayleyTable) -> CayleyTable:
    return CayleyTable(S.table.T, S.names)


def is_commutative(S: CayleyTable) -> bool:
    return bool(np.array_equal(S.table, S.table.T))


def relabel(S: CayleyTable, perm: Sequence[int]) -> CayleyTable:
    """Image of ``S`` under the bijection ``x -> perm[x]``."""
    p = np.asarray(perm, dtype=np.intp)
    n = S.order
    if sorted(p.tolist()) != list(range(n)):
        raise InputError("perm must be a permutation of range(order)")
    inv = np.empty(n, dtype=np.intp)
    inv[p] = np.arange(n)
    new = p[S.table[inv[:, None], inv[None, :]]]
    names = [S.names[i] for i in inv]
    return CayleyTable(new, names)


def induced(S: CayleyTable, elements: Sequence[int]) -> CayleyTable:
    """Sub-table on ``elements`` (kept in the given order); must be closed."""
    elements = [int(e) for e in elements]
    pos = {e: i for i, e in enumerate(elements)}
    T = S.table
    rows = []
    for a in elements:
        row = []
        for b in elements:
            c = int(T[a, b])
            if c not in pos:
                raise InputError(f"subset not closed: {S.names[a]}*{S.names[b]} = {S.names[c]}")
            row.append(pos[c])
        rows.append(row)
    return CayleyTable(rows, [S.names[e] for e in elements])


# ---------------------------------------------------------------------------
# .sg text format


class SgFormatError(InputError):
    pass


def format_sg(S: CayleyTable, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend("# " + c if c else "#" for c in comment.splitlines())
    lines.append(f"n {S.order}")
    if S.names != _default_names(S.order):
        lines.append("names " + " ".join(S.names))
    lines.extend(" ".join(str(int(v)) for v in row) for row in S.table)
    return "\n".join(lines) + "\n"


def parse_sg(text: str) -> CayleyTable:
    order = None
    names = None
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if order is None:
            if parts[0] != "n" or len(parts) != 2:
                raise SgFormatError(f"line {lineno}: expected 'n <order>'")
            try:
                order = int(parts[1])
            except ValueError:
                raise SgFormatError(f"line {lineno}: bad order {parts[1]!r}") from None
            if order < 1:
                raise SgFormatError(f"line {lineno}: order must be positive")
            continue
        if parts[0] == "names":
            if names is not None or rows:
                raise SgFormatError(f"line {lineno}: names line out of place")
            names = parts[1:]
            if len(names) != order:
                raise SgFormatError(f"line {lineno}: expected {order} names, got {len(names)}")
            continue
        if len(parts) != order:
            raise SgFormatError(f"line {lineno}: expected {order} entries, got {len(parts)}")
        try:
            rows.append([int(v) for v in parts])
        except ValueError:
            raise SgFormatError(f"line {lineno}: non-integer entry") from None
    if order is None:
        raise SgFormatError("missing 'n <order>' line")
    if len(rows) != order:
        raise SgFormatError(f"expected {order} rows, got {len(rows)}")
    try:
        return CayleyTable(rows, names)
    except SgFormatError:
        raise
    except InputError as exc:
        raise SgFormatError(str(exc)) from None


def format_sg_stream(tables: Iterable[CayleyTable]) -> str:
    return "\n".join(format_sg(S) for S in tables)


def parse_sg_stream(text: str) -> list[CayleyTable]:
    records, current = [], []
    for line in text.splitlines():
        if line.strip():
            current.append(line)
        elif current:
            records.append("\n".join(current))
            current = []
    if current:
        records.append("\n".join(current))
    return [parse_sg(r) for r in records]


def load_sg(path) -> CayleyTable:
    with open(path) as fh:
        return parse_sg(fh.read())


def save_sg(S: CayleyTable, path, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_sg(S, comment))
