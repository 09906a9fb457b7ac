"""Congruence closure and the least semilattice decomposition."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .classify import check_basic, is_cancellative
from .errors import InvariantFailure
from .table import CayleyTable, format_sg, induced, require_semigroup


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


@dataclass(frozen=True)
class Partition:
    """An equivalence on ``range(n)``; ``class_of[x]`` is the least member of x's class."""

    class_of: tuple[int, ...]

    @classmethod
    def from_union_find(cls, uf: UnionFind) -> "Partition":
        n = len(uf.parent)
        least: dict[int, int] = {}
        for x in range(n):
            least.setdefault(uf.find(x), x)
        return cls(tuple(least[uf.find(x)] for x in range(n)))

    @property
    def class_count(self) -> int:
        return len(set(self.class_of))

    @property
    def class_ids(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.class_of)))

    def classes(self) -> list[tuple[int, ...]]:
        return [tuple(x for x, c in enumerate(self.class_of) if c == cid) for cid in self.class_ids]

    def same(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]

    def refines(self, other: "Partition") -> bool:
        """True if every class of self lies inside a class of other."""
        return all(
            other.class_of[x] == other.class_of[self.class_of[x]] for x in range(len(self.class_of))
        )


def congruence_closure(S: CayleyTable, pairs: Iterable[tuple[int, int]]) -> Partition:
    """Least congruence containing ``pairs``.

    Pairs are merged first, then every ``(x, root(x))`` is pushed through all
    left and right translations until a full sweep merges nothing. Each merge
    lowers the class count, so the sweep terminates.
    """
    require_semigroup(S)
    n = S.order
    T = S.rows()
    uf = UnionFind(n)
    for a, b in pairs:
        uf.union(S.index(a), S.index(b))
    changed = True
    while changed:
        changed = False
        for x in range(n):
            r = uf.find(x)
            if r == x:
                continue
            Tx, Tr = T[x], T[r]
            for s in range(n):
                if uf.union(T[s][x], T[s][r]):
                    changed = True
                if uf.union(Tx[s], Tr[s]):
                    changed = True
    return Partition.from_union_find(uf)


def quotient(S: CayleyTable, P: Partition) -> CayleyTable:
    """Quotient table; element ``i`` is the class with id ``P.class_ids[i]``."""
    ids = P.class_ids
    pos = {c: i for i, c in enumerate(ids)}
    T = S.table
    rows = [[pos[P.class_of[int(T[a, b])]] for b in ids] for a in ids]
    return CayleyTable(rows, [f"c{c}" for c in ids])


def _is_semilattice(Q: CayleyTable) -> bool:
    T = Q.table
    return bool(np.array_equal(T, T.T) and (np.diagonal(T) == np.arange(Q.order)).all())


def least_semilattice_congruence(S: CayleyTable) -> Partition:
    T = S.table
    n = S.order
    pairs = [(int(T[x, x]), x) for x in range(n)]
    pairs += [(int(T[x, y]), int(T[y, x])) for x in range(n) for y in range(x + 1, n)]
    P = congruence_closure(S, pairs)
    if not _is_semilattice(quotient(S, P)):
        raise InvariantFailure("quotient by the semilattice congruence is not a semilattice")
    return P


@dataclass(frozen=True)
class SemilatticeDecomposition:
    partition: Partition
    component_tables: tuple[CayleyTable, ...]
    meet_table: CayleyTable

    def component_of(self, x: int) -> int:
        """Index into ``component_tables`` / ``meet_table`` for element x."""
        return self.partition.class_ids.index(self.partition.class_of[x])


def decompose_semilattice(S: CayleyTable) -> SemilatticeDecomposition:
    P = least_semilattice_congruence(S)
    components = []
    for cls in P.classes():
        try:
            components.append(induced(S, cls))
        except ValueError as exc:
            raise InvariantFailure(f"semilattice class not closed: {exc}") from None
    Q = quotient(S, P)
    dec = SemilatticeDecomposition(P, tuple(components), Q)
    _verify_decomposition(S, dec)
    return dec


def _verify_decomposition(S: CayleyTable, dec: SemilatticeDecomposition) -> None:
    if not _is_semilattice(dec.meet_table):
        raise InvariantFailure("meet table is not a semilattice")
    T, M = S.table, dec.meet_table.table
    comp = np.array([dec.component_of(x) for x in range(S.order)])
    if not np.array_equal(comp[T], M[comp[:, None], comp[None, :]]):
        raise InvariantFailure("product does not land in the meet component")


@dataclass(frozen=True)
class Prop12Audit:
    separative: bool
    all_components_cancellative: bool
    agree: bool
    table: CayleyTable | None = None


def audit_prop_1_2(S: CayleyTable) -> Prop12Audit:
    """Compare separativity with cancellativity of every semilattice component.

    Disagreement is returned as data (with the table attached), not raised.
    """
    separative = check_basic(S).separative
    dec = decompose_semilattice(S)
    cancel = all(is_cancellative(C) for C in dec.component_tables)
    agree = separative == cancel
    return Prop12Audit(separative, cancel, agree, None if agree else S)


def write_decomposition(dec: SemilatticeDecomposition, directory, stem: str = "decomposition") -> list[str]:
    """Quotient as ``<stem>.quotient.sg`` plus ``<stem>.component<id>.sg`` per class."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    qpath = os.path.join(directory, f"{stem}.quotient.sg")
    with open(qpath, "w") as fh:
        fh.write(format_sg(dec.meet_table, "semilattice quotient; element cN is the class with id N"))
    paths.append(qpath)
    for cid, C in zip(dec.partition.class_ids, dec.component_tables):
        path = os.path.join(directory, f"{stem}.component{cid}.sg")
        with open(path, "w") as fh:
            fh.write(format_sg(C, f"component with class id {cid}"))
        paths.append(path)
    return paths


def render_decomposition(dec: SemilatticeDecomposition) -> str:
    parts = [format_sg(dec.meet_table, "semilattice quotient")]
    for cid, C in zip(dec.partition.class_ids, dec.component_tables):
        parts.append(format_sg(C, f"component c{cid}"))
    return "\n".join(parts)
