"""Class-membership predicates for finite semigroups.

Every predicate here scans the whole table; nothing is sampled. Failing
checks report the lexicographically smallest failing pair (by element index).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable, Literal

import numpy as np

from .errors import InputError, InvariantFailure
from .table import CayleyTable, power_maps, require_semigroup


@dataclass(frozen=True)
class Check:
    """Outcome of a universally quantified test; truthy iff it holds."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def _first_pair(mask: np.ndarray) -> tuple[int, int] | None:
    bad = np.argwhere(mask)
    return None if len(bad) == 0 else (int(bad[0][0]), int(bad[0][1]))


def _check(mask_bad: np.ndarray) -> Check:
    w = _first_pair(mask_bad)
    return Check(w is None, w)


@dataclass(frozen=True)
class BasicProperties:
    commutative: bool
    cancellative: bool
    separative: bool
    has_identity: bool
    identity: int | None
    idempotent_count: int
    separative_witness: tuple[int, int] | None = None


@dataclass(frozen=True)
class RegularityProperties:
    regular: bool
    inverse: bool
    completely_regular: bool
    clifford: bool
    group: bool


@dataclass(frozen=True)
class ClassificationReport:
    commutative: bool
    cancellative: bool
    separative: bool
    regular: bool
    inverse: bool
    completely_regular: bool
    clifford: bool
    group: bool
    has_identity: bool
    identity: int | None
    idempotent_count: int

    def as_dict(self) -> dict:
        return asdict(self)

    def render(self) -> str:
        """Stable ``key=value`` lines, one predicate per line."""
        lines = []
        for k, v in asdict(self).items():
            if isinstance(v, bool):
                v = "true" if v else "false"
            elif v is None:
                v = "none"
            lines.append(f"{k}={v}")
        return "\n".join(lines) + "\n"


def separative_witness(S: CayleyTable) -> tuple[int, int] | None:
    T = S.table
    d = np.diagonal(T)
    xy, yx = T, T.T
    xx, yy = d[:, None], d[None, :]
    distinct = ~np.eye(S.order, dtype=bool)
    first = (xy == xx) & (yx == yy) & distinct
    second = (xy == yy) & (yx == xx) & distinct
    return _first_pair(first | second)


def is_cancellative(S: CayleyTable) -> bool:
    # on a finite table: every row and every column is a permutation
    T = S.table
    want = np.arange(S.order)
    return bool(
        (np.sort(T, axis=1) == want).all() and (np.sort(T, axis=0) == want[:, None]).all()
    )


def identity_element(S: CayleyTable) -> int | None:
    T = S.table
    idx = np.arange(S.order)
    hits = np.flatnonzero((T == idx[None, :]).all(axis=1) & (T == idx[:, None]).all(axis=0))
    return int(hits[0]) if len(hits) else None


def check_basic(S: CayleyTable) -> BasicProperties:
    require_semigroup(S)
    T = S.table
    identity = identity_element(S)
    sw = separative_witness(S)
    return BasicProperties(
        commutative=bool(np.array_equal(T, T.T)),
        cancellative=is_cancellative(S),
        separative=sw is None,
        has_identity=identity is not None,
        identity=identity,
        idempotent_count=int((np.diagonal(T) == np.arange(S.order)).sum()),
        separative_witness=sw,
    )


def inverse_matrix(S: CayleyTable) -> np.ndarray:
    """Boolean matrix ``M[a, b]``: ``aba = a`` and ``bab = b``."""
    T = S.table
    n = S.order
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    aba = T[T, a]  # T[T[a, b], a]
    bab = T[T.T, b]  # T[T[b, a], b]
    return (aba == a) & (bab == b)


def inverses_of(S: CayleyTable, a) -> frozenset[int]:
    require_semigroup(S)
    a = S.index(a)
    return frozenset(int(b) for b in np.flatnonzero(inverse_matrix(S)[a]))


def idempotents_commute(S: CayleyTable) -> bool:
    T = S.table
    E = np.flatnonzero(np.diagonal(T) == np.arange(S.order))
    sub = T[np.ix_(E, E)]
    return bool(np.array_equal(sub, sub.T))


def check_regularity(S: CayleyTable) -> RegularityProperties:
    require_semigroup(S)
    T = S.table
    M = inverse_matrix(S)
    counts = M.sum(axis=1)
    regular = bool((counts >= 1).all())
    inverse = bool((counts == 1).all())
    if inverse != (regular and idempotents_commute(S)):
        raise InvariantFailure("unique-inverse and commuting-idempotent criteria disagree")
    commuting = M & (T == T.T)
    completely_regular = bool(commuting.any(axis=1).all())
    identity = identity_element(S)
    group = identity is not None and bool((T == identity).any(axis=1).all())
    return RegularityProperties(
        regular=regular,
        inverse=inverse,
        completely_regular=completely_regular,
        clifford=inverse and completely_regular,
        group=group,
    )


def classify(S: CayleyTable) -> ClassificationReport:
    b = check_basic(S)
    r = check_regularity(S)
    report = ClassificationReport(
        commutative=b.commutative,
        cancellative=b.cancellative,
        separative=b.separative,
        regular=r.regular,
        inverse=r.inverse,
        completely_regular=r.completely_regular,
        clifford=r.clifford,
        group=r.group,
        has_identity=b.has_identity,
        identity=b.identity,
        idempotent_count=b.idempotent_count,
    )
    _check_lattice(report)
    return report


def _check_lattice(r: ClassificationReport) -> None:
    if r.group and not r.cancellative:
        raise InvariantFailure("group but not cancellative")
    if r.cancellative and not r.separative:
        raise InvariantFailure("cancellative but not separative")
    if r.clifford and not r.separative:
        raise InvariantFailure("Clifford but not separative")
    if r.inverse and not r.regular:
        raise InvariantFailure("inverse but not regular")


# ---------------------------------------------------------------------------
# identity conditions


def powers_commute(S: CayleyTable, p: int) -> Check:
    """``x^p y^p == y^p x^p`` for all pairs."""
    if p < 1:
        raise InputError("p must be positive")
    require_semigroup(S)
    P = power_maps(S, p)[p]
    A = S.table[P[:, None], P[None, :]]
    return _check(A != A.T)


def _power_identity(S: CayleyTable, k: int, P: np.ndarray) -> np.ndarray:
    """Mask of pairs where ``(xy)^k != x^k y^k``."""
    T = S.table
    return P[k][T] != T[P[k][:, None], P[k][None, :]]


def power_endomorphism(S: CayleyTable, k: int) -> Check:
    """``(xy)^k == x^k y^k`` for all pairs."""
    if k < 1:
        raise InputError("k must be positive")
    require_semigroup(S)
    return _check(_power_identity(S, k, power_maps(S, k)))


@dataclass(frozen=True)
class CubeConditions:
    cube_injective: bool
    four_to_two: bool
    x3_eq_x: bool


def check_cube_conditions(S: CayleyTable) -> CubeConditions:
    require_semigroup(S)
    P = power_maps(S, 4)
    idx = np.arange(S.order)
    cube_injective = len(np.unique(P[3])) == S.order
    four_to_two = bool(((P[4] != idx) | (P[2] == idx)).all())
    x3_eq_x = bool((P[3] == idx).all())
    if cube_injective and not four_to_two:
        raise InvariantFailure("injective cubing map without x^4 = x => x^2 = x")
    return CubeConditions(cube_injective, four_to_two, x3_eq_x)


@dataclass(frozen=True)
class ConsecutivePowersReport:
    """``triples`` maps each pair (or ``"all"`` in global mode) to the start
    values ``i`` whose triple ``i, i+1, i+2`` satisfies the power identity."""

    holds: bool
    mode: str
    bound: int
    triples: dict = field(default_factory=dict)
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def power_identity_exponents(S: CayleyTable, bound: int) -> np.ndarray:
    """``E[k, x, y]`` is True iff ``(xy)^k == x^k y^k``, for ``0 <= k <= bound``.

    Exponent 0 is the empty product on both sides and exponent 1 is literal
    equality, so both rows are all True.
    """
    require_semigroup(S)
    P = power_maps(S, max(bound, 1))
    n = S.order
    E = np.ones((bound + 1, n, n), dtype=bool)
    for k in range(2, bound + 1):
        E[k] = ~_power_identity(S, k, P)
    return E


def consecutive_powers(
    S: CayleyTable,
    bound: int,
    mode: Literal["global", "per_pair"] = "global",
    pairs: Iterable[tuple[int, int]] | None = None,
) -> ConsecutivePowersReport:
    if bound < 3:
        raise InputError("bound must be at least 3")
    if mode not in ("global", "per_pair"):
        raise InputError(f"unknown mode {mode!r}")
    E = power_identity_exponents(S, bound)
    if pairs is None:
        pairs = [(x, y) for x in range(S.order) for y in range(S.order)]
    else:
        pairs = sorted({(S.index(x), S.index(y)) for x, y in pairs})
    starts = range(0, bound - 1)
    if mode == "global":
        rows = np.array([[E[k, x, y] for (x, y) in pairs] for k in range(bound + 1)])
        allk = rows.all(axis=1)
        good = [i for i in starts if allk[i] and allk[i + 1] and allk[i + 2]]
        witness = None
        if not good:
            witness = pairs[int(np.argmin(rows[2]))] if not allk[2] else None
        return ConsecutivePowersReport(bool(good), mode, bound, {"all": good}, witness)
    triples = {}
    witness = None
    for x, y in pairs:
        col = E[:, x, y]
        good = [i for i in starts if col[i] and col[i + 1] and col[i + 2]]
        triples[(x, y)] = good
        if not good and witness is None:
            witness = (x, y)
    return ConsecutivePowersReport(witness is None, mode, bound, triples, witness)
