import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semicomm.classify import check_basic, check_regularity
from semicomm.construct import (
    NAMED,
    TriElement,
    adjoin_identity,
    brandt_b2,
    build,
    canonical_form,
    clifford_chains,
    cyclic_group,
    group_homomorphisms,
    heisenberg_mod,
    is_canonical,
    is_group,
    klein_group,
    left_zero,
    monogenic,
    right_zero,
    semilattice_chain,
    small_groups,
    strong_semilattice_of_groups,
    symmetric_group,
    tri_mul,
    tri_power,
)
from semicomm.decompose import decompose_semilattice
from semicomm.errors import InputError, ResourceLimitError
from semicomm.table import idempotents, is_associative, is_commutative, multiply, opposite, power, relabel

from . import oracles


def test_named_constructors_are_semigroups():
    params = {"left-zero": (3,), "right-zero": (3,), "cyclic": (5,), "monogenic": (2, 3),
              "heisenberg": (3,), "symmetric": (3,), "chain": (4,)}
    for name in NAMED:
        S = build(name, *params.get(name, ()))
        assert is_associative(S), name
    with pytest.raises(InputError):
        build("nope")
    with pytest.raises(InputError):
        build("cyclic")


def test_brandt():
    B = brandt_b2()
    assert B.order == 5 and is_associative(B)
    assert multiply(B, "a", "a") == B.index("0")
    r = check_regularity(B)
    assert r.inverse and not r.clifford
    facts = {("a", "b"): "e", ("b", "a"): "f", ("e", "a"): "a", ("a", "f"): "a",
             ("f", "b"): "b", ("b", "e"): "b", ("e", "e"): "e", ("f", "f"): "f"}
    for x in B.names:
        for y in B.names:
            assert B.names[B[x, y]] == facts.get((x, y), "0")


def test_zero_semigroups():
    assert not is_commutative(left_zero(2))
    assert is_commutative(left_zero(1))
    assert opposite(left_zero(3)).rows() == right_zero(3).rows()


def test_heisenberg_matches_matrices():
    H = heisenberg_mod(3)
    assert H.order == 27
    expected = oracles.table_from_matrices(oracles.heisenberg_matrices(3), mod=3)
    assert [list(r) for r in H.rows()] == expected
    assert all(power(H, x, 3) == 0 for x in range(27))
    assert not is_commutative(H)
    # the two standard generators (1,0,0) and (0,1,0) do not commute
    assert H["h100", "h010"] != H["h010", "h100"]
    with pytest.raises(InputError):
        heisenberg_mod(4)


def test_monogenic_and_cyclic():
    M = monogenic(1, 2)
    assert all(power(M, x, 3) == x for x in range(M.order))
    M = monogenic(2, 1)
    x = M.index("x")
    assert power(M, x, 2) == power(M, x, 3) and power(M, x, 2) != x
    assert cyclic_group(1).rows() == ((0,),)
    assert monogenic(3, 4).order == 6


def test_symmetric_group():
    S3 = symmetric_group(3)
    assert is_group(S3) and not is_commutative(S3)
    with pytest.raises(ResourceLimitError):
        symmetric_group(7)


def test_adjoin_identity():
    M = adjoin_identity(monogenic(2, 1))
    assert check_basic(M).identity == 0
    assert M.names == ("1", "x", "x2")


def test_strong_semilattice_examples():
    Z2 = cyclic_group(2)
    assert strong_semilattice_of_groups([Z2], []).rows() == Z2.rows()
    S = strong_semilattice_of_groups([Z2, Z2], [(0, 1)])
    assert S.order == 4
    dec = decompose_semilattice(S)
    assert [C.order for C in dec.component_tables] == [2, 2]
    assert dec.meet_table.rows() == ((0, 1), (1, 1))
    T = strong_semilattice_of_groups([Z2, cyclic_group(1)], [(0, 0)])
    assert T.order == 3 and is_commutative(T)
    with pytest.raises(InputError):
        strong_semilattice_of_groups([Z2, Z2], [(1, 0)])
    with pytest.raises(InputError):
        strong_semilattice_of_groups([left_zero(2)], [])


def test_group_homomorphisms_counts():
    assert len(group_homomorphisms(cyclic_group(4), cyclic_group(2))) == 2
    assert len(group_homomorphisms(cyclic_group(2), cyclic_group(3))) == 1
    assert len(group_homomorphisms(klein_group(), cyclic_group(2))) == 4
    assert len(group_homomorphisms(symmetric_group(3), cyclic_group(2))) == 2
    assert [G.order for G in small_groups(6)] == [1, 2, 3, 4, 4, 5, 6, 6]


def test_clifford_chains():
    chains = list(clifford_chains(6, 2))
    assert chains
    for S in chains:
        r = check_regularity(S)
        assert r.clifford and is_associative(S)


def test_canonical_form():
    L, R = left_zero(2), opposite(left_zero(2))
    assert canonical_form(L) != canonical_form(R)
    Z3 = cyclic_group(3)
    for perm in [(1, 0, 2), (2, 1, 0), (1, 2, 0)]:
        assert canonical_form(relabel(Z3, perm)) == canonical_form(Z3)
    B = brandt_b2()
    assert len(idempotents(canonical_form(B))) == len(idempotents(B))
    assert is_canonical(canonical_form(B))
    with pytest.raises(ResourceLimitError):
        canonical_form(cyclic_group(8))


def test_tri_examples():
    assert tri_mul(TriElement(1, 1), TriElement(1, 2)) == TriElement(3, 2)
    assert tri_power(TriElement(1, 1), 3) == TriElement(3, 1)
    with pytest.raises(InputError):
        TriElement(0, 1)
    with pytest.raises(InputError):
        tri_power(TriElement(1, 1), 0)


def test_tri_has_no_identity():
    # a right identity (c, d) for (a, b) needs d = 1 and c = 0
    for a, b in [(1, 1), (2, 3), (5, 1)]:
        x = TriElement(a, b)
        assert all(tri_mul(x, TriElement(c, d)) != x for c in range(1, 10) for d in range(1, 10))


def test_tri_matches_matrix_product_big():
    rnd = random.Random(7)
    for _ in range(1000):
        a, b, c, d = (rnd.randint(1, 2**128) for _ in range(4))
        M = oracles.matmul(oracles.tri_matrix(a, b), oracles.tri_matrix(c, d))
        r = tri_mul(TriElement(a, b), TriElement(c, d))
        assert M == oracles.tri_matrix(r.a, r.b)


tri = st.builds(TriElement, st.integers(1, 10**6), st.integers(1, 10**6))


@settings(max_examples=300)
@given(tri, tri, tri)
def test_tri_cancellative_associative(x, y, z):
    assert tri_mul(tri_mul(x, y), z) == tri_mul(x, tri_mul(y, z))
    assert (tri_mul(x, y) == tri_mul(x, z)) == (y == z)
    assert (tri_mul(y, x) == tri_mul(z, x)) == (y == z)
    assert tri_mul(x, x) != x


def test_tri_no_fourth_power_fixed_points():
    for a in range(1, 65):
        for b in range(1, 65):
            x = TriElement(a, b)
            assert tri_power(x, 4) != x
