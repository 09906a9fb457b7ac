import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semicomm.construct import brandt_b2, cyclic_group, klein_group, left_zero, right_zero
from semicomm.errors import ContractViolation, InputError, ResourceLimitError
from semicomm.table import (
    CayleyTable,
    SgFormatError,
    associativity_witness,
    direct_product,
    format_sg,
    format_sg_stream,
    idempotents,
    induced,
    is_associative,
    is_associative_light,
    is_commutative,
    multiply,
    opposite,
    parse_sg,
    parse_sg_stream,
    power,
    power_map,
    relabel,
    require_semigroup,
    load_sg,
    save_sg,
)

from . import oracles
from .strategies import magmas, semigroups

BAD = CayleyTable([[1, 0], [0, 0]])


def test_multiply_examples():
    assert multiply(left_zero(2), 0, 1) == 0
    assert multiply(cyclic_group(3), 1, 2) == 0
    B = brandt_b2()
    assert B.names[multiply(B, "a", "b")] == "e"


def test_multiply_rejects_bad_index():
    with pytest.raises(InputError):
        multiply(cyclic_group(3), 0, 3)
    with pytest.raises(InputError):
        multiply(cyclic_group(3), "nope", 0)


def test_construction_validation():
    with pytest.raises(InputError):
        CayleyTable([[0, 2], [0, 0]])
    with pytest.raises(InputError):
        CayleyTable([[0, 1]])
    with pytest.raises(InputError):
        CayleyTable([[0]], names=["a b"])
    with pytest.raises(InputError):
        CayleyTable([[0, 0], [0, 0]], names=["a", "a"])
    assert CayleyTable([[0]]).names == ("e0",)


def test_table_is_read_only():
    S = cyclic_group(3)
    with pytest.raises(ValueError):
        S.table[0, 0] = 1


def test_is_associative_examples():
    assert is_associative(cyclic_group(4))
    assert is_associative(brandt_b2())
    assert not is_associative(BAD)
    # (0*0)*1 = 1*1 = 0 but 0*(0*1) = 0*0 = 1
    assert associativity_witness(BAD) == (0, 0, 1)
    t = BAD.rows()
    assert t[t[0][0]][1] != t[0][t[0][1]]


def test_require_semigroup():
    with pytest.raises(ContractViolation):
        require_semigroup(BAD)
    S = cyclic_group(2)
    require_semigroup(S)
    assert S.validated


def test_power_examples():
    B = brandt_b2()
    assert power(B, "a", 2) == 0
    assert power(cyclic_group(3), 1, 3) == 0
    assert power(left_zero(2), 1, 5) == 1
    with pytest.raises(InputError):
        power(cyclic_group(3), 1, 0)


def test_idempotents_examples():
    B = brandt_b2()
    assert {B.names[i] for i in idempotents(B)} == {"0", "e", "f"}
    assert idempotents(cyclic_group(5)) == {0}
    assert idempotents(left_zero(2)) == {0, 1}


def test_products_and_opposites():
    K = direct_product(cyclic_group(2), cyclic_group(2))
    assert is_commutative(K)
    assert np.array_equal(K.table, klein_group().table)
    assert opposite(left_zero(2)).rows() == right_zero(2).rows()
    assert opposite(cyclic_group(3)).rows() == cyclic_group(3).rows()
    with pytest.raises(ResourceLimitError):
        direct_product(cyclic_group(70), cyclic_group(70))


def test_brandt_matches_matrix_units():
    expected = oracles.table_from_matrices(oracles.matrix_units())
    assert [list(r) for r in brandt_b2().rows()] == expected


def test_induced():
    B = brandt_b2()
    sub = induced(B, [0, 1])
    assert sub.rows() == ((0, 0), (0, 1))
    with pytest.raises(InputError):
        induced(B, [3, 4])  # ab = e is missing


@settings(max_examples=200, deadline=None)
@given(magmas(4))
def test_associativity_matches_naive(S):
    assert is_associative(S) == oracles.is_assoc(S.rows())
    assert is_associative_light(S) == is_associative(S)


@settings(max_examples=100, deadline=None)
@given(semigroups(4), st.data())
def test_semigroup_laws(S, data):
    n = S.order
    x, y, z = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert multiply(S, multiply(S, x, y), z) == multiply(S, x, multiply(S, y, z))
    j = data.draw(st.integers(1, n))
    k = data.draw(st.integers(1, n))
    assert power(S, x, j + k) == multiply(S, power(S, x, j), power(S, x, k))
    assert power(S, x, j) == oracles.power(S.rows(), x, j)
    assert np.array_equal(power_map(S, j), [power(S, e, j) for e in range(n)])


@settings(max_examples=100, deadline=None)
@given(magmas(4))
def test_opposite_involution(S):
    assert opposite(opposite(S)) == S
    assert is_commutative(S) == (opposite(S) == S)


@settings(max_examples=50, deadline=None)
@given(semigroups(4), st.randoms(use_true_random=False))
def test_relabel_preserves_associativity(S, rnd):
    perm = list(range(S.order))
    rnd.shuffle(perm)
    R = relabel(S, perm)
    assert is_associative(R)
    assert len(idempotents(R)) == len(idempotents(S))


def test_sg_format_exact():
    text = format_sg(left_zero(2), "left zero")
    assert text == "# left zero\nn 2\n0 0\n1 1\n"
    B = brandt_b2()
    text = format_sg(B)
    assert text.splitlines()[1] == "names 0 e f a b"
    assert parse_sg(text) == B


def test_sg_parse_errors():
    for bad in ["", "n 2\n0 0\n", "n 2\n0 0\n0 2\n", "n 2\n0 0 0\n0 0\n", "x 2\n", "n 2\n0 a\n0 0\n",
                "n 2\nnames a\n0 0\n0 0\n"]:
        with pytest.raises(SgFormatError):
            parse_sg(bad)


def test_sg_comments_and_whitespace():
    S = parse_sg("# c\n\nn 2\n# mid\n 0   1 \n1 0\n")
    assert S.rows() == ((0, 1), (1, 0))


@settings(max_examples=50, deadline=None)
@given(st.lists(magmas(4), min_size=1, max_size=5))
def test_sg_stream_roundtrip(tables):
    assert parse_sg_stream(format_sg_stream(tables)) == tables


def test_save_load(tmp_path):
    path = tmp_path / "b2.sg"
    save_sg(brandt_b2(), path, "brandt")
    assert load_sg(path) == brandt_b2()
