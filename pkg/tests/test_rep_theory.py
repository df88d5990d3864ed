import math

import numpy as np
import pytest

from qexpander.fourier import (
    ConsistencyError,
    block_left_action,
    left_multiplication,
    character_table,
    irrep_completeness_check,
    qft_matrix,
    tensor_multiplicities,
    unitarity_residual,
    verify_left_translation_blocks,
)
from qexpander.groups import Cyclic, Dihedral, GroupError, GroupTooLarge, Product, Symmetric
from qexpander.irreps import character, irrep_matrix, list_irreps, parse_irrep, trivial_irrep
from qexpander.partitions import (
    PartitionError,
    hook_length_dimension,
    irrep_dimension,
    parse_partition,
    partitions,
    standard_tableaux,
)

GROUPS = [
    Symmetric(3),
    Symmetric(4),
    Symmetric(5),
    Cyclic(12),
    Dihedral(5),
    Dihedral(6),
    Product((Symmetric(3), Cyclic(2))),
]


def test_partition_counts():
    # OEIS A000041
    assert [len(list(partitions(n))) for n in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_dimension_examples():
    assert irrep_dimension((2, 1)) == 2
    assert irrep_dimension((5,)) == 1
    for N in range(1, 51):
        assert irrep_dimension((N, 1)) == N


@pytest.mark.parametrize("n", range(1, 9))
def test_dimension_formula_matches_hook_length(n):
    for p in partitions(n):
        assert irrep_dimension(p) == hook_length_dimension(p)


@pytest.mark.parametrize("n", range(1, 7))
def test_dimension_counts_tableaux(n):
    for p in partitions(n):
        assert len(standard_tableaux(p)) == irrep_dimension(p)


def test_dimension_large_exact():
    # n = 30 staircase-ish shape: integer arithmetic throughout
    p = (8, 7, 6, 5, 4)
    assert irrep_dimension(p) == hook_length_dimension(p)


def test_invalid_partition():
    with pytest.raises(PartitionError):
        irrep_dimension((1, 2))
    with pytest.raises(PartitionError):
        irrep_dimension((2, 0))
    with pytest.raises(PartitionError):
        parse_partition("(a,b)")
    with pytest.raises(GroupError):
        parse_irrep(Symmetric(4), "(2,1)")


def test_list_irreps_s3():
    irreps = list_irreps(Symmetric(3))
    assert [h.label for h in irreps] == [(3,), (2, 1), (1, 1, 1)]
    assert [h.dim for h in irreps] == [1, 2, 1]


def test_list_irreps_sizes():
    assert [h.dim for h in list_irreps(Cyclic(4))] == [1, 1, 1, 1]
    assert sum(h.dim**2 for h in list_irreps(Symmetric(5))) == 120
    assert len(list_irreps(Symmetric(5))) == 7


@pytest.mark.parametrize("group", GROUPS, ids=str)
def test_homomorphism_and_unitarity(group):
    rng = np.random.default_rng(1)
    for h in list_irreps(group):
        e = irrep_matrix(h, group.identity)
        assert np.allclose(e, np.eye(h.dim), atol=1e-12)
        for _ in range(500 if group.order > 24 else 100):
            g, k = group.random_element(rng), group.random_element(rng)
            rg, rk = h.matrix(g), h.matrix(k)
            assert np.linalg.norm(rg @ rk - h.matrix(g * k)) <= 1e-10
            assert np.linalg.norm(rg.conj().T @ rg - np.eye(h.dim)) <= 1e-10


def test_s3_homomorphism_all_pairs_and_yor_example():
    g = Symmetric(3)
    h = parse_irrep(g, "(2,1)")
    assert np.array_equal(h.matrix(g.parse("(1 2)")), np.diag([1.0, -1.0]))
    els = g.elements()
    for a in els:
        for b in els:
            assert np.allclose(h.matrix(a) @ h.matrix(b), h.matrix(a * b), atol=1e-12)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_yor_is_real(n):
    rng = np.random.default_rng(n)
    g = Symmetric(n)
    for h in list_irreps(g):
        for _ in range(20):
            m = h.matrix(g.random_element(rng))
            assert np.max(np.abs(np.imag(m)), initial=0.0) <= 1e-12


def test_cyclic_character_values():
    z6 = Cyclic(6)
    h = parse_irrep(z6, "1")
    assert np.isclose(h.matrix(z6.element(1))[0, 0], np.exp(1j * np.pi / 3), atol=1e-15)
    assert trivial_irrep(z6).matrix(z6.element(4))[0, 0] == 1


def test_trivial_irrep_values():
    for group in GROUPS:
        h = trivial_irrep(group)
        assert h.is_trivial
        for g in group.elements():
            assert np.allclose(h.matrix(g), [[1.0]])


def test_character_examples():
    s3 = Symmetric(3)
    for h in list_irreps(s3):
        assert character(h, s3.identity) == h.dim
    sign = parse_irrep(s3, "(1,1,1)")
    assert np.isclose(character(sign, s3.parse("(1 2)")), -1)
    # standard rep of S_4: fix(pi) - 1
    s4 = Symmetric(4)
    std = parse_irrep(s4, "(3,1)")
    for g in s4.elements():
        fixed = sum(1 for i, x in enumerate(g.payload, start=1) if i == x)
        assert np.isclose(character(std, g), fixed - 1, atol=1e-12)


def test_irrep_group_mismatch():
    h = parse_irrep(Symmetric(3), "(2,1)")
    with pytest.raises(GroupError):
        h.matrix(Symmetric(4).identity)


@pytest.mark.parametrize("group", [Symmetric(3), Symmetric(4), Symmetric(5), Cyclic(12), Dihedral(6)], ids=str)
def test_schur_orthogonality(group):
    table, els = character_table(group)
    gram = table.conj() @ table.T / len(els)
    assert np.abs(gram - np.eye(len(table))).max() <= 1e-8


def test_class_function():
    g = Symmetric(4)
    rng = np.random.default_rng(2)
    for h in list_irreps(g):
        for _ in range(20):
            x, y = g.random_element(rng), g.random_element(rng)
            assert np.isclose(h.character(y * x * y.inverse()), h.character(x), atol=1e-12)


def test_qft_z2_hadamard():
    q = qft_matrix(Cyclic(2))
    assert np.allclose(q.matrix, np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)


def test_qft_cyclic_is_dft():
    n = 8
    q = qft_matrix(Cyclic(n)).matrix
    k, g = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    dft = np.exp(2j * np.pi * k * g / n) / np.sqrt(n)
    assert np.allclose(q, dft, atol=1e-12)


@pytest.mark.parametrize("group", GROUPS, ids=str)
def test_qft_unitary(group):
    q = qft_matrix(group)
    assert q.matrix.shape == (group.order, group.order)
    assert unitarity_residual(q.matrix) <= 1e-9
    assert len(q.rows) == group.order


def test_qft_row_order_documented():
    q = qft_matrix(Symmetric(3))
    assert q.rows[:5] == [("(3)", 0, 0), ("(2,1)", 0, 0), ("(2,1)", 0, 1), ("(2,1)", 1, 0), ("(2,1)", 1, 1)]


def test_qft_maps_uniform_to_trivial():
    group = Symmetric(4)
    q = qft_matrix(group).matrix
    u = np.ones(group.order) / np.sqrt(group.order)
    e0 = np.zeros(group.order)
    e0[0] = 1
    assert np.allclose(q @ u, e0, atol=1e-12)


def test_qft_cap():
    with pytest.raises(GroupTooLarge):
        qft_matrix(Symmetric(7), cap=2000)


@pytest.mark.parametrize(
    "group, x",
    [
        (Symmetric(3), "()"),
        (Symmetric(3), "(1 2 3)"),
        (Cyclic(8), "3"),
        (Dihedral(6), "s·r^2"),
        (Product((Symmetric(3), Cyclic(2))), "(1 2);1"),
    ],
)
def test_left_translation_blocks(group, x):
    assert verify_left_translation_blocks(group, group.parse(x)) <= 1e-9


def test_left_translation_detects_wrong_block():
    # residual is not trivially zero: a non-identity x must differ from the identity blocks
    group = Symmetric(3)
    q = qft_matrix(group)
    lhs = q.matrix @ left_multiplication(q.elements, group.parse("(1 2 3)")) @ q.matrix.conj().T
    assert np.linalg.norm(lhs - block_left_action(q.irreps, group.identity)) > 1


def test_multiplicities_s3_standard():
    # chi_(2,1) = (2, 0, -1) on classes of sizes (1, 3, 2)
    m = tensor_multiplicities(parse_irrep(Symmetric(3), "(2,1)"))
    assert m == {(3,): 1, (2, 1): 1, (1, 1, 1): 1}


def test_multiplicities_trivial():
    m = tensor_multiplicities(trivial_irrep(Symmetric(4)))
    assert m[(4,)] == 1 and sum(m.values()) == 1


@pytest.mark.parametrize("group", [Symmetric(3), Symmetric(4), Symmetric(5), Dihedral(6), Cyclic(5)], ids=str)
def test_multiplicities_schur(group):
    triv = trivial_irrep(group).label
    for h in list_irreps(group):
        m = tensor_multiplicities(h)
        assert m[triv] == 1
        assert sum(m[nu.label] * nu.dim for nu in list_irreps(group)) == h.dim**2


def test_completeness():
    assert irrep_completeness_check(Symmetric(4))
    assert [h.dim for h in list_irreps(Symmetric(4))] == [1, 3, 2, 3, 1]
    assert irrep_completeness_check(Cyclic(9))
    assert irrep_completeness_check(Dihedral(7))
    irreps = list_irreps(Symmetric(4))
    assert not irrep_completeness_check(Symmetric(4), irreps=irreps[:-1])


def test_consistency_error_type():
    assert issubclass(ConsistencyError, ArithmeticError)


def test_dihedral_irrep_validation():
    with pytest.raises(GroupError):
        parse_irrep(Dihedral(5), "B1")
    with pytest.raises(GroupError):
        parse_irrep(Dihedral(5), "E3")
    assert parse_irrep(Dihedral(6), "e2").dim == 2


def test_irrep_dimension_exact_bigint():
    d = irrep_dimension((30, 20, 10))
    assert isinstance(d, int) and d == hook_length_dimension((30, 20, 10))
    assert d > 2**63
    assert math.factorial(60) % d == 0
