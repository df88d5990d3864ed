import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qexpander.groups import (
    Cyclic,
    Dihedral,
    GeneratorSet,
    GroupError,
    GroupTooLarge,
    Product,
    Symmetric,
    closure,
    enumerate_group,
    inverse,
    multiply,
    parse_element,
    symmetrize,
)

S3, S4, S5 = Symmetric(3), Symmetric(4), Symmetric(5)


def compose_by_definition(a, b):
    """Oracle: permutations as dicts, (a.b)(x) = a(b(x))."""
    fa = dict(enumerate(a, start=1))
    fb = dict(enumerate(b, start=1))
    return tuple(fa[fb[x]] for x in range(1, len(a) + 1))


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(tuple)


def test_orders():
    assert Symmetric(13).order == 6227020800
    assert Cyclic(7).order == 7
    assert Dihedral(6).order == 12
    assert Product((S3, Cyclic(4), Dihedral(5))).order == 6 * 4 * 10
    assert Symmetric(30).order == 265252859812191058636308480000000


def test_s3_composition_table_matches_definition():
    els = enumerate_group(S3)
    for a, b in itertools.product(els, els):
        assert (a * b).payload == compose_by_definition(a.payload, b.payload)


def test_multiply_examples():
    a = S3.parse("(1 2)")
    b = S3.parse("(2 3)")
    assert (a * b).payload == (2, 3, 1)
    assert str(a * b) == "(1 2 3)"
    z5 = Cyclic(5)
    assert multiply(z5.element(3), z5.element(4)).payload == 2


def test_identity_is_neutral():
    rng = np.random.default_rng(0)
    e = S5.identity
    for _ in range(20):
        g = S5.random_element(rng)
        assert e * g == g and g * e == g


def test_inverse_examples():
    assert inverse(S3.parse("(1 2 3)")) == S3.parse("(1 3 2)")
    assert inverse(S3.identity) == S3.identity
    assert inverse(Cyclic(7).element(3)).payload == 4


def test_inverse_by_table_search():
    els = enumerate_group(S4)
    for g in els:
        found = [h for h in els if (g * h).is_identity]
        assert found == [inverse(g)]


def test_multiply_group_mismatch():
    with pytest.raises(GroupError):
        S3.identity * Symmetric(4).identity
    with pytest.raises(GroupError):
        Cyclic(3).identity * Cyclic(4).identity


def test_enumerate():
    assert len(enumerate_group(S3)) == 6
    assert [g.payload for g in enumerate_group(Cyclic(4))] == [0, 1, 2, 3]
    els = enumerate_group(S4)
    payloads = [g.payload for g in els]
    assert payloads == sorted(payloads) and len(set(payloads)) == 24
    assert len(enumerate_group(Dihedral(7))) == 14
    assert len(enumerate_group(Product((S3, Cyclic(2))))) == 12


def test_enumerate_cap():
    with pytest.raises(GroupTooLarge, match="too large for dense path"):
        enumerate_group(Symmetric(13), cap=10**7)


def test_closure_examples():
    c = closure(GeneratorSet.parse(S3, ["(1 2)", "(1 2 3)"]))
    assert len(c.elements) == 6 and c.generates_full_group
    c = closure(GeneratorSet.parse(S3, ["(1 2 3)"]))
    assert {str(g) for g in c.elements} == {"()", "(1 2 3)", "(1 3 2)"}
    assert not c.generates_full_group
    c = closure(GeneratorSet.parse(S3, ["()"]))
    assert [str(g) for g in c.elements] == ["()"] and not c.generates_full_group


def test_closure_cap():
    with pytest.raises(GroupTooLarge):
        closure(GeneratorSet.parse(Symmetric(8), ["(1 2)", "(1 2 3 4 5 6 7 8)"]), cap=1000)


def test_closure_order_independent():
    rng = np.random.default_rng(3)
    for _ in range(10):
        gens = [S5.random_element(rng) for _ in range(2)]
        a = closure(GeneratorSet(S5, gens)).elements
        b = closure(GeneratorSet(S5, gens[::-1])).elements
        assert a == b


def test_symmetrize():
    z5 = Cyclic(5)
    assert [g.payload for g in symmetrize(GeneratorSet(z5, [z5.element(1)]))] == [1, 4]
    assert symmetrize(GeneratorSet.parse(S3, ["(1 2)"])).labels() == ["(1 2)"]
    assert symmetrize(GeneratorSet.parse(S3, ["(1 2 3)"])).labels() == ["(1 2 3)", "(1 3 2)"]
    dup = GeneratorSet.parse(S3, ["(1 2)", "(1 2)", "(1 3)"])
    assert symmetrize(dup).labels() == ["(1 2)", "(1 3)"]


def test_generator_set_validation():
    with pytest.raises(GroupError):
        GeneratorSet(S3, [])
    with pytest.raises(GroupError):
        GeneratorSet(S3, [Symmetric(4).identity])
    gens = GeneratorSet.parse(S3, ["(1 2)", "(1 2)"])
    assert gens.degree == 2


@pytest.mark.parametrize(
    "group, text, payload",
    [
        (Symmetric(4), "(1 2 3)", (2, 3, 1, 4)),
        (Symmetric(4), "()", (1, 2, 3, 4)),
        (Symmetric(4), "[2,1,4,3]", (2, 1, 4, 3)),
        (Symmetric(4), "(1 2)(3 4)", (2, 1, 4, 3)),
        (Symmetric(4), "(1,2,3)", (2, 3, 1, 4)),
        (Symmetric(3), "(1 2)(2 3)", (2, 3, 1)),
        (Cyclic(7), "3", 3),
        (Cyclic(7), "-1", 6),
        (Dihedral(5), "r^2", (2, 0)),
        (Dihedral(5), "s·r^3", (3, 1)),
        (Dihedral(5), "s*r", (1, 1)),
        (Dihedral(5), "s", (0, 1)),
        (Dihedral(5), "e", (0, 0)),
        (Product((Symmetric(3), Cyclic(4))), "(1 2);3", ((2, 1, 3), 3)),
    ],
)
def test_parse(group, text, payload):
    assert parse_element(group, text).payload == payload


@pytest.mark.parametrize(
    "group, text",
    [
        (Symmetric(3), "(1 5)"),
        (Symmetric(3), "(1 2"),
        (Symmetric(3), "(1 1)"),
        (Symmetric(3), "(a b)"),
        (Symmetric(3), "[1,2]"),
        (Symmetric(3), "[1,1,2]"),
        (Symmetric(3), ""),
        (Cyclic(4), "x"),
        (Dihedral(4), "t^2"),
        (Product((Symmetric(3), Cyclic(4))), "(1 2)"),
    ],
)
def test_parse_errors(group, text):
    with pytest.raises(GroupError):
        parse_element(group, text)


def test_dihedral_relations():
    d = Dihedral(6)
    r, s = d.parse("r"), d.parse("s")
    assert (s * r * s) == inverse(r)
    assert all((s * d.element((k, 0))).payload == (k, 1) for k in range(6))
    rk = d.identity
    for _ in range(6):
        rk = rk * r
    assert rk.is_identity


@settings(max_examples=200, deadline=None)
@given(perms(5), perms(5), perms(5))
def test_associativity_s5(a, b, c):
    a, b, c = (S5.element(x) for x in (a, b, c))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=100, deadline=None)
@given(perms(6))
def test_inverse_involution(p):
    g = Symmetric(6).element(p)
    assert inverse(inverse(g)) == g
    assert (g * inverse(g)).is_identity


def test_associativity_sampled_1000():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        a, b, c = (S5.random_element(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize(
    "group",
    [Symmetric(6), Cyclic(9), Dihedral(7), Product((Symmetric(3), Dihedral(4), Cyclic(5)))],
)
def test_format_parse_roundtrip(group):
    rng = np.random.default_rng(5)
    for _ in range(100):
        g = group.random_element(rng)
        assert parse_element(group, str(g)) == g
