import copy
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nonsolv.chartab import (
    Cyc, TableError, character_table, load_table, shipped_table, structure_constant,
    thompson_nonsolvable,
)
from nonsolv.chartab.corpus import corpus
from nonsolv.chartab.cyclotomic import cyclotomic_poly, euler_phi
from nonsolv.chartab.dixon import brute_structure_constant, element_data
from nonsolv.perm import alternating_group, symmetric_group


# -- cyclotomic arithmetic -------------------------------------------------------

def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert [euler_phi(n) for n in (1, 2, 5, 30)] == [1, 1, 4, 8]


def test_roots_of_unity_sum_to_zero():
    for n in (2, 3, 5, 6, 12):
        total = Cyc.rational(0, n)
        for k in range(n):
            total = total + Cyc.root(n, k)
        assert total.is_zero()


def test_golden_ratio():
    z = Cyc.root(5)
    phi = -(z * z) - z * z * z  # -(z^2 + z^3) = (1 + sqrt 5)/2
    assert phi * phi == phi + 1
    assert abs(complex(phi) - (1 + 5**0.5) / 2) < 1e-12


def test_embedding_and_hash_are_field_independent():
    a = Cyc.root(3)
    b = a.embed(12)
    assert a == b and hash(a) == hash(b)
    assert Cyc.root(6, 2) == Cyc.root(3)
    assert Cyc.rational(Fraction(1, 2), 5) == Fraction(1, 2)


@settings(max_examples=50)
@given(st.sampled_from([3, 4, 5, 8, 12]), st.lists(st.integers(-3, 3), min_size=12, max_size=12),
       st.lists(st.integers(-3, 3), min_size=12, max_size=12))
def test_cyc_ring_laws(n, xs, ys):
    a = Cyc(n, xs[: euler_phi(n)])
    b = Cyc(n, ys[: euler_phi(n)])
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    # norm to the reals is nonnegative
    assert complex(a * a.conjugate()).real >= -1e-9
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-6


# -- tables -------------------------------------------------------------------------

def test_load_shipped_tables():
    assert shipped_table("C2").degrees == [1, 1]
    a5 = shipped_table("A5")
    assert sorted(a5.degrees) == [1, 3, 3, 4, 5]
    assert a5.exponent == 30
    assert shipped_table("C6").n_classes == 6


def test_sign_flip_rejected():
    obj = shipped_table("A5").to_json()
    bad = copy.deepcopy(obj)
    bad["irreducibles"][4][1] = {"n": 1, "coeffs": ["-1"]}
    with pytest.raises(TableError):
        load_table(bad)


def test_size_mismatch_and_degree_rejected():
    obj = shipped_table("C2").to_json()
    bad = copy.deepcopy(obj)
    bad["classes"][1]["size"] = "2"
    with pytest.raises(TableError):
        load_table(bad)
    bad = copy.deepcopy(obj)
    bad["irreducibles"][1][0] = {"n": 1, "coeffs": ["1/2"]}
    with pytest.raises(TableError):
        load_table(bad)


def test_load_from_string_roundtrip():
    T = shipped_table("A5")
    again = load_table(json.dumps(T.to_json()))
    assert again.characters == T.characters


def test_hand_table_matches_computed_a5():
    hand = shipped_table("A5")
    computed = character_table(alternating_group(5), "A5")
    assert computed.class_sizes == hand.class_sizes
    assert computed.element_orders == hand.element_orders
    # same set of rows up to swapping the two classes of 5-elements
    rows = {tuple(r) for r in hand.characters}
    swapped = {tuple(r[:3] + [r[4], r[3]]) for r in hand.characters}
    assert {tuple(r) for r in computed.characters} in (rows, swapped)


def test_structure_constant_examples():
    T = shipped_table("A5")
    assert structure_constant(T, 0, 0, 0) == 1
    assert structure_constant(T, 1, 1, 0) == 15
    data = element_data(alternating_group(5))
    # brute-force count over A5 for the (2,3,5) constant
    m = structure_constant(T, 1, 2, 3)
    assert m > 0
    assert m == brute_structure_constant(data, 1, 2, 3)


def test_thompson_examples():
    assert thompson_nonsolvable(shipped_table("C6")) is None
    trip = thompson_nonsolvable(shipped_table("A5"))
    assert trip is not None and trip.orders == (2, 3, 5)
    assert thompson_nonsolvable(character_table(symmetric_group(4))) is None


@pytest.mark.parametrize("name", ["S4", "A5", "D12", "PSL(2,7)", "SL(2,3)"])
def test_structure_constant_identities(name):
    G = corpus()[name]()
    T = character_table(G, name)
    data = element_data(G)
    r, inv = T.n_classes, T.inverse_class()
    sizes = T.class_sizes
    for A in range(r):
        for B in range(r):
            row = T.structure_constants_for(A, B)
            assert row == T.structure_constants_for(B, A)
            # every product ab lands somewhere: sum_C n(A,B,C) |C| = |A||B|
            assert sum(n * s for n, s in zip(row, sizes)) == sizes[A] * sizes[B]
            for C in range(r):
                assert row[C] == T.structure_constant(inv[A], inv[B], inv[C])
                assert row[C] == brute_structure_constant(data, A, B, C)


def test_inverse_class_from_elements():
    G = corpus()["C12"]()
    T = character_table(G)
    data = element_data(G)
    expected = [int(data.class_of[data.inverse[c[0]]]) for c in data.classes]
    assert T.inverse_class() == expected
