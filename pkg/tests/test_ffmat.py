import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nonsolv.ffmat import (
    FFMatrix, field, field_ops, invariant_factors, is_pseudoreflection, is_transvection,
    unipotent_shape,
)
from nonsolv.ffmat.classical import (
    CatalogError, catalog, catalog_spec, classical_group, family_check, projectivize, realize,
)
from nonsolv.ffmat.field import FieldSpec
from nonsolv.ffmat.lemmas import (
    gl33_order6_sweep, minpoly_is_square, order6_shape, order9_jordan_sweep, sampled_order6_sweep,
)
from nonsolv.ffmat.polys import (
    NotUnipotent, factor, jordan_string, linear, pmul, ppow, poly_str, scalar_multiple_of,
)
from nonsolv.perm import closure


def test_field_examples():
    F3 = field(3)
    assert F3.add[2, 2] == 1
    F4 = field(4)
    w = 2  # the class of t, a root of t^2+t+1
    assert F4.mul[w, w] == F4.add[w, 1]
    F9 = field(9)
    assert all(F9.frobenius(F9.frobenius(x)) == x for x in range(9))
    assert F9.twist(F9.primitive) == F9.pow(F9.primitive, 3)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        field_ops(FieldSpec(2, 2, (1, 0, 1)))  # t^2+1 = (t+1)^2
    with pytest.raises(ValueError):
        field(32)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_field_axioms(q):
    F = field(q)
    a = np.arange(q)
    assert (F.add[a, F.neg[a]] == 0).all()
    assert (F.mul[a[1:], F.inv[a[1:]]] == 1).all()
    # distributivity over all triples
    lhs = F.mul[a[:, None, None], F.add[a[None, :, None], a[None, None, :]]]
    rhs = F.add[F.mul[a[:, None, None], a[None, :, None]], F.mul[a[:, None, None], a[None, None, :]]]
    assert (lhs == rhs).all()
    assert F.mult_order(F.primitive) == q - 1


def _random_matrix(F, d, rng):
    while True:
        m = FFMatrix(F, [[rng.randrange(F.q) for _ in range(d)] for _ in range(d)])
        if m.det():
            return m


@pytest.mark.parametrize("q,d", [(2, 4), (3, 3), (4, 3), (9, 2)])
def test_matrix_inverse_and_det(q, d):
    F = field(q)
    rng = random.Random(q * 10 + d)
    for _ in range(20):
        a, b = _random_matrix(F, d, rng), _random_matrix(F, d, rng)
        assert (a * a.inverse()).is_identity()
        assert (a * b).det() == F.mul[a.det(), b.det()]
        assert (a ** a.order()).is_identity()


@pytest.mark.parametrize("name", sorted(catalog()))
def test_catalog_generators_satisfy_family(name):
    spec = catalog_spec(name)
    assert all(family_check(spec, g) for g in spec.generators)


def test_classical_group_examples():
    assert classical_group("Sp", 4, 3).expected_order == 51840
    R = realize("Sp(4,3)")
    assert R.group.order() * R.kernel_size == 51840
    R = realize("SL(3,3)")
    assert R.action.degree == 13 and R.group.order() == 5616
    R = realize("SU(4,2)")
    assert R.action.degree == 85
    assert R.group.order() * R.kernel_size == R.spec.expected_order
    with pytest.raises(CatalogError):
        classical_group("SL", 7, 7)


def test_projectivize_sp62():
    G = projectivize(catalog_spec("Sp(6,2)"))
    assert G.degree == 63 and G.order() == 1451520


@pytest.mark.parametrize("name", ["SL(3,3)", "SU(3,3)", "Sp(4,3)", "GSp(4,3)", "SU(4,2)", "Sz(8)"])
def test_projectivize_homomorphism_and_lift(name):
    R = realize(name)
    rng = random.Random(11)
    gens = R.spec.generators

    def word(n=6):
        m = gens[0]
        for _ in range(n):
            m = m * gens[rng.randrange(len(gens))]
        return m

    for _ in range(1000 if R.action.degree < 1000 else 200):
        a, b = word(), word()
        assert R.perm(a * b) == R.perm(a) * R.perm(b)
    for _ in range(20):
        a = word()
        lifted = R.lift(R.perm(a))
        assert R.perm(lifted) == R.perm(a)
        assert (lifted * a.inverse()).is_scalar()


def test_vector_action_faithful_lift():
    R = realize("GL(3,3)", "vector")
    assert R.group.order() == 11232
    m = R.spec.generators[-1]
    assert R.lift(R.perm(m)) == m


def test_invariant_factor_examples():
    F = field(3)
    t1 = linear(F, 1)
    assert invariant_factors(FFMatrix.identity(F, 3)).factors == (t1, t1, t1)
    tv = FFMatrix(F, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert invariant_factors(tv).factors == (t1, ppow(F, t1, 2))


def test_order6_lift_shape_example():
    F = field(3)
    # -J2 (+) 1 (+) 1: order 6, square is a transvection
    x = FFMatrix(F, [[2, 2, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert x.order() == 6
    assert is_transvection(x * x)
    tp, tm = linear(F, 2), linear(F, 1)
    fs = invariant_factors(x).factors
    # t - 1 once, then (t^2 - 1)(t + 1) once
    assert fs == (tm, pmul(F, pmul(F, tm, tp), tp))
    assert fs[-1] != ppow(F, pmul(F, tm, tp), 2)


def test_unipotent_shapes():
    F = field(3)
    assert unipotent_shape(FFMatrix.identity(F, 4)) == Counter({1: 4})
    tv = FFMatrix(F, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert jordan_string(unipotent_shape(tv)) == "J2J1^2"
    j4 = FFMatrix(F, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    assert unipotent_shape(j4) == Counter({4: 1})
    with pytest.raises(NotUnipotent):
        unipotent_shape(FFMatrix.diag(F, [2, 1, 1]))


def test_predicates():
    F3 = field(3)
    assert (is_transvection(FFMatrix.identity(F3, 3)), is_pseudoreflection(FFMatrix.identity(F3, 3))) == (False, False)
    e = FFMatrix(F3, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert (is_transvection(e), is_pseudoreflection(e)) == (True, False)
    F4 = field(4)
    w = F4.primitive
    r = FFMatrix.diag(F4, [w, 1, 1, 1])
    assert (is_transvection(r), is_pseudoreflection(r)) == (False, True)
    assert scalar_multiple_of(e.scale(2), is_transvection) == 2


def _poly_at(F, f, m):
    out = FFMatrix.scalar(F, m.d, 0)
    power = FFMatrix.identity(F, m.d)
    for c in f:
        out = out + power.scale(c)
        power = power * m
    return out


def _elementary_divisor_oracle(m):
    """Elementary divisors from kernel dimensions of g(m)^j for each irreducible g.

    Uses only matrix ranks and brute-force factor search, not the Smith form.
    """
    F, d = m.field, m.d
    out = Counter()
    for deg_g in range(1, d + 1):
        for tail in np.ndindex(*([F.q] * deg_g)):
            g = tuple(int(x) for x in tail) + (1,)
            if len(factor(F, g)) != 1 or sum(factor(F, g).values()) != 1:
                continue
            gm = _poly_at(F, g, m)
            ranks = [d]
            P = FFMatrix.identity(F, d)
            for _ in range(d // deg_g + 1):
                P = P * gm
                ranks.append(P.rank())
            if ranks[1] == d:
                continue
            nullity = [(d - r) // deg_g for r in ranks]
            for j in range(1, len(nullity) - 1):
                ge_j = nullity[j] - nullity[j - 1]
                ge_next = nullity[j + 1] - nullity[j]
                if ge_j - ge_next:
                    out[ppow(F, g, j)] += ge_j - ge_next
    return out


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 3), (2, 4), (3, 3), (3, 4), (4, 3), (5, 2)]), st.integers(0, 10**6))
def test_invariant_factors_match_oracle(qd, seed):
    q, d = qd
    F = field(q)
    rng = random.Random(seed)
    m = FFMatrix(F, [[rng.randrange(q) for _ in range(d)] for _ in range(d)])
    if seed % 2:
        # conjugate of an upper triangular matrix with few distinct eigenvalues
        U = np.triu(np.array([[rng.randrange(q) for _ in range(d)] for _ in range(d)]), 1)
        U[np.diag_indices(d)] = [rng.choice((1, q - 1)) for _ in range(d)]
        g = _random_matrix(F, d, rng)
        m = g.inverse() * FFMatrix(F, U) * g
    inv = invariant_factors(m)
    assert sum(len(f) - 1 for f in inv.factors) == d
    assert inv.elementary_divisors() == _elementary_divisor_oracle(m)
    # the minimal polynomial annihilates m
    assert _poly_at(F, inv.minimal_polynomial(), m) == FFMatrix.scalar(F, d, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_invariant_factors_conjugation_invariant(seed):
    F = field(3)
    rng = random.Random(seed)
    m = _random_matrix(F, 4, rng)
    g = _random_matrix(F, 4, rng)
    assert invariant_factors(g.inverse() * m * g).factors == invariant_factors(m).factors


def test_poly_str():
    F = field(3)
    assert poly_str(F, ppow(F, linear(F, 1), 2)) == "t^2+t+1"


# -- order-6 and order-9 lemmas -----------------------------------------------------------

def test_order6_shape_examples():
    F = field(3)
    x = FFMatrix(F, [[2, 2, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert order6_shape(x)[0] and not minpoly_is_square(x)
    minus_t = FFMatrix(F, [[2, 2, 0], [0, 2, 0], [0, 0, 2]])      # -T, a transvection mod scalars
    assert minus_t.order() == 6 and not order6_shape(minus_t)[0]
    # (t^2-1)^2 as a minimal polynomial: the square has two (t-1)^2 blocks
    y = FFMatrix(F, [[2, 1, 0, 0], [0, 2, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    assert minpoly_is_square(y) and not order6_shape(y)[0]
    assert not is_transvection(y * y)


def test_gl33_order6_exhaustive():
    s = gl33_order6_sweep()
    assert s.examined == 11232
    assert s.passes and s.qualifying == 1872 and s.skipped["scalar times a transvection"] == 208


@pytest.mark.parametrize("name", ["GL(4,3)", "GU(4,3)", "GSp(4,3)"])
def test_order6_sampled(name):
    s = sampled_order6_sweep(name, target=150, seed=5)
    assert s.passes and s.qualifying == 150


def test_order9_jordan_j4():
    s = order9_jordan_sweep(target=150, seed=5)
    assert s.passes and s.shapes == {"J4": 150}
