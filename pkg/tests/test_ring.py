import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from instanton_algebra.chern import rebased_ring
from instanton_algebra.ring import (
    Generator,
    GradedPolynomial,
    IdealPresentation,
    PresentationMismatch,
    RingHom,
    TupleRing,
    hom_apply,
    ideal_degree_basis,
    kernel_degree,
    membership,
    monomial_basis,
    presentation,
)
from instanton_algebra.restriction import charge_two_relations, restriction_map

from randpoly import random_homogeneous

R = rebased_ring(2, 2)  # Z[C_1, C_2, S_1^1, S_2^1, S_1^2, S_2^2]


def v(name, ring=R):
    return ring.var(name)


# --- arithmetic ---------------------------------------------------------------


def test_square_of_generator():
    C1 = v("C_1")
    assert C1 * C1 == R.monomial([2, 0, 0, 0, 0, 0])
    assert str(C1 * C1) == "(C_1)^2"  # bare C_1^2 would read as a slot superscript


def test_difference_of_squares():
    S = v("S_1^1")
    assert (1 + S) * (1 - S) == 1 - S ** 2
    assert str((1 + S) * (1 - S)) == "-(S_1^1)^2 + 1"


def test_product_degree_adds():
    p = v("S_1^1") * v("S_1^2") * v("S_1^1")
    assert p == v("S_1^1") ** 2 * v("S_1^2")
    assert p.degree() == 6 and p.is_homogeneous()


def test_no_stored_zeros():
    p = v("C_1") - v("C_1")
    assert p == 0 and not p.terms


def test_mixed_ring_arithmetic_rejected():
    other = presentation(("C_1", 2))
    with pytest.raises(PresentationMismatch):
        _ = v("C_1") + other.var("C_1")


def test_generator_order_and_names():
    names = R.names
    assert names == ["C_1", "C_2", "S_1^1", "S_2^1", "S_1^2", "S_2^2"]
    g = Generator.parse("c_2^{3-}", 4)
    assert (g.family, g.sub, g.sup, g.sign) == ("c", 2, 3, "-")
    assert g.name == "c_2^{3-}"
    assert Generator.parse("a2", 4).name == "a2"


def test_json_roundtrip():
    p = 3 * v("C_1") * v("S_1^2") - 10 ** 30 * v("C_2")
    data = p.to_json()
    assert all(isinstance(t["coef"], str) for t in data["terms"])
    assert GradedPolynomial.from_json(data) == p


def test_leading_term_first():
    p = 1 + v("C_1") ** 3
    assert str(p) == "(C_1)^3 + 1"


# --- monomial bases -----------------------------------------------------------


def test_basis_chern_ring():
    ring = presentation(("C_1", 2), ("C_2", 4))
    basis = monomial_basis(ring, 4)
    assert sorted(basis) == sorted([(0, 1), (2, 0)])
    assert len(basis) == 2


def test_basis_source_ring_degree_four():
    basis = monomial_basis(R, 4)
    assert len(basis) == 9
    assert sorted(basis) == oracle.monomials_bruteforce(R.degrees, 4)


def test_basis_degree_zero_and_edge_cases():
    assert monomial_basis(R, 0) == [(0,) * 6]
    assert monomial_basis(R, 3) == []
    assert monomial_basis(R, -2) == []
    empty = presentation()
    assert monomial_basis(empty, 0) == [()]


@pytest.mark.parametrize("d", [0, 2, 4, 6, 8, 10])
def test_basis_matches_enumeration(d):
    basis = monomial_basis(R, d)
    assert len(set(basis)) == len(basis)
    assert sorted(basis) == oracle.monomials_bruteforce(R.degrees, d)


# --- homomorphisms --------------------------------------------------------------


def test_identity_hom():
    h = RingHom.identity(R)
    p = v("C_1") * v("S_2^2") + 7
    assert hom_apply(h, p) == p


def test_hom_degree_checked():
    with pytest.raises(ValueError):
        RingHom.from_names(R, R, {n: R.var("C_1") for n in R.names})


def test_hom_ring_mismatch():
    h = RingHom.identity(R)
    with pytest.raises(PresentationMismatch):
        h(presentation(("C_1", 2)).var("C_1"))


def test_compose():
    h = restriction_map(2, 2)
    ident = RingHom.identity(R)
    p = v("C_2") * v("S_1^1")
    assert h.compose(ident)(p) == h(p)


def test_tuple_ring_order_enforced():
    ring = presentation(("C_1", 2))
    with pytest.raises(ValueError):
        TupleRing((ring, ring), ((1, 0), (0, 1)))


# --- kernels -----------------------------------------------------------------------


def test_zero_map_kernel_is_everything():
    h = RingHom.zero_map(R, presentation(("x1", 2)))
    for d in (2, 4, 6):
        assert len(kernel_degree(h, d)) == len(monomial_basis(R, d))


def test_renaming_map_injective():
    target = presentation(*[(f"x{i}", deg) for i, deg in enumerate(R.degrees, start=1)])
    h = RingHom(R, target, tuple(target.gens()))
    for d in (2, 4, 6, 8):
        assert kernel_degree(h, d) == []


def test_charge_one_kernel_degree_four():
    h = restriction_map(2, 1)
    ker = kernel_degree(h, 4)
    assert len(ker) == 1
    S1, S2 = h.source.var("S_1^1"), h.source.var("S_1^2")
    assert ker[0] in (S1 * S2, -(S1 * S2))


@pytest.mark.parametrize("q,k,d", [(2, 1, 6), (2, 1, 8), (3, 1, 6), (2, 2, 6), (2, 2, 8), (3, 2, 6), (3, 2, 8)])
def test_kernel_dimension_against_sympy(q, k, d):
    h = restriction_map(q, k)
    assert len(kernel_degree(h, d)) == oracle.kernel_dimension(q, k, d)


def test_kernel_vectors_map_to_zero():
    h = restriction_map(3, 2)
    for p in kernel_degree(h, 8):
        assert not h(p)


# --- ideals and membership ------------------------------------------------------------


K1 = rebased_ring(2, 1)  # Z[C_1, S_1^1, S_1^2]
PAIR = IdealPresentation(K1, (K1.var("S_1^1") * K1.var("S_1^2"),))


def test_ideal_basis_low_degrees():
    S1, S2, C = K1.var("S_1^1"), K1.var("S_1^2"), K1.var("C_1")
    assert ideal_degree_basis(PAIR, 2) == []
    assert len(ideal_degree_basis(PAIR, 4)) == 1
    six = ideal_degree_basis(PAIR, 6)
    assert len(six) == 3
    span = {C * S1 * S2, S1 ** 2 * S2, S1 * S2 ** 2}
    for p in six:
        assert p in span or -p in span


def test_ideal_generators_validated():
    with pytest.raises(ValueError):
        IdealPresentation(K1, (K1.one(),))
    with pytest.raises(ValueError):
        IdealPresentation(K1, (K1.var("C_1") + K1.var("C_1") ** 2,))


def test_membership_examples():
    S1, S2, C = K1.var("S_1^1"), K1.var("S_1^2"), K1.var("C_1")
    single = IdealPresentation(K1, (S1,))
    m = membership(S1 * S2, single, "integral")
    assert m.member and m.denominator == 1
    assert m.multipliers[0] * S1 == S1 * S2
    assert not membership(C, PAIR).member
    with pytest.raises(ValueError):
        membership(C + C * C, PAIR)


def test_relations_are_trivially_members():
    ideal = charge_two_relations(3)
    for i, g in enumerate(ideal.generators):
        m = membership(g, ideal, "integral")
        assert m.member and m.denominator == 1
        assert m.multipliers[i] == 1
        assert all(not x for j, x in enumerate(m.multipliers) if j != i)


def test_integral_certificate_reconstructs():
    ideal = charge_two_relations(3)
    g = ideal.generators
    p = ideal.ring.var("C_1") * g[0] - 3 * ideal.ring.var("S_1^2") * g[1]
    for mode in ("rational", "integral"):
        m = membership(p, ideal, mode)
        assert m.member
        total = sum((a * b for a, b in zip(m.multipliers, g)), ideal.ring.zero())
        assert total == m.denominator * p
        if mode == "integral":
            assert m.denominator == 1


def test_membership_rational_vs_integral():
    ring = presentation(("x1", 2), ("x2", 2))
    x1, x2 = ring.var("x1"), ring.var("x2")
    I = IdealPresentation(ring, (2 * x1 * x1 + 2 * x2 * x2, x1 * x1))
    p = x2 * x2
    assert membership(p, I, "rational").member
    assert not membership(p, I, "integral").member


# --- properties ------------------------------------------------------------------------

seeds = st.integers(0, 2 ** 32 - 1)
even_degrees = st.sampled_from([0, 2, 4, 6])


@settings(max_examples=60, deadline=None)
@given(seeds, even_degrees, even_degrees, even_degrees)
def test_multiplication_laws(seed, da, db, dc):
    rng = np.random.default_rng(seed)
    a, b, c = (random_homogeneous(R, d, rng) for d in (da, db, dc))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a and b:
        assert (a * b).is_homogeneous() and (a * b).degree() == da + db


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from([2, 4, 6]), st.sampled_from([2, 4, 6]))
def test_hom_respects_operations(seed, da, db):
    h = restriction_map(2, 2)
    rng = np.random.default_rng(seed)
    a, b = random_homogeneous(R, da, rng), random_homogeneous(R, db, rng)
    assert h(a * b) == h(a) * h(b)
    assert h(a + b) == h(a) + h(b)


@pytest.mark.parametrize("q", [2, 3])
def test_ideal_inside_kernel_dimensionwise(q):
    h = restriction_map(q, 2)
    ideal = charge_two_relations(q)
    for d in range(0, 11, 2):
        assert len(ideal_degree_basis(ideal, d)) <= len(kernel_degree(h, d))
