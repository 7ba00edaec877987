from __future__ import annotations

import itertools

import pytest

import oracles
from looptopo.errors import ContractError
from looptopo.graded import Element, TensorChain, tensor
from looptopo.sphere import SphereContext, cohomology_monomial

NS = (3, 5, 7)


@pytest.fixture(params=NS)
def ctx(request):
    return SphereContext(request.param)


def hbasis(ctx, max_index):
    return [ctx.label(f, k) for k in range(max_index + 1) for f in ("AU", "U")]


def cbasis(ctx, max_index):
    out = [ctx.label("E0"), ctx.label("EN")]
    return out + [ctx.label(f, m) for m in range(2, max_index + 1) for f in ("T", "UT")]


def E(b):
    return Element.basis(b)


# -- basis -----------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 4, 6, -3])
def test_even_or_small_n_rejected(n):
    with pytest.raises(ContractError):
        SphereContext(n)


def test_degrees(ctx):
    n = ctx.n
    for k in range(12):
        assert ctx.label("AU", k).degree == oracles.hdeg(n, "AU", k)
        assert ctx.label("U", k).degree == oracles.hdeg(n, "U", k)
    for m in range(2, 12):
        assert ctx.label("T", m).degree == oracles.cdeg(n, "T", m)
        assert ctx.label("UT", m).degree == oracles.cdeg(n, "UT", m)
    assert ctx.omega == ctx.T(2) and ctx.X == ctx.T(3)
    assert ctx.Y == ctx.UT(2) and ctx.Z == ctx.UT(3)


def test_invalid_indices():
    c = SphereContext(3)
    for fam, idx in (("T", 1), ("UT", 0), ("AU", -1), ("V", 2)):
        with pytest.raises(ContractError):
            c.label(fam, idx)


# -- loop product ----------------------------------------------------------------

def test_cs_product_examples():
    c = SphereContext(3)
    assert c.cs_product(c.AU(1), c.U(2)) == c.AU(3)
    assert c.cs_product(c.U(0), c.U(5)) == c.U(5)
    assert c.cs_product(c.AU(1), c.AU(4)) == 0
    for n in NS:
        cn = SphereContext(n)
        assert cn.cs_product(cn.AU(2), cn.U(1), "thom") == -cn.AU(3)


def test_unit(ctx):
    for b in hbasis(ctx, 15):
        assert ctx.cs_product(ctx.unit, E(b)) == E(b) == ctx.cs_product(E(b), ctx.unit)


def test_graded_commutativity_both_conventions(ctx):
    n = ctx.n
    for x, y in itertools.product(hbasis(ctx, 10), repeat=2):
        p, q = x.degree, y.degree
        assert ctx.cs_product(E(x), E(y)) == (-1) ** ((n - p) * (n - q)) * ctx.cs_product(E(y), E(x))
        assert (ctx.cs_product(E(x), E(y), "thom")
                == (-1) ** (p * q + n) * ctx.cs_product(E(y), E(x), "thom"))


def test_associativity_of_loop_product():
    c = SphereContext(5)
    basis = hbasis(c, 8)
    for x, y, z in itertools.product(basis, repeat=3):
        lhs = c.cs_product(c.cs_product(E(x), E(y)), E(z))
        assert lhs == c.cs_product(E(x), c.cs_product(E(y), E(z)))


def test_bilinearity_on_inhomogeneous_input():
    c = SphereContext(3)
    x = c.AU(1) + 2 * c.U(3)
    y = c.U(1) - c.AU(2)
    expected = (c.cs_product(c.AU(1), c.U(1)) - c.cs_product(c.AU(1), c.AU(2))
                + 2 * c.cs_product(c.U(3), c.U(1)) - 2 * c.cs_product(c.U(3), c.AU(2)))
    assert c.cs_product(x, y) == expected


def test_cs_product_rejects_cohomology():
    c = SphereContext(3)
    with pytest.raises(ContractError):
        c.cs_product(c.T(2), c.U(1))


# -- cohomology product ----------------------------------------------------------

def test_gh_product_examples():
    c = SphereContext(3)
    assert c.gh_product(c.T(2), c.T(3)) == c.T(5)
    assert c.gh_product(c.X, c.X) == c.gh_product(c.gh_product(c.omega, c.omega), c.omega)
    assert c.gh_product(c.UT(2), c.UT(3)) == 0
    assert c.gh_product(c.E0, c.T(2)) == 0
    assert c.gh_product(c.T(2), c.EN) == 0
    with pytest.raises(ContractError):
        c.gh_product(c.E0, c.T(2), lifted=False)


def test_gh_commutativity_and_conventions(ctx):
    n = ctx.n
    for a, b in itertools.product(cbasis(ctx, 8), repeat=2):
        p, q = a.degree, b.degree
        ab, ba = ctx.gh_product(E(a), E(b)), ctx.gh_product(E(b), E(a))
        assert ab == (-1) ** ((p + n - 1) * (q + n - 1)) * ba
        # (n - 1) is even, so the two sign conventions agree
        assert ab == ctx.gh_product(E(a), E(b), "thom")


def test_gh_associativity():
    c = SphereContext(3)
    basis = cbasis(c, 8)
    for a, b, d in itertools.product(basis, repeat=3):
        lhs = c.gh_product(c.gh_product(E(a), E(b)), E(d))
        assert lhs == c.gh_product(E(a), c.gh_product(E(b), E(d)))


def test_level_superadditive_under_products(ctx):
    for a, b in itertools.product(cbasis(ctx, 8), repeat=2):
        for label in ctx.gh_product(E(a), E(b)).terms:
            assert ctx.level(label) >= ctx.level(a) + ctx.level(b)


# -- coproduct -------------------------------------------------------------------

def test_coproduct_examples():
    c = SphereContext(3)
    AU, U = c.AU, c.U
    assert c.coproduct(AU(4)) == tensor(AU(1), AU(2)) + tensor(AU(2), AU(1))
    assert c.coproduct(U(3)) == tensor(AU(1), U(1)) + tensor(U(1), AU(1))
    assert c.coproduct(c.A) == 0 and c.coproduct(c.A).arity == 2


def test_coproduct_matches_formula(ctx):
    for fam in ("AU", "U"):
        for k in range(16):
            out = ctx.coproduct(E(ctx.label(fam, k)))
            assert oracles.as_plain(out) == oracles.coproduct(fam, k)
            if out:
                assert out.degrees() == [ctx.label(fam, k).degree + 1 - ctx.n]


def test_iterated_coproduct_examples():
    c = SphereContext(3)
    a1 = c.label("AU", 1)
    assert c.iterated_coproduct(c.AU(5), 2) == TensorChain({(a1, a1, a1): 1}, arity=3)
    z = c.iterated_coproduct(c.AU(4), 2)
    assert z == 0 and z.arity == 3
    for b in hbasis(c, 10):
        assert c.iterated_coproduct(E(b), 1) == c.coproduct(E(b))
    with pytest.raises(ContractError):
        c.iterated_coproduct(c.AU(3), 0)


def test_iterated_coproduct_arity_and_degree(ctx):
    x = ctx.U(9)
    for k in range(1, 5):
        out = ctx.iterated_coproduct(x, k)
        assert out.arity == k + 1
        if out:
            assert out.degrees() == [x.degree - k * (ctx.n - 1)]


def test_trivial_coproduct_vanishes(ctx):
    for b in hbasis(ctx, 8):
        assert ctx.trivial_coproduct(E(b)) == 0


# -- Delta, t, pairing -----------------------------------------------------------

def test_delta_values(ctx):
    assert ctx.delta(ctx.AU(3)) == -3 * ctx.U(2)
    assert ctx.delta(ctx.A) == 0
    for b in hbasis(ctx, 15):
        assert oracles.as_plain(ctx.delta(E(b))) == oracles.delta(b.family, b.index)
        assert ctx.delta(ctx.delta(E(b))) == 0


def test_delta_of_U_vanishes(ctx):
    for k in range(11):
        assert ctx.delta(ctx.U(k)) == 0


@pytest.mark.parametrize("n", [5, 7, 9])
def test_no_class_one_degree_above_U(n):
    c = SphereContext(n)
    for k in range(11):
        assert c.homology_in_degree(c.label("U", k).degree + 1) == []


def test_degree_scan_does_not_settle_delta_U_for_n3():
    # AU(k+2) sits one degree above U(k) when n = 3
    c = SphereContext(3)
    for k in range(11):
        assert c.homology_in_degree(c.label("U", k).degree + 1) == [c.label("AU", k + 2)]


def test_t_operation(ctx):
    assert ctx.t_op(ctx.AU(5)) == -2 * ctx.AU(3)
    assert ctx.t_op(ctx.AU(3)) == -ctx.AU(1)
    assert ctx.t_op(ctx.AU(2)) == 0
    for k in range(16):
        assert oracles.as_plain(ctx.t_op(ctx.AU(k))) == oracles.t_closed_form(k)


def test_kronecker_examples():
    c = SphereContext(3)
    assert c.kronecker(c.T(2), c.AU(1)) == 1
    assert c.kronecker(c.UT(3), c.U(2)) == 1
    assert c.kronecker(c.T(2), c.U(1)) == 0
    assert c.kronecker(c.E0, c.A) == 1 and c.kronecker(c.EN, c.unit) == 1


def test_duality_examples():
    c = SphereContext(3)
    assert c.duality_check(c.T(2), c.T(2), c.AU(3)) == (1, 1)
    assert c.duality_check(c.T(2), c.UT(2), c.U(3)) == (1, 1)
    for z in hbasis(c, 6):
        assert c.duality_check(c.E0, c.T(2), E(z)) == (0, 0)
    with pytest.raises(ContractError):
        c.duality_check(c.T(2) + c.T(3), c.T(2), c.AU(3))


# -- composites ------------------------------------------------------------------

def test_product_after_coproduct(ctx):
    assert ctx.product_after_coproduct(ctx.U(3)) == 2 * ctx.AU(2)
    for b in hbasis(ctx, 15):
        assert ctx.product_after_coproduct(E(b), "thom") == 0
    for k in range(3, 16):
        got = oracles.as_plain(ctx.product_after_coproduct(ctx.U(k)))
        assert got == oracles.wedge_after_coproduct_U(k)


def test_frobenius_defect_four_terms(ctx):
    for k in (1, 2, 3):
        for conv in ("alg", "thom"):
            d = ctx.frobenius_defect(ctx.U(2 * k), ctx.U(2 * k), conv)
            assert oracles.as_plain(d) == oracles.frobenius_support(k)
    assert ctx.frobenius_defect(ctx.U(2), ctx.U(2)) == ctx.coproduct(ctx.U(4))


def test_frobenius_defect_with_unit(ctx):
    for b in hbasis(ctx, 8):
        assert ctx.frobenius_defect(ctx.unit, E(b)) == 0


# -- filtration ------------------------------------------------------------------

def test_levels():
    c = SphereContext(3)
    assert c.level(c.label("AU", 3)) == 2
    assert c.level(c.label("U", 2)) == 1
    assert c.level(c.label("T", 6)) == 3
    assert c.level(c.label("AU", 0)) == c.level(c.label("U", 0)) == 0
    assert c.level(c.label("E0")) == c.level(c.label("EN")) == 0
    for k in range(16):
        assert c.level(c.label("AU", k)) == oracles.homology_level(k)


def test_intersection_multiplicity():
    c = SphereContext(3)
    assert c.intersection_multiplicity(c.AU(5)) == (3, False)
    assert c.intersection_multiplicity(c.U(0)) == (1, True)
    assert c.intersection_multiplicity(c.A + c.U(0)) == (1, True)
    assert c.intersection_multiplicity(c.U(4)) == (2, False)
    with pytest.raises(ContractError):
        c.intersection_multiplicity(Element())


def test_multiplicity_equals_level(ctx):
    for b in hbasis(ctx, 13):
        m = ctx.level(b)
        if m >= 1:
            assert ctx.intersection_multiplicity(E(b)).value == m


def test_level_table_and_monomials():
    c = SphereContext(3)
    rows = c.level_table(3)
    layout = oracles.level_layout_n3()
    for m, hom, coh in rows:
        assert [(f"{b.family}{b.index}", b.degree) for b in hom] == layout[m]
        if m:
            assert [b.degree for b in coh] == [d for _, d in layout[m]]
    names = [cohomology_monomial(b) for b in rows[2][2]]
    assert names == ["omega^2", "omega X", "omega Y", "omega Z"]
    assert [cohomology_monomial(b) for b in rows[1][2]] == ["omega", "X", "Y", "Z"]
