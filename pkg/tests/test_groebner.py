from itertools import combinations

import pytest

from wedgesyz.corpus import corpus_example, minors
from wedgesyz.groebner import (
    Ideal,
    buchberger,
    colon_ideal,
    ideal_equal,
    intersect_ideals,
    irrelevant_ideal,
    is_subideal,
    linear_ideal,
    normal_form,
    saturate,
    saturation_chain,
    unit_ideal,
    vector_space_dim,
)
from wedgesyz.ring import PolyRing, mono_divides, mono_div, mono_lcm


def naive_reduce(f, G):
    """Full reduction by plain multivariate division (oracle)."""
    r = f.ring.zero()
    while f:
        m, c = f.leading_term()
        for g in G:
            gm, gc = g.leading_term()
            if mono_divides(gm, m):
                f = f - g.mul_term(mono_div(m, gm), c / gc)
                break
        else:
            t = f.ring.monomial(m, c)
            r, f = r + t, f - t
    return r


def spoly(f, g):
    fm, fc = f.leading_term()
    gm, gc = g.leading_term()
    L = mono_lcm(fm, gm)
    return f.mul_term(mono_div(L, fm), 1 / fc) - g.mul_term(mono_div(L, gm), 1 / gc)


def test_principal_monomial_ideal():
    R = PolyRing(("x0", "x1"))
    assert buchberger(Ideal(R, [R("x0")])).elements == (R("x0"),)


def test_generic_2x4_minors_pass_the_spair_oracle():
    R = PolyRing(tuple(f"a{i}" for i in range(4)) + tuple(f"b{i}" for i in range(4)))
    M = [[R.var(f"a{i}") for i in range(4)], [R.var(f"b{i}") for i in range(4)]]
    I = minors(M, 2)
    G = list(buchberger(I))
    for f, g in combinations(G, 2):
        assert not naive_reduce(spoly(f, g), G)
    for g in I.generators:
        assert not naive_reduce(g, G)
    # reduced: monic, and no term divisible by another leading monomial
    for g in G:
        assert g.leading_coeff() == 1
        others = [h.leading_monomial() for h in G if h is not g]
        assert not any(mono_divides(lm, m) for lm in others for m in g.monomials())


def test_rnc_membership():
    I = corpus_example("rnc4").ideal
    R = I.ring
    G = I.groebner
    assert not normal_form(R("x1^2 - x0*x2"), G)
    assert not normal_form(R("x1^2*x3 - x0*x2*x3"), G)
    for g in I.generators:
        assert not normal_form(g, G)
    assert normal_form(R.one(), G) == R.one()


def test_vector_space_dims():
    assert vector_space_dim(corpus_example("rnc4").ideal, 2) == 6
    assert vector_space_dim(corpus_example("segre22").ideal, 2) == 9
    assert vector_space_dim(corpus_example("rnc4").ideal, 0) == 0


def test_colon_of_ideal_by_itself_is_unit():
    I = corpus_example("rnc4").ideal
    assert ideal_equal(colon_ideal(I, I), unit_ideal(I.ring))


def test_intersections():
    R = PolyRing(("x0", "x1"))
    assert ideal_equal(intersect_ideals(Ideal(R, [R("x0")]), Ideal(R, [R("x1")])), Ideal(R, [R("x0*x1")]))
    I = corpus_example("rnc4").ideal
    assert ideal_equal(intersect_ideals(I, unit_ideal(I.ring)), I)


def test_grassmannian_component_intersection():
    e = corpus_example("gr25")
    R = e.ring
    L = linear_ideal(R, [R(v) for v in ("x04", "x14", "x24", "x34")])
    q = e.generators
    assert ideal_equal(intersect_ideals(e.ideal, L), Ideal(R, q[:4]))


def test_saturation():
    R = PolyRing(("x0", "x1"))
    I = Ideal(R, [R("x0^2"), R("x0*x1")])
    assert ideal_equal(saturate(I, irrelevant_ideal(R)), Ideal(R, [R("x0")]))
    J = corpus_example("rnc4").ideal
    assert ideal_equal(saturate(J, unit_ideal(J.ring)), J)


def test_segre_syzygy_ideal_is_saturated():
    e = corpus_example("segre22")
    gamma = e.exterior("gamma")
    from wedgesyz.exterior import column_to_cycle
    from wedgesyz.syzscheme import syzygy_ideal

    I = syzygy_ideal(column_to_cycle(gamma, 0, e.generators))
    chain = saturation_chain(I, irrelevant_ideal(e.ring))
    assert ideal_equal(chain[-1], I)
    assert len(chain) <= 2


def test_dp5_quadrics_equal_scroll_minors():
    e = corpus_example("dp5_surface")
    Q = e.generators
    scroll = minors(e.matrix("scroll"), 2)
    assert ideal_equal(Ideal(e.ring, [Q[0] + Q[1], Q[2], Q[3]]), scroll)


def test_ideal_equal_basics():
    I = corpus_example("rnc4").ideal
    assert ideal_equal(I, Ideal(I.ring, list(reversed(I.generators))))
    R = PolyRing(("x0",))
    assert not ideal_equal(Ideal(R, [R("x0")]), Ideal(R, [R("x0^2")]))
    assert is_subideal(Ideal(R, [R("x0^2")]), Ideal(R, [R("x0")]))


def test_colon_by_variable_matches_general_method():
    # the grevlex shortcut for (I : x_k) against (I cap (x_k)) / x_k
    from wedgesyz.groebner import _quotient_by_variable

    I = corpus_example("rnc4").ideal
    R = I.ring
    J = Ideal(R, I.generators + (R("x0*x4^2"),))
    for k in range(R.nvars):
        g = R.var(k)
        slow = Ideal(R, [f / g for f in intersect_ideals(J, Ideal(R, [g])).generators])
        assert ideal_equal(Ideal(R, _quotient_by_variable(J, k)), slow)
