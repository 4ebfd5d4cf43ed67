import pytest

from wedgesyz.corpus import corpus_example
from wedgesyz.exterior import column_to_cycle
from wedgesyz.koszul import (
    KoszulChain,
    KoszulCohomology,
    KoszulError,
    chain_is_boundary,
    first_cycle,
    is_koszul_cycle,
    koszul_cohomology_dim,
    koszul_cup_product,
    koszul_differential,
)
from wedgesyz.resolution import betti_table, free_resolution
from wedgesyz.ring import PolyRing

R = PolyRing(("x0", "x1", "x2", "x3"))


def test_differential_on_p1():
    f = R("x1^2 + x0*x3")
    c = KoszulChain(R, 1, 2, {(2,): f})
    d = koszul_differential(c)
    assert d.p == 0 and d.q == 3
    assert d.terms == {(): R("x2") * f}


def test_rnc_gamma_is_a_cycle():
    e = corpus_example("rnc4")
    gamma = column_to_cycle(e.exterior("D3").primitive_part(), 0, e.generators)
    assert not koszul_differential(gamma)


def test_cycle_basics():
    assert is_koszul_cycle(KoszulChain(R, 2, 1))
    assert not is_koszul_cycle(KoszulChain(R, 1, 1, {(0,): R("x1")}))


def test_veronese_cycle_is_nonzero_class(run):
    e = corpus_example("veronese_proj")
    res = run("veronese_proj")
    gamma = column_to_cycle(res.D[4], 0, e.generators)
    assert is_koszul_cycle(gamma)
    assert not chain_is_boundary(KoszulChain(e.ring, 3, 3, gamma.terms, "IX", e.ideal))


def test_cohomology_examples():
    assert koszul_cohomology_dim(corpus_example("veronese_proj").ideal, 3, 3, "IX") == 1
    assert koszul_cohomology_dim(corpus_example("rnc4").ideal, 0, 2, "IX") == 6
    assert koszul_cohomology_dim(corpus_example("rnc4").ideal, 1, -1) == 0


def test_ix_and_sx_are_shifted():
    I = corpus_example("gr25").ideal
    SX, IX = KoszulCohomology(I, "SX"), KoszulCohomology(I, "IX")
    for p in range(1, 4):
        assert SX.dim(p, 1) == IX.dim(p - 1, 2)


def test_koszul_complex_of_the_ring():
    # K_{p,q}(S) vanishes except K_{0,0} = k
    from wedgesyz.groebner import Ideal

    K = KoszulCohomology(Ideal(R, []), "S")
    assert K.dim(0, 0) == 1
    assert all(K.dim(p, q) == 0 for p in range(5) for q in range(3) if (p, q) != (0, 0))


def test_rnc_cohomology_matches_betti():
    I = corpus_example("rnc4").ideal
    B = betti_table(free_resolution(I))
    K = KoszulCohomology(I)
    for p in range(4):
        for q in range(3):
            assert K.dim(p, q) == B.entry(p, p + q)


@pytest.mark.parametrize("m", [1, 2])
def test_cup_product_of_top_classes(m):
    # Koszul complex of the residue field k = S/(t_1, ..., t_2m)
    from wedgesyz.groebner import Ideal

    S = PolyRing(tuple(f"t{i}" for i in range(2 * m)))
    k = Ideal(S, S.gens())
    a = KoszulChain(S, m, 0, {tuple(range(m)): S.one()}, "SX", k)
    b = KoszulChain(S, m, 0, {tuple(range(m, 2 * m)): S.one()}, "SX", k)
    ab = koszul_cup_product(a, b)
    assert ab.terms == {tuple(range(2 * m)): S.one()}
    assert koszul_cup_product(b, a) == ab * (-1) ** (m * m)
    assert not chain_is_boundary(ab)
    assert not koszul_cup_product(a, KoszulChain(S, m, 0, {}, "SX", k))


def test_cup_product_needs_cycles():
    a = KoszulChain(R, 1, 1, {(0,): R("x1")})
    with pytest.raises(KoszulError):
        koszul_cup_product(a, a)


def test_first_cycle_represents_a_class():
    I = corpus_example("veronese_proj").ideal
    c = first_cycle(I, 3, 3, "IX")
    assert c is not None and is_koszul_cycle(c) and not chain_is_boundary(c)
    assert first_cycle(I, 3, 2, "IX") is None


def test_sx_chains_reduce():
    I = corpus_example("rnc4").ideal
    c = KoszulChain(I.ring, 0, 2, {(): I.generators[0]}, "SX", I)
    assert not c


def test_degree_mismatch_rejected():
    with pytest.raises(KoszulError):
        KoszulChain(R, 1, 2, {(0,): R("x1")})
    with pytest.raises(KoszulError):
        KoszulChain(R, 2, 1, {(1, 0): R("x1")})
