import pytest

from wedgesyz.corpus import corpus_example
from wedgesyz.duality import (
    DualityError,
    betti_symmetric,
    check_self_dual,
    dualize_complex,
    gorenstein_twist,
    lift_chain_map,
    self_dual_bases,
    theorem_check,
)
from wedgesyz.exterior import SKEW
from wedgesyz.resolution import ComplexMap, betti_table, free_resolution


def resolution(name):
    return free_resolution(corpus_example(name).ideal)


def test_gorenstein_twists():
    assert gorenstein_twist(resolution("segre22")) == -3
    assert gorenstein_twist(resolution("ci5")) == 0
    assert gorenstein_twist(resolution("gr25")) == -5
    with pytest.raises(DualityError):
        gorenstein_twist(resolution("rnc4"))


def test_double_dual_is_the_original():
    C = resolution("gr25")
    t = gorenstein_twist(C)
    DD = dualize_complex(dualize_complex(C, t), t)
    assert DD.modules == C.modules
    assert all(DD.d(i).same_entries(C.d(i)) for i in range(1, C.length + 1))


def test_dual_betti_table_is_mirrored():
    C = resolution("segre22")
    G = dualize_complex(C, gorenstein_twist(C))
    assert G.is_complex()
    assert betti_table(G) == betti_table(C)
    assert betti_symmetric(C)
    assert not betti_symmetric(resolution("veronese_proj"))


def test_ci_dual_pattern(run):
    # in the displayed bases d_4 = -d_2^T
    e = corpus_example("ci5")
    res = run("ci5")
    C = res.complex
    T = res.transitions
    from wedgesyz.resolution import graded_inverse

    d2 = graded_inverse(T[1]) @ C.d(2) @ T[2]
    d4 = graded_inverse(T[3]) @ C.d(4) @ T[4]
    assert d4.same_entries(-d2.transpose(C.modules[-1][0]))
    assert e.matrix("d4") == [[-x for x in r] for r in map(list, zip(*e.matrix("d2")))]


def test_lift_identity_is_identity():
    C = resolution("rnc4")
    u = lift_chain_map(C, C, [[1]])
    for i, ui in enumerate(u):
        assert ui.same_entries(ComplexMap.identity(C.ring, C.modules[i]))


@pytest.mark.parametrize("name", ["ci5", "gr25"])
def test_comparison_maps_are_constant_and_invertible(name):
    C = resolution(name)
    G = dualize_complex(C, gorenstein_twist(C))
    u = lift_chain_map(G, C, [[1]])
    from wedgesyz.resolution import graded_inverse

    for i in range(1, C.length + 1):
        assert (C.d(i) @ u[i]).same_entries(u[i - 1] @ G.d(i))
        assert u[i].is_constant()
        graded_inverse(u[i])


def test_ci_self_dual_bases():
    D, data = self_dual_bases(resolution("ci5"))
    T = D.modules[-1][0]
    assert not check_self_dual(D, data)
    assert D.d(4).same_entries(D.d(2).transpose(T)) or D.d(4).same_entries(-D.d(2).transpose(T))
    assert D.d(3).transpose(T).same_entries(D.d(3).scale(data.sign))
    assert data.sign == 1


def test_segre_self_dual_bases(run):
    D, data = self_dual_bases(resolution("segre22"))
    assert not check_self_dual(D, data)
    assert data.sign == 1
    assert data.phi.same_entries(data.phi.transpose(0))
    # displayed bases: d_2 = (A | B), d_3 = (B^T over A^T) = phi d_2^T
    res = run("segre22")
    assert 2 in res.transitions and 3 in res.transitions
    e = corpus_example("segre22")
    d2, d3 = e.matrix("d2"), e.matrix("d3")
    d2t = [list(c) for c in zip(*d2)]
    phi_d2t = d2t[8:] + d2t[:8]
    assert d3 == phi_d2t


def test_gr25_middle_map_is_skew():
    D, data = self_dual_bases(resolution("gr25"))
    assert data.sign == -1
    T = D.modules[-1][0]
    assert D.d(2).transpose(T).same_entries(-D.d(2))


@pytest.mark.parametrize("name,size", [("gr25", 5), ("dp5_surface", 5), ("segre22", 9), ("ci5", 5)])
def test_theorem_check_skew(name, size):
    rep = theorem_check(corpus_example(name).ideal, name)
    assert rep.ok and rep.classification == SKEW
    assert rep.D.shape == (size, size)
    assert rep.D.transpose() == -rep.D
    assert "skew-symmetric: yes" in rep.to_text()


def test_theorem_check_rejects_rnc():
    rep = theorem_check(corpus_example("rnc4").ideal, "rnc4")
    assert not rep.ok
    assert [label for label, ok, _ in rep.checks if not ok] == ["gorenstein"]


def test_theorem_check_rejects_veronese():
    rep = theorem_check(corpus_example("veronese_proj").ideal, "veronese_proj")
    assert not rep.ok


def test_ci_theorem_d_matches_display(run):
    res = run("ci5")
    D = res.report.D.times_constant(res.transitions[4].constant_matrix())
    assert D == corpus_example("ci5").exterior("D4")
