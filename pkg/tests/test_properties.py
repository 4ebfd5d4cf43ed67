from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from wedgesyz.corpus import corpus_example
from wedgesyz.exterior import SKEW, ExteriorElement, column_to_cycle, symmetry_classify, wedge
from wedgesyz.groebner import Ideal, ideal_equal
from wedgesyz.koszul import KoszulChain, is_koszul_cycle, koszul_differential
from wedgesyz.ring import PolyRing, graded_piece_basis
from wedgesyz.duality import theorem_check
from wedgesyz.syzscheme import completion_matrix, drop_generator_transform

R = PolyRing(("x0", "x1", "x2", "x3"))
small = st.integers(min_value=-4, max_value=4)


@st.composite
def polys(draw, degree):
    mons = graded_piece_basis(R, degree)
    picked = draw(st.lists(st.sampled_from(mons), max_size=4))
    return sum((R.monomial(m, draw(small)) for m in picked), R.zero())


@st.composite
def chains(draw):
    p = draw(st.integers(min_value=0, max_value=4))
    q = draw(st.integers(min_value=0, max_value=2))
    idxs = draw(st.lists(st.sampled_from(list(combinations(range(4), p))), max_size=4, unique=True))
    return KoszulChain(R, p, q, {i: draw(polys(q)) for i in idxs})


@st.composite
def forms(draw, k):
    idxs = list(combinations(range(4), k))
    return ExteriorElement(R, k, {i: draw(small) for i in draw(st.lists(st.sampled_from(idxs), max_size=4))})


@settings(max_examples=100, deadline=None)
@given(chains())
def test_delta_squared_is_zero(c):
    if c.p >= 2:
        assert not koszul_differential(koszul_differential(c))


@settings(max_examples=100, deadline=None)
@given(forms(1), forms(2), forms(1))
def test_wedge_is_associative_and_graded_commutative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
    assert wedge(a, b) == wedge(b, a)
    assert wedge(a, c) == -wedge(c, a)


@settings(max_examples=50, deadline=None)
@given(st.lists(small, min_size=5, max_size=5).filter(any))
def test_drop_transform_on_gr25(c):
    rep = _gr25()
    gens = [rep.complex.d(1)[(0, j)] for j in range(5)]
    Dp, Qp = drop_generator_transform(rep.D, c, gens)
    assert symmetry_classify(Dp) == SKEW
    assert not Dp[0, 0]
    assert is_koszul_cycle(column_to_cycle(Dp, 0, Qp))
    # Q' P = Q
    P = completion_matrix(c)
    for j, g in enumerate(gens):
        assert sum((Qp[i] * P[i][j] for i in range(5)), gens[0].ring.zero()) == g


_CACHE = {}


def _gr25():
    if "gr25" not in _CACHE:
        _CACHE["gr25"] = theorem_check(corpus_example("gr25").ideal, "gr25")
    return _CACHE["gr25"]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["rnc4", "gr25", "dp5_surface", "segre22"]), st.randoms(use_true_random=False))
def test_groebner_basis_is_unique(name, rnd):
    e = corpus_example(name)
    gens = e.generators
    n = len(gens)
    # an invertible (unitriangular after shuffling) recombination of the quadrics
    perm = list(range(n))
    rnd.shuffle(perm)
    new = []
    for a in range(n):
        g = gens[perm[a]] * rnd.choice([1, -1, 2, Fraction(1, 3)])
        for b in range(a + 1, n):
            g = g + gens[perm[b]] * rnd.randint(-3, 3)
        new.append(g)
    assert ideal_equal(Ideal(e.ring, new), e.ideal)
    assert Ideal(e.ring, new).groebner.elements == e.ideal.groebner.elements


def test_strands(run):
    # every D_p column is a cycle and the wedge product is associative on strands
    from wedgesyz.exterior import ExteriorMatrix, wedge_compose, wedge_matmul

    for name in ("rnc4", "veronese_proj", "gr25", "dp5_surface", "segre22", "ci5"):
        res = run(name)
        C = res.complex
        gens = [C.d(1)[(0, j)] for j in range(C.d(1).ncols)]
        for p, D in res.D.items():
            for j in range(D.ncols):
                assert is_koszul_cycle(column_to_cycle(D, j, gens))
        top = max(res.D)
        maps = [ExteriorMatrix.from_map(C.d(i)) for i in range(2, top + 1)]
        for k in range(1, len(maps) - 1):
            left = wedge_matmul(wedge_matmul(maps[k - 1], maps[k]), maps[k + 1])
            right = wedge_matmul(maps[k - 1], wedge_matmul(maps[k], maps[k + 1]))
            assert left == right
        assert res.D[top] == wedge_compose([C.d(i) for i in range(2, top + 1)])
