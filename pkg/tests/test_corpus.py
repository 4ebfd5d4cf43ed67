from math import comb

import pytest

from wedgesyz.corpus import (
    NAMES,
    CorpusError,
    InputError,
    corpus_example,
    format_ideal_file,
    minors,
    parse_ideal_file,
    pfaffian,
    pfaffians,
    poly_matrix,
    skew_from_upper,
)
from wedgesyz.groebner import Ideal, ideal_equal, vector_space_dim
from wedgesyz.resolution import betti_table, free_resolution


def test_rnc_minors():
    e = corpus_example("rnc4")
    I = minors(e.matrix("M"), 2)
    assert ideal_equal(I, e.ideal)
    got = {str(g) for g in I.generators} | {str(-g) for g in I.generators}
    assert all(str(q) in got for q in e.generators)


def test_scroll_minors_and_one_minors():
    e = corpus_example("dp5_surface")
    M = e.matrix("scroll")
    assert len(minors(M, 2).generators) == 3
    ones = minors(M, 1)
    assert sorted(map(str, ones.generators)) == sorted(str(x) for r in M for x in r if x)
    with pytest.raises(ValueError):
        minors(M, 3)


def test_pfaffians_of_generic_skew_matrix():
    e = corpus_example("gr25")
    R = e.ring
    M = e.matrix("d2")
    assert len(pfaffians(M, 4).generators) == 5
    sub = [[M[i][j] for j in range(4)] for i in range(4)]
    assert pfaffian(sub) == R("x01*x23 - x02*x13 + x03*x12")
    two = pfaffians(M, 2)
    assert sorted(map(str, two.generators)) == sorted(str(M[i][j]) for i in range(5) for j in range(i + 1, 5))


def test_segre_pfaffians():
    e = corpus_example("segre22")
    P = pfaffians(e.matrix("M"), 4)
    assert vector_space_dim(P, 2) == 9
    assert ideal_equal(P, e.ideal)


def test_pfaffian_errors():
    e = corpus_example("gr25")
    with pytest.raises(ValueError):
        pfaffians(e.matrix("d2"), 3)
    with pytest.raises(ValueError):
        pfaffians([[e.ring.zero(), e.ring.one()], [e.ring.one(), e.ring.zero()]], 2)


def test_veronese_entry():
    e = corpus_example("veronese_proj")
    assert len(e.generators) == 7
    assert e.generators[0] == e.ring("y0^3 - y0*y3^2 + y0*y2*y4 + y1*y3*y4 - y0*y4^2")


def test_ci_entry():
    e = corpus_example("ci5")
    assert e.ring.nvars == 5
    assert free_resolution(e.ideal).ranks() == [comb(5, p) for p in range(6)]


def test_gr25_metadata():
    e = corpus_example("gr25")
    assert (e.n, e.e, e.r, e.d) == (6, 3, 9, 5)


@pytest.mark.parametrize("name", ["gr25", "dp5_surface", "segre22"])
def test_del_pezzo_invariants(name):
    e = corpus_example(name)
    assert e.del_pezzo
    assert vector_space_dim(e.ideal, 2) == comb(e.e + 1, 2) - 1
    assert e.d == e.e + 2
    B = betti_table(free_resolution(e.ideal))
    assert B.length == e.e


def test_unknown_name():
    with pytest.raises(CorpusError):
        corpus_example("p2")


def test_entries_are_shared():
    assert corpus_example("gr25") is corpus_example("gr25")
    assert NAMES == ("rnc4", "veronese_proj", "gr25", "dp5_surface", "segre22", "ci5")


def test_ideal_file_roundtrip():
    for name in NAMES:
        e = corpus_example(name)
        text = format_ideal_file(e.ring, e.generators, e.description)
        ring, gens = parse_ideal_file(text)
        assert ring == e.ring and gens == e.generators


@pytest.mark.parametrize(
    "text,line",
    [
        ("", None),
        ("# only a comment\n", None),
        ("ring x y\n", None),
        ("ring x y\nideal\n", None),
        ("ideal\nx\n", 1),
        ("ring x y\nx^2\n", 2),
        ("ring x y\nideal\nx^2 +\n", 3),
        ("ring x x\nideal\nx\n", 1),
    ],
)
def test_ideal_file_errors(text, line):
    with pytest.raises(InputError) as exc:
        parse_ideal_file(text)
    assert exc.value.line == line


def test_skew_helpers():
    e = corpus_example("gr25")
    M = skew_from_upper(e.ring, [["x01", "x02"], ["x12"]])
    assert M[1][0] == -M[0][1] and not M[2][2]
    assert poly_matrix(e.ring, [["x01", 0]])[0][1] == e.ring.zero()
