from fractions import Fraction

import pytest

import nahmsearch as ns


def test_rogers_ramanujan():
    s = ns.nahm_sum([[2]], [0], "-1/60", order=10)
    assert s.offset == Fraction(-1, 60)
    assert [s.coefficient(s.offset + i) for i in range(7)] == [1, 1, 1, 1, 2, 2, 3]


def test_characters():
    s = ns.character("coset:k=2,l=1,m=1", order=10)
    assert s.offset == Fraction(1, 24)
    assert [c for _, c in s.terms()][:5] == [1, 1, 1, 2, 2]
    assert len(ns.predicted_combinations(4)) == 5


def test_search_k2():
    records = ns.search("coset", 2, lo=-2, hi=2, denominators=[1, 2])
    assert [(r["B"], r["C"]) for r in records] == [([0], Fraction(-1, 48)), ([Fraction(-1, 2)], Fraction(1, 24))]
    assert records[1]["matched"] == "2*coset:k=2,l=1,m=1"


def test_tba_and_dual():
    t = ns.tba(ns.family_matrix("coset", 4))
    assert t["ceff_dilog"].startswith("1")
    a, b, c = ns.dual([[1]], [0], "-1/48")
    assert (a, b, c) == ([[1]], [0], Fraction(-1, 48))


def test_errors():
    with pytest.raises(ValueError):
        ns.nahm_sum([[1, 2], [2, 1]], [0, 0])
    with pytest.raises(ValueError):
        ns.character("coset:k=2,l=0,m=1")
