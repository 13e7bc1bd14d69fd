import pytest

import bruhat


def test_dihedral_ball():
    b = bruhat.dihedral(3)
    assert b.complete and b.size == 6
    assert b.length("s0.s1.s0") == 3
    assert b.leq("s0", "s0.s1.s0")
    assert not b.leq("s0.s1", "s1.s0")


def test_r_polynomials():
    b = bruhat.dihedral(4)
    assert b.r("e", "e") == [1]
    assert b.r("e", "s0") == [-1, 1]
    assert b.r("e", "s0.s1") == [1, -2, 1]
    assert b.r("s0", "s1") == []


def test_kl_a3():
    b = bruhat.Ball([[1, 3, 2], [3, 1, 3], [2, 3, 1]], 6)
    assert b.kl("s1", "s1.s0.s2.s1") == [1, 1]
    assert b.kl("e", "s0.s1.s0") == [1]


def test_matchings():
    b = bruhat.dihedral(5)
    assert b.count_families("s0") == 8
    assert b.check_family("s0", 3)["ok"]
    assert b.extend("s0", 0)["base"] == "s0"


def test_infinite_bond():
    assert bruhat.default_bound([[1, None], [None, 1]]) == 6
    assert bruhat.dihedral(None, 4).size == 9


def test_errors():
    b = bruhat.dihedral(3)
    with pytest.raises(ValueError):
        b.length("s7")


def test_suite():
    assert "polynomials" in bruhat.suite_names()
    assert bruhat.run_suite("whole-group")["pass"]
