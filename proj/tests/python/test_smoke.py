from fractions import Fraction

import pytest

import qfdensity as q


def test_densities():
    assert q.density("x^2+y^2+z^2")["density"] == Fraction(5, 6)
    assert q.density("x^2-y^2")["density"] == Fraction(3, 4)
    big = q.density("2023*x^2+2023*y^2+2023*z^2+2023*w^2")
    assert big["density"] == Fraction(1, 2023)
    assert big["factors"] == {7: Fraction(1, 7), 17: Fraction(1, 289)}
    assert q.density("x^2+y^2")["case"] == "anisotropic-binary-zero"


def test_forms():
    f = q.QuadraticForm.parse("x^2+5*x*y")
    assert f.arity == 2
    assert f.coeffs == [1, 5, 0]
    assert f([2, -1]) == -6
    assert str(f) == "x^2 + 5*x*y"
    assert q.QuadraticForm(3, [1, 0, 0, 1, 0, 1]) == q.QuadraticForm.parse("x^2+y^2+z^2")
    assert q.density(f)["density"] == q.density("x^2+5*x*y")["density"]


def test_local():
    t = q.representation_table("x^2-4*y^2", 2)
    assert t["v"] == [0, 2, 0, 2, 5, 5, 5, 5]
    assert q.representation_table("x^2+y^2+z^2", 2)["v"][3] is None
    assert q.local_density("x^2+x*y+y^2", 2) == Fraction(2, 3)
    assert not q.zp_represents("x^2+y^2+z^2", 2, 7)
    assert q.locally_represented("x^2+y^2+7*z^2+7*w^2", 3)


def test_enumeration():
    assert q.exceptional_set("x^2+y^2+7*z^2+7*w^2", 50) == [3, 6, 21, 42]
    assert q.represented("x^2+y^2", 10) == [1, 2, 4, 5, 8, 9, 10]
    assert q.empirical_density("x^2+y^2+z^2+w^2", 1000) == 1
    assert not q.represents_isotropic_binary("x^2+5*x*y", 19)


def test_inverse():
    plan = q.greedy_interval_product(Fraction(1, 2), 1)
    assert Fraction(1, 2) < plan["product"] < 1
    assert q.v2_density_construction(3) == (31, Fraction(40, 93))
    assert q.attainable_local_density_set(3) == {Fraction(1, 2), Fraction(5, 8), Fraction(7, 8), Fraction(1)}


def test_checks_and_symbols():
    rep = q.theorem_checks("x^2+y^2+z^2")
    assert rep["all_hold"]
    assert rep["checks"]["negative-2-adic-valuation"]["applicable"]
    assert q.hilbert_symbol(-1, -1, 2) == -1
    assert q.hilbert_symbol(-1, -1, 0) == -1
    assert q.is_isotropic_over_Q("x^2-y^2")


def test_errors():
    with pytest.raises(q.ParseError):
        q.density("x^2+")
    with pytest.raises(ValueError):
        q.density("x^^2")
    with pytest.raises(q.DomainError):
        q.exceptional_set("x^2+y^2-3*z^2", 100)
    with pytest.raises(q.DomainError):
        q.greedy_interval_product(Fraction(3, 10), Fraction(31, 100))
