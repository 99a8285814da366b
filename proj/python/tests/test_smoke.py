from fractions import Fraction

import pytest

import trajquad as tq


def test_version():
    assert tq.__version__ == "0.1.0"


def test_quartic_shifts():
    s = tq.solve_even(2, 3)
    assert [str(d) for d in s.delta] == ["3/4 * ĝ^2", "-21/8 * ĝ^5", "333/16 * ĝ^8"]
    assert s.delta_values(1.0)[0] == pytest.approx(0.75)


def test_displaced_oscillator():
    s = tq.solve_odd(0, 4)
    assert str(s.delta[1]) == "-1/2 * ĝ^2"
    assert s.delta[3].is_zero()


def test_coulomb_and_stark():
    c = tq.solve_isotropic("r^2", 8)
    assert c.e_terms[4] == tq.Poly("3*eps")
    assert str(c.assembled_energy(8)) == "-1/2 * ĝ^-4 + 3 * ε * ĝ^4 - 129/4 * ε^2 * ĝ^12"
    st = tq.solve_stark(12)
    assert st.e_terms[12] == tq.Poly("-3555/64*eps^4")
    assert c.energy(1.0, 1e-3, 8) == pytest.approx(tq.solve_radial(1.0, lambda r: r * r, 1e-3), abs=2e-6)


def test_hierarchy():
    h = tq.hierarchy("1/2*x^2 + 1/10*x^4", order=2)
    assert h["e_terms"][0] == pytest.approx(0.5)
    assert h["e_terms"][1] == pytest.approx(0.075, abs=1e-9)
    assert len(h["s_terms"]) == 2 and len(h["nodes"]) == 401


def test_identities():
    reports = tq.identity_checks(1.0, 8.0, 2001)
    assert len(reports) == 16
    assert all(r["passed"] for r in reports)


def test_oracle():
    e = tq.solve_1d(lambda x: 0.5 * x * x, -10.0, 10.0, 400, 3)
    assert e == pytest.approx([0.5, 1.5, 2.5], abs=1e-5)


def test_excited():
    chi0, e0, chi1 = tq.excited_leading([1, 2], [2, 1])
    assert str(chi0) == "q1^2 * q2"
    assert e0 == Fraction(4)
    assert str(chi1) == "-1/2 * q2"
    assert tq.excited_e1("1/2*x^2 + 1/10*x^4", 2) == pytest.approx(0.9, abs=1e-6)


def test_errors_carry_kind():
    with pytest.raises(tq.TrajquadError) as info:
        tq.hierarchy("1/2*x^2 - x^3")
    assert info.value.kind == 1
    assert info.value.name == "InvalidPotential"
    with pytest.raises(tq.TrajquadError) as info:
        tq.excited_e1("1/2*x^2 + 1/10*x^4", 2, points=41)
    assert info.value.kind == 3
