from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspidal.arith import divisors_of, parts
from cuspidal.eisq import (
    QExpansion,
    base_epp,
    build_qexp,
    eigen_check,
    hecke_on_qexp,
    level_map,
    residue_closed,
    residue_table,
)
from cuspidal.heckediv import EisensteinDatum


def _valid_data(n):
    sf, sq, _ = parts(n)
    for d in divisors_of(sq):
        for m in divisors_of(sf * d):
            if m * (sq // d) != 1:
                yield EisensteinDatum(n, m, d)


def test_base_epp_coefficients():
    f = base_epp(3, 6)
    assert f.coeffs == (
        Fraction(1, 12),
        Fraction(1),
        Fraction(3),
        Fraction(1),
        Fraction(7),
        Fraction(6),
        Fraction(3),
    )
    with pytest.raises(ValueError):
        base_epp(6, 4)


def test_base_epp_is_level_eigenform():
    f = base_epp(3, 30)
    u3 = hecke_on_qexp(f, 3)
    assert u3.coeffs == f.coeffs[: u3.prec + 1]
    t2 = hecke_on_qexp(f, 2)
    assert t2.coeffs == tuple(3 * a for a in f.coeffs[: t2.prec + 1])


def test_build_qexp_base_cases():
    assert build_qexp(EisensteinDatum(3, 3, 1), 10) == base_epp(3, 10)
    # prime-power level with eigenvalue 1 keeps the prime-level expansion
    f = build_qexp(EisensteinDatum(9, 3, 3), 10)
    assert f.coeffs == base_epp(3, 10).coeffs
    assert f.n == 9
    assert build_qexp(EisensteinDatum(9, 1, 1), 10).a(0) == 0


def test_build_qexp_constant_terms():
    assert build_qexp(EisensteinDatum(22, 22, 1), 4).a(0) == Fraction(-5, 12)
    assert build_qexp(EisensteinDatum(22, 11, 1), 4).a(0) == 0
    assert build_qexp(EisensteinDatum(3, 3, 1), 4).a(0) == Fraction(1, 12)


def test_hecke_annihilates_square_level_series():
    f = build_qexp(EisensteinDatum(9, 1, 1), 24)
    g = hecke_on_qexp(f, 3)
    assert all(a == 0 for a in g.coeffs)
    assert g.prec == 8


def test_hecke_constant_term_off_level():
    f = QExpansion(5, 4, (Fraction(7), Fraction(0), Fraction(0), Fraction(0), Fraction(0)))
    g = hecke_on_qexp(f, 3)
    assert g.a(0) == (3 + 1) * 7


def test_precision_contracts():
    f = base_epp(5, 21)
    assert hecke_on_qexp(f, 2).prec == 10
    assert hecke_on_qexp(f, 7).prec == 3
    assert f.truncate(4).prec == 4
    with pytest.raises(ValueError):
        f.truncate(30)


def test_level_map_identities_r2():
    # the square-level series agrees with both single-step maps out of level Np
    direct = build_qexp(EisensteinDatum(99, 11, 1), 40)
    via_minus = level_map("minus", build_qexp(EisensteinDatum(33, 33, 1), 40), 3)
    via_plus = level_map("plus", build_qexp(EisensteinDatum(33, 11, 1), 40), 3)
    assert direct.coeffs == via_minus.coeffs == via_plus.coeffs
    assert via_minus.n == 99


def test_level_map_plain_keeps_coefficients():
    f = base_epp(7, 12)
    g = level_map("plain", f, 3)
    assert g.coeffs == f.coeffs and g.n == 21


def test_eigen_check_examples():
    assert eigen_check(EisensteinDatum(11, 11, 1), 60, 13).passed
    report = eigen_check(EisensteinDatum(9, 1, 1), 60, 13)
    assert report.passed
    (u3,) = [c for c in report.checks if c.on_level]
    assert u3.eigenvalue == 0
    report45 = eigen_check(EisensteinDatum(45, 3, 3), 60, 13)
    assert report45.passed
    (u5,) = [c for c in report45.checks if c.on_level and c.prime == 5]
    assert u5.eigenvalue == 5
    with pytest.raises(ValueError):
        eigen_check(EisensteinDatum(11, 11, 1), 10, 13)


def test_eigen_check_sweep_small():
    for n in range(2, 40):
        for datum in _valid_data(n):
            assert eigen_check(datum, 30, 7).passed, datum


def test_residue_tables():
    assert residue_table(EisensteinDatum(3, 3, 1)).res == (
        (1, Fraction(2)),
        (3, Fraction(-2)),
    )
    assert residue_table(EisensteinDatum(9, 1, 1)).res == (
        (1, Fraction(16, 3)),
        (3, Fraction(-8, 3)),
        (9, Fraction(0)),
    )
    assert residue_table(EisensteinDatum(9, 3, 3)).res == (
        (1, Fraction(6)),
        (3, Fraction(-2)),
        (9, Fraction(-2)),
    )
    assert residue_table(EisensteinDatum(45, 15, 3)).res == (
        (1, Fraction(24)),
        (3, Fraction(-8)),
        (5, Fraction(-24)),
        (9, Fraction(-8)),
        (15, Fraction(8)),
        (45, Fraction(8)),
    )


def test_residue_closed_examples():
    assert residue_closed(EisensteinDatum(9, 1, 1)) == (Fraction(0), Fraction(-8, 3))
    assert residue_closed(EisensteinDatum(3, 3, 1)) == (Fraction(-2), Fraction(-2))
    assert residue_closed(EisensteinDatum(11, 11, 1))[1] == Fraction(-10)
    # at full radical the residue at infinity is prod (1 - p)
    assert residue_closed(EisensteinDatum(22, 22, 1))[0] == Fraction(10)
    assert residue_closed(EisensteinDatum(22, 11, 1))[0] == Fraction(0)


def test_residue_invariants_sweep():
    for n in range(2, 80):
        for datum in _valid_data(n):
            table = residue_table(datum)
            assert table.weighted_sum() == 0
            at_inf, at_ml = residue_closed(datum)
            assert table.at_level(n) == at_inf, datum
            assert table.at_level(datum.m * datum.l_part) == at_ml, datum
            assert table.at_level(n) == -24 * build_qexp(datum, 2).a(0), datum


@settings(max_examples=30)
@given(
    p=st.sampled_from([2, 3, 5, 7]),
    k=st.integers(min_value=-6, max_value=6),
    prec=st.integers(min_value=4, max_value=24),
)
def test_level_maps_are_linear(p, k, prec):
    f = base_epp(p, prec)
    for kind in ("plus", "minus", "plain"):
        g = level_map(kind, f, 2)
        h = level_map(kind, k * f, 2)
        assert h.coeffs == tuple(k * a for a in g.coeffs)


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(min_value=10, max_value=40))
def test_hecke_multiplicative_coefficients(p, prec):
    # off-level operators commute on the base series
    f = base_epp(p, prec)
    qs = [q for q in (2, 3, 5) if q != p][:2]
    a = hecke_on_qexp(hecke_on_qexp(f, qs[0]), qs[1])
    b = hecke_on_qexp(hecke_on_qexp(f, qs[1]), qs[0])
    assert a.coeffs == b.coeffs
