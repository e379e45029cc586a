import random
from fractions import Fraction

import pytest
import sympy

from monoquartic.intpoly import IntPoly, RatPoly, discriminant, is_squarefree
from monoquartic.quartic import (GaloisGroup, GaloisReport, QuarticShape, check_resolvent_shift, depress,
                                 galois_group, irreducibility, is_irreducible_quartic, resolvent_cubic,
                                 resolvent_cubic_depressed, splits_into_quadratics)

X = sympy.Symbol('x')


def _random_quartic(rng, bound=12):
    return IntPoly([rng.randint(-bound, bound) for _ in range(4)] + [1])


def test_shape():
    h = QuarticShape.f_family(3, 5)
    assert h.poly == IntPoly([5, 3, 0, 0, 1])
    assert QuarticShape.from_poly(IntPoly([7, 0, 0, 2, 1])) == QuarticShape.g_family(2, 7)
    with pytest.raises(ValueError):
        QuarticShape.from_poly(IntPoly([1, 0, 0, 1]))
    with pytest.raises(ValueError):
        QuarticShape.from_poly(IntPoly([1, 0, 0, 0, 2]))


def test_resolvent_cubic_forms():
    for b in (-7, 1, 2, 30):
        assert resolvent_cubic(QuarticShape.f_family(b, b)) == IntPoly([-b * b, -4 * b, 0, 1])
    for d in (-5, 1, 6):
        assert resolvent_cubic(QuarticShape.g_family(1, d)) == IntPoly([-d, -4 * d, 0, 1])
    p, q, r = 3, -2, 5
    assert resolvent_cubic(IntPoly([r, q, p, 0, 1])) == IntPoly([4 * p * r - q * q, -4 * r, -p, 1])


def test_depress():
    d = 7
    assert depress(QuarticShape.g_family(1, d)) == \
        RatPoly([Fraction(-3, 256) + d, Fraction(1, 8), Fraction(-3, 8), 0, 1])
    assert resolvent_cubic_depressed(RatPoly([1, 1, 0, 0, 1])) == RatPoly([-1, -4, 0, 1])
    assert resolvent_cubic_depressed(RatPoly([-1, 1, 0, 0, 1])) == RatPoly([-1, 4, 0, 1])
    p, q, r = 2, 3, -1
    assert resolvent_cubic_depressed(RatPoly([r, q, p, 0, 1])) == RatPoly([-q * q, p * p - 4 * r, 2 * p, 1])
    with pytest.raises(ValueError):
        resolvent_cubic_depressed(RatPoly([1, 0, 0, 1, 1]))


def test_resolvent_shift_and_discriminant():
    rng = random.Random(40)
    for d in (1, 2, 3):
        assert check_resolvent_shift(QuarticShape.g_family(1, d))
    for _ in range(200):
        h = _random_quartic(rng, 10**4)
        assert check_resolvent_shift(h)
        assert discriminant(resolvent_cubic(h)) == discriminant(h)
    for d in (-9, 1, 5, 13):
        assert discriminant(IntPoly([d, 0, 0, 1, 1])) == d * d * (256 * d - 27)


def _resolvent_sweep(samples):
    rng = random.Random(43)
    for _ in range(samples):
        h = _random_quartic(rng, 50)
        assert check_resolvent_shift(h), h
        assert discriminant(resolvent_cubic(h)) == discriminant(h), h


def test_resolvent_sweep():
    _resolvent_sweep(1000)


@pytest.mark.slow
def test_resolvent_sweep_full():
    _resolvent_sweep(10**4)


def test_splits_into_quadratics():
    assert splits_into_quadratics(IntPoly([4, 0, 0, 0, 1]))
    assert not splits_into_quadratics(IntPoly([1, 0, 0, 0, 1]))
    assert splits_into_quadratics(IntPoly([-4, 0, 0, 0, 1]))
    assert splits_into_quadratics(IntPoly([2, 0, 3, 0, 1]))
    for a, b in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        assert not splits_into_quadratics(QuarticShape.f_family(a, b))


def test_irreducibility_paths():
    assert irreducibility(IntPoly([2, 2, 0, 0, 1])) == (True, 'eisenstein@2')
    assert irreducibility(IntPoly([-2, 0, 0, 1, 1])) == (False, 'rational-root')
    assert irreducibility(IntPoly([4, 0, 0, 0, 1])) == (False, 'quadratic-split')
    assert irreducibility(IntPoly([1, 1, 0, 0, 1])) == (True, 'quadratic-split')


def test_irreducibility_against_sympy():
    rng = random.Random(41)
    for _ in range(400):
        h = _random_quartic(rng)
        if rng.random() < 0.3:
            g1 = IntPoly([rng.randint(-6, 6), rng.randint(-6, 6), 1])
            g2 = IntPoly([rng.randint(-6, 6), rng.randint(-6, 6), 1])
            h = g1 * g2
        _, factors = sympy.Poly(list(reversed(h.coeffs)), X).factor_list()
        expected = len(factors) == 1 and factors[0][1] == 1
        assert is_irreducible_quartic(h) == expected, h


def test_galois_examples():
    cases = {IntPoly([2, 2, 0, 0, 1]): GaloisGroup.S4,
             IntPoly([3, 3, 0, 0, 1]): GaloisGroup.D8_OR_C4,
             IntPoly([1, 0, 0, 1, 1]): GaloisGroup.S4,
             IntPoly([1, 0, 0, 0, 1]): GaloisGroup.V4,
             IntPoly([1, 1, 1, 1, 1]): GaloisGroup.D8_OR_C4,
             IntPoly([12, 8, 0, 0, 1]): GaloisGroup.A4,
             IntPoly([4, 0, 0, 0, 1]): GaloisGroup.NOT_IRREDUCIBLE}
    for h, group in cases.items():
        assert galois_group(h).group is group, h
    report = galois_group(IntPoly([3, 3, 0, 0, 1]))
    assert report.disc == 4725 and not report.disc_is_square
    assert not report.resolvent_irreducible


def test_galois_table_consistency():
    rng = random.Random(42)
    for _ in range(300):
        report = galois_group(_random_quartic(rng, 20))
        if report.group is GaloisGroup.S4:
            assert not report.disc_is_square and report.resolvent_irreducible
        if report.group is GaloisGroup.V4:
            assert report.disc_is_square and not report.resolvent_irreducible


def test_galois_report_round_trip():
    report = galois_group(IntPoly([12, 8, 0, 0, 1]))
    assert GaloisReport.from_dict(report.to_dict()) == report
    assert report.to_dict()['resolvent'] == 'y^3 - 48*y - 64'


def _s4_sweep(bound):
    for b in range(-bound, bound + 1):
        if b in (0, 3, 5) or not is_squarefree(b) or not is_squarefree(256 - 27 * b):
            continue
        assert galois_group(QuarticShape.f_family(b, b)).group is GaloisGroup.S4, b
    for b in (3, 5):
        assert not galois_group(QuarticShape.f_family(b, b)).resolvent_irreducible
    for d in range(-bound, bound + 1):
        if d in (0, -2) or not is_squarefree(d) or not is_squarefree(256 * d - 27):
            continue
        assert galois_group(QuarticShape.g_family(1, d)).group is GaloisGroup.S4, d


def test_s4_families():
    _s4_sweep(200)


@pytest.mark.slow
def test_s4_families_full():
    _s4_sweep(1000)
