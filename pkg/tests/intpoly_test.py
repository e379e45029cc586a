import random
from fractions import Fraction

import gmpy2
import numpy as np
import pytest
import sympy

from monoquartic.intpoly import (INFINITY, Factorization, IntPoly, RatPoly, discriminant, factor_int,
                                 is_eisenstein, is_probable_prime, is_squarefree, odd_part_squarefree,
                                 rational_roots, resultant, small_primes, vp_int, vp_poly)

X = sympy.Symbol('x')


def _sympy(h):
    return sympy.Poly(list(reversed(h.coeffs)), X)


def test_parse():
    assert IntPoly.parse('x^4 + 2x + 2') == IntPoly([2, 2, 0, 0, 1])
    assert IntPoly.parse('x**4 + 2*x + 2') == IntPoly([2, 2, 0, 0, 1])
    assert IntPoly.parse('(x+1)^2') == IntPoly([1, 2, 1])
    assert IntPoly.parse('y^3 - 4*y - 1') == IntPoly([-1, -4, 0, 1])
    assert IntPoly.parse('−x + 3') == IntPoly([3, -1])
    assert IntPoly.parse('7') == 7
    for bad in ('', 'x^', 'x + y', '2 $ x', '(x + 1'):
        with pytest.raises(ValueError):
            IntPoly.parse(bad)


def test_to_str():
    assert str(IntPoly([2, 2, 0, 0, 1])) == 'x^4 + 2*x + 2'
    assert IntPoly([-1, -4, 0, 1]).to_str('y') == 'y^3 - 4*y - 1'
    assert str(RatPoly([Fraction(-3, 256), Fraction(1, 8), Fraction(-3, 8), 0, 1])) == \
        'x^4 - 3/8*x^2 + 1/8*x - 3/256'
    assert str(IntPoly()) == '0'


def test_coefficients_must_be_integers():
    assert IntPoly([gmpy2.mpz(3), np.int64(-2), Fraction(4, 2), True]) == IntPoly([3, -2, 2, 1])
    for bad in (2.5, 2.0, '2', None):
        with pytest.raises(TypeError):
            IntPoly([1, bad, 1])
    with pytest.raises(ValueError):
        IntPoly([Fraction(1, 2)])
    assert RatPoly([Fraction(1, 2)]).coeffs == (Fraction(1, 2),)


def test_arithmetic():
    f = IntPoly([1, 1])
    assert f * f == IntPoly([1, 2, 1])
    assert f ** 3 == IntPoly([1, 3, 3, 1])
    assert (f * f) - f == IntPoly([0, 1, 1])
    assert IntPoly([0, 0, 1]).compose(f) == IntPoly([1, 2, 1])
    q, r = divmod(IntPoly([1, 2, 1]), f)
    assert q == f and r.is_zero()
    with pytest.raises(ValueError):
        divmod(IntPoly([1, 0, 1]), IntPoly([1, 2]))
    q, r = divmod(RatPoly([1, 0, 1]), RatPoly([1, 2]))
    assert q * RatPoly([1, 2]) + r == RatPoly([1, 0, 1])


def test_small_primes():
    assert list(small_primes(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(small_primes(1)) == 0


def test_valuations():
    assert vp_int(48, 2) == 4
    assert vp_int(-27, 3) == 3
    assert vp_int(0, 5) == INFINITY
    assert vp_poly(IntPoly([27, 9, 3]), 3) == 1
    assert vp_poly(IntPoly([1, 0, 0, 0, 1]), 2) == 0
    assert vp_poly(IntPoly(), 5) == INFINITY
    with pytest.raises(ValueError):
        vp_poly(IntPoly([4]), 4)


def test_gauss_lemma():
    rng = random.Random(1)
    for _ in range(200):
        g = IntPoly([rng.randint(-50, 50) for _ in range(rng.randint(1, 5))] + [rng.randint(1, 9)])
        h = IntPoly([rng.randint(-50, 50) for _ in range(rng.randint(1, 5))] + [rng.randint(1, 9)])
        for p in (2, 3, 5):
            assert vp_poly(g * h, p) == vp_poly(g, p) + vp_poly(h, p)


def test_resultant():
    assert resultant(IntPoly([-1, 0, 1]), IntPoly([-2, 1])) == 3
    for a, b in ((0, 0), (3, -7), (-5, 11), (12, 12)):
        assert resultant(IntPoly([-a, 1]), IntPoly([-b, 1])) == a - b
    with pytest.raises(ValueError):
        resultant(IntPoly(), IntPoly([1, 1]))


def test_resultant_against_sympy():
    rng = random.Random(2)
    for _ in range(100):
        f = IntPoly([rng.randint(-20, 20) for _ in range(rng.randint(2, 5))] + [rng.randint(1, 5)])
        g = IntPoly([rng.randint(-20, 20) for _ in range(rng.randint(2, 5))] + [rng.randint(-5, -1)])
        assert resultant(f, g) == int(sympy.resultant(_sympy(f).as_expr(), _sympy(g).as_expr(), X))


def test_discriminant():
    assert discriminant(IntPoly([1, 1, 0, 0, 1])) == 229
    assert discriminant(IntPoly([2, 0, 0, 1, 1])) == 1940
    assert discriminant(IntPoly([2, 2, 0, 0, 1])) == 1616
    assert discriminant(IntPoly([-1, -4, 0, 1])) == 229
    with pytest.raises(ValueError):
        discriminant(IntPoly([1, 2]))
    with pytest.raises(ValueError):
        discriminant(IntPoly([1, 0, 2]))


def test_discriminant_closed_forms():
    rng = random.Random(3)
    for _ in range(200):
        a, b = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        assert discriminant(IntPoly([b, a, 0, 0, 1])) == 256 * b**3 - 27 * a**4
        c, d = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        assert discriminant(IntPoly([d, 0, 0, c, 1])) == d * d * (256 * d - 27 * c**4)


def test_discriminant_closed_forms_small_grid():
    for s in range(-50, 51):
        for t in range(-50, 51):
            assert discriminant(IntPoly([t, s, 0, 0, 1])) == 256 * t**3 - 27 * s**4
            assert discriminant(IntPoly([t, 0, 0, s, 1])) == t * t * (256 * t - 27 * s**4)


def test_discriminant_against_sympy():
    rng = random.Random(4)
    for _ in range(100):
        h = IntPoly([rng.randint(-30, 30) for _ in range(rng.choice((3, 4)))] + [1])
        assert discriminant(h) == int(sympy.discriminant(_sympy(h).as_expr(), X))


def test_eisenstein():
    assert is_eisenstein(IntPoly([2, 2, 0, 0, 1]), 2)
    assert not is_eisenstein(IntPoly([4, 2, 0, 0, 1]), 2)
    assert not is_eisenstein(IntPoly([1, 1, 0, 0, 1]), 3)


def test_rational_roots():
    assert rational_roots(IntPoly([-2, 0, 0, 1, 1])) == {1}
    assert rational_roots(IntPoly([-9, -12, 0, 1])) == {-3}
    assert rational_roots(IntPoly([1, 1, 0, 0, 1])) == set()
    assert rational_roots(IntPoly([-3, 5, 2])) == {Fraction(1, 2), -3}
    assert rational_roots(IntPoly([0, 0, -1, 1])) == {0, 1}
    assert rational_roots(RatPoly([Fraction(-1, 4), 0, 1])) == {Fraction(1, 2), Fraction(-1, 2)}


def test_rational_roots_brute_force():
    rng = random.Random(5)
    for _ in range(100):
        roots = [rng.randint(-6, 6) for _ in range(rng.randint(0, 2))]
        h = IntPoly([rng.randint(-9, 9), rng.randint(-9, 9), 1])
        for r in roots:
            h = h * IntPoly([-r, 1])
        if h.coeff(0) == 0:
            continue
        expected = {Fraction(int(r)) for r in sympy.Poly(list(reversed(h.coeffs)), X).ground_roots()
                    if r.is_rational}
        assert rational_roots(h) == expected


def test_primality():
    assert [n for n in range(60) if is_probable_prime(n)] == [int(p) for p in small_primes(59)]
    assert not is_probable_prime(561)
    assert not is_probable_prime(3215031751)
    assert is_probable_prime(2**89 - 1)
    assert not is_probable_prime((2**61 - 1) * (2**31 - 1))


def test_factor_int():
    assert factor_int(1) == Factorization(1, ())
    assert factor_int(-12) == Factorization(-1, ((2, 2), (3, 1)))
    assert str(factor_int(336)) == '2^4 * 3 * 7'
    with pytest.raises(ValueError):
        factor_int(0)


def test_factor_int_against_sympy():
    rng = random.Random(6)
    for _ in range(50):
        n = rng.randint(2, 10**18)
        assert dict(factor_int(n).factors) == {int(p): e for p, e in sympy.factorint(n).items()}
    # products of two primes above the trial-division bound go through Pollard rho
    for p, q in ((1000003, 1000033), (999999937, 1000000007), (2**31 - 1, 2**31 - 1)):
        assert factor_int(p * q).value() == p * q
        assert sorted(factor_int(p * q).primes) == sorted({p, q})


def test_factorization_algebra():
    assert factor_int(12) * factor_int(18) == factor_int(216)
    assert factor_int(6) ** 3 == factor_int(216)
    assert factor_int(12).divisors() == [1, 2, 3, 4, 6, 12]
    assert factor_int(-50).value() == -50


def test_squarefree():
    assert is_squarefree(229)
    assert is_squarefree(1) and is_squarefree(-1)
    assert not is_squarefree(175)
    assert odd_part_squarefree(336)
    assert not odd_part_squarefree(-539)
