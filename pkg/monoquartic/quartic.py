"""
Quartic algebra: resolvent cubics, depressed quartics, irreducibility and Galois groups.

A monic quartic x^4 + a3 x^3 + a2 x^2 + a1 x + a0 is classified by whether its discriminant is a square and
whether its resolvent cubic

    R_h(y) = y^3 - a2 y^2 + (a3 a1 - 4 a0) y - a3^2 a0 - a1^2 + 4 a2 a0

has a rational root:

    disc square?   resolvent irreducible?   group
    no             yes                      S4
    yes            yes                      A4
    no             no                       D8 or Z/4Z
    yes            no                       V4
"""
import enum
from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger

import gmpy2

from .intpoly import IntPoly, RatPoly, discriminant, factor_int, is_eisenstein, is_rational_square, rational_roots


@dataclass(frozen=True)
class QuarticShape:
    a3: int
    a2: int
    a1: int
    a0: int

    @classmethod
    def from_poly(cls, h):
        h = IntPoly(h)
        if h.degree != 4 or not h.is_monic():
            raise ValueError(f'Expected a monic quartic, got {h}')
        return cls(h.coeff(3), h.coeff(2), h.coeff(1), h.coeff(0))

    @classmethod
    def f_family(cls, a, b):
        """x^4 + a x + b"""
        return cls(0, 0, int(a), int(b))

    @classmethod
    def g_family(cls, c, d):
        """x^4 + c x^3 + d"""
        return cls(int(c), 0, 0, int(d))

    @property
    def poly(self):
        return IntPoly([self.a0, self.a1, self.a2, self.a3, 1])

    def __str__(self):
        return str(self.poly)


def _shape(h):
    return h if isinstance(h, QuarticShape) else QuarticShape.from_poly(h)


def resolvent_cubic(h):
    h = _shape(h)
    a3, a2, a1, a0 = h.a3, h.a2, h.a1, h.a0
    return IntPoly([-a3 * a3 * a0 - a1 * a1 + 4 * a2 * a0, a3 * a1 - 4 * a0, -a2, 1])


def depress(h):
    """h(X - a3/4), a quartic in X with no cubic term"""
    h = _shape(h)
    return RatPoly(h.poly).compose(RatPoly([Fraction(-h.a3, 4), 1]))


def _depressed_coeffs(h_dep):
    h_dep = RatPoly(h_dep)
    if h_dep.degree != 4 or not h_dep.is_monic() or h_dep.coeff(3) != 0:
        raise ValueError(f'Expected a depressed monic quartic, got {h_dep}')
    return h_dep.coeff(2), h_dep.coeff(1), h_dep.coeff(0)


def resolvent_cubic_depressed(h_dep):
    """z^3 + 2 b2 z^2 + (b2^2 - 4 b0) z - b1^2"""
    b2, b1, b0 = _depressed_coeffs(h_dep)
    return RatPoly([-b1 * b1, b2 * b2 - 4 * b0, 2 * b2, 1])


def check_resolvent_shift(h):
    """R_h(z - a3^2/4 + a2) == R_{h,dep}(z) as polynomials"""
    h = _shape(h)
    shift = RatPoly([Fraction(-h.a3 * h.a3, 4) + h.a2, 1])
    return RatPoly(resolvent_cubic(h)).compose(shift) == resolvent_cubic_depressed(depress(h))


def splits_into_quadratics(h):
    """
    Whether h is a product of two rational quadratics, for h with no rational root.

    After depression this holds iff R_{h,dep} has a nonzero root that is a square in Q, or b1 = 0 and
    b2^2 - 4 b0 is a square in Q (0 included).
    """
    dep = depress(h)
    b2, b1, b0 = _depressed_coeffs(dep)
    roots = rational_roots(resolvent_cubic_depressed(dep))
    if any(r != 0 and is_rational_square(r) for r in roots):
        return True
    return b1 == 0 and is_rational_square(b2 * b2 - 4 * b0)


def _eisenstein_prime(h):
    lower = abs(gmpy2.gcd(gmpy2.gcd(h.a3, h.a2), gmpy2.gcd(h.a1, h.a0)))
    if lower < 2:
        return None
    for p in factor_int(int(lower)).primes:
        if is_eisenstein(h.poly, p):
            return p
    return None


def irreducibility(h):
    """
    (irreducible, path): path names the test that decided, one of 'eisenstein@p', 'rational-root' or
    'quadratic-split'.
    """
    h = _shape(h)
    p = _eisenstein_prime(h)
    if p is not None:
        return True, f'eisenstein@{p}'
    if rational_roots(h.poly):
        return False, 'rational-root'
    return not splits_into_quadratics(h), 'quadratic-split'


def is_irreducible_quartic(h):
    return irreducibility(h)[0]


class GaloisGroup(enum.Enum):
    S4 = 'S4'
    A4 = 'A4'
    D8_OR_C4 = 'D8 or Z/4Z'
    V4 = 'V4'
    NOT_IRREDUCIBLE = 'not irreducible'


_TABLE = {(False, True): GaloisGroup.S4,
          (True, True): GaloisGroup.A4,
          (False, False): GaloisGroup.D8_OR_C4,
          (True, False): GaloisGroup.V4}


@dataclass(frozen=True)
class GaloisReport:
    irreducible: bool
    disc: int
    disc_is_square: bool
    resolvent: IntPoly
    resolvent_irreducible: bool
    group: GaloisGroup
    irreducibility_path: str

    def to_dict(self):
        return {'irreducible': self.irreducible, 'disc': str(self.disc), 'disc_is_square': self.disc_is_square,
                'resolvent': self.resolvent.to_str('y'), 'resolvent_irreducible': self.resolvent_irreducible,
                'group': self.group.name, 'irreducibility_path': self.irreducibility_path}

    @classmethod
    def from_dict(cls, d):
        return cls(d['irreducible'], int(d['disc']), d['disc_is_square'], IntPoly.parse(d['resolvent']),
                   d['resolvent_irreducible'], GaloisGroup[d['group']], d['irreducibility_path'])


def galois_group(h):
    h = _shape(h)
    irreducible, path = irreducibility(h)
    disc = discriminant(h.poly)
    square = disc >= 0 and bool(gmpy2.is_square(disc))
    R = resolvent_cubic(h)
    r_irred = not rational_roots(R)
    group = _TABLE[(square, r_irred)] if irreducible else GaloisGroup.NOT_IRREDUCIBLE
    getLogger(__name__).debug(f'{h}: disc={disc} square={square}, resolvent {R.to_str("y")} '
                              f'irreducible={r_irred} -> {group.value}')
    return GaloisReport(irreducible, disc, square, R, r_irred, group, path)
