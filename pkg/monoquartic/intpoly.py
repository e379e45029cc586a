"""
Exact univariate polynomials over Z and Q and the integer arithmetic the rest of the package leans on.

Polynomials are immutable and store coefficients lowest degree first, so ``IntPoly([b, a, 0, 0, 1])`` is
x^4 + a*x + b. The zero polynomial has no coefficients and degree -1.

Integer factorization is trial division (batched through gcds against prime products), strong-probable-prime
rounds from gmpy2 and Pollard rho with Brent's cycle detection. Every random choice comes from a seeded
``random.Random`` so a factorization is reproducible.
"""
import functools
import math
import numbers
import random
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger

import gmpy2
import numpy as np

from .util import load_defaults

INFINITY = math.inf

# Bases 2..41 decide primality for every n below this bound.
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


@functools.lru_cache(maxsize=8)
def small_primes(limit):
    """All primes <= limit as an int64 numpy array"""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


class _DensePoly:
    __slots__ = ('_coeffs',)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, _DensePoly):
            coeffs = coeffs.coeffs
        c = [self._coerce(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._coeffs = tuple(c)

    @staticmethod
    def _coerce(x):
        raise NotImplementedError

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        return len(self._coeffs) - 1

    @property
    def lc(self):
        return self._coeffs[-1] if self._coeffs else 0

    def is_zero(self):
        return not self._coeffs

    def is_monic(self):
        return self.lc == 1

    def coeff(self, i):
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else 0

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def x(cls):
        return cls([0, 1])

    def _result_type(self, other):
        if isinstance(other, _DensePoly):
            return RatPoly if RatPoly in (type(self), type(other)) else IntPoly
        if isinstance(other, Fraction) and other.denominator != 1:
            return RatPoly
        return type(self)

    def _as_coeffs(self, other):
        if isinstance(other, _DensePoly):
            return other.coeffs
        if isinstance(other, numbers.Rational):
            return (other,)
        return None

    def __add__(self, other):
        oc = self._as_coeffs(other)
        if oc is None:
            return NotImplemented
        a, b = self._coeffs, oc
        n = max(len(a), len(b))
        return self._result_type(other)([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                         for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-x for x in self._coeffs])

    def __sub__(self, other):
        oc = self._as_coeffs(other)
        if oc is None:
            return NotImplemented
        return self + (-self._result_type(other)(oc))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        oc = self._as_coeffs(other)
        if oc is None:
            return NotImplemented
        a, b = self._coeffs, oc
        if not a or not b:
            return self._result_type(other)()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self._result_type(other)(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral) or n < 0:
            raise ValueError(f'Polynomial powers must be non-negative integers, got {n}')
        result, base = type(self)([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, _DensePoly):
            return self._coeffs == other._coeffs
        if isinstance(other, numbers.Rational):
            return self._coeffs == ((other,) if other != 0 else ())
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def __iter__(self):
        return iter(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def derivative(self):
        return type(self)([i * c for i, c in enumerate(self._coeffs)][1:])

    def compose(self, g):
        """self(g(x))"""
        acc = type(g)() if isinstance(g, _DensePoly) else 0
        for c in reversed(self._coeffs):
            acc = acc * g + c
        return acc

    def __divmod__(self, other):
        """Euclidean division. Over Z the divisor's leading coefficient must divide every step exactly."""
        if not isinstance(other, _DensePoly):
            other = type(self)([other])
        if other.is_zero():
            raise ValueError('Division by the zero polynomial')
        cls = self._result_type(other)
        rem = list(self._coeffs)
        dq = other.degree
        lc = other.lc
        q = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            top = rem[k + dq]
            if top == 0:
                continue
            if cls is IntPoly:
                if top % lc:
                    raise ValueError(f'{self} is not divisible over Z by {other}; use pseudo_remainder')
                t = top // lc
            else:
                t = Fraction(top) / lc
            q[k] = t
            for j, c in enumerate(other.coeffs):
                rem[k + j] -= t * c
        return cls(q), cls(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def to_str(self, var='x'):
        if not self._coeffs:
            return '0'
        terms = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            mag = -c if c < 0 else c
            if isinstance(mag, Fraction) and mag.denominator != 1:
                cs = f'{mag.numerator}/{mag.denominator}'
            else:
                cs = str(int(mag))
            if i == 0:
                body = cs
            else:
                mono = var if i == 1 else f'{var}^{i}'
                body = mono if cs == '1' else f'{cs}*{mono}'
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ('-' if first_sign == '-' else '') + first
        for sign, body in terms[1:]:
            out += f' {sign} {body}'
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f'{type(self).__name__}({list(self._coeffs)!r})'


class IntPoly(_DensePoly):
    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f'IntPoly coefficients must be integers, got {x}')
            return x.numerator
        if isinstance(x, (numbers.Integral, gmpy2.mpz)):
            return int(x)
        raise TypeError(f'IntPoly coefficients must be integers, got {x!r}')

    @classmethod
    def parse(cls, text):
        return _PolyParser(text).parse()

    def content(self):
        return functools.reduce(math.gcd, self._coeffs, 0)

    def primitive_part(self):
        c = self.content()
        if c == 0:
            return self
        if self.lc < 0:
            c = -c
        return IntPoly([x // c for x in self._coeffs])

    def exact_div(self, n):
        """Divide every coefficient by the integer n, which must divide each exactly"""
        if n == 0:
            raise ValueError('Division by zero')
        if any(x % n for x in self._coeffs):
            raise ValueError(f'{n} does not divide every coefficient of {self}')
        return IntPoly([x // n for x in self._coeffs])

    def pseudo_remainder(self, other):
        """lc(other)^(deg self - deg other + 1) * self mod other, computed without leaving Z"""
        if other.is_zero():
            raise ValueError('Division by the zero polynomial')
        if self.degree < other.degree:
            return self
        rem = list(self._coeffs)
        db, lc = other.degree, other.lc
        for _ in range(self.degree - db + 1):
            if len(rem) - 1 < db:
                rem = [x * lc for x in rem]
                continue
            top = rem[-1]
            rem = [x * lc for x in rem]
            shift = len(rem) - 1 - db
            for j, c in enumerate(other.coeffs):
                rem[shift + j] -= top * c
            rem.pop()
        return IntPoly(rem)


class RatPoly(_DensePoly):
    __slots__ = ()

    @staticmethod
    def _coerce(x):
        return Fraction(x)

    def clear_denominators(self):
        """The primitive IntPoly with the same roots"""
        den = functools.reduce(math.lcm, (c.denominator for c in self._coeffs), 1)
        return IntPoly([c * den for c in self._coeffs]).primitive_part()


def _require_nonzero(*polys):
    for f in polys:
        if f.is_zero():
            raise ValueError('Zero polynomial not allowed here')


def resultant(f, g):
    """
    Resultant of two nonzero integer polynomials by the subresultant PRS.

    The convention is res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f, i.e. the Sylvester
    determinant, so res(x^2 - 1, x - 2) = 3.
    """
    f, g = IntPoly(f), IntPoly(g)
    _require_nonzero(f, g)
    if g.degree == 0:
        return g.lc ** f.degree
    if f.degree == 0:
        return f.lc ** g.degree

    a, b = f.content(), g.content()
    A, B = f.exact_div(a), g.exact_div(b)
    s = 1
    t = a ** B.degree * b ** A.degree
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    gg = h = 1
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = A.pseudo_remainder(B)
        A = B
        if R.is_zero():
            return 0
        B = R.exact_div(gg * h ** delta)
        gg = A.lc
        h = gg ** delta // h ** (delta - 1) if delta else h
        if B.degree <= 0:
            break
    h = B.lc ** A.degree // h ** (A.degree - 1)
    return s * t * h


def discriminant(h):
    """disc(h) = (-1)^(n(n-1)/2) res(h, h') / lc(h) for monic h of degree >= 2"""
    h = IntPoly(h)
    if h.degree < 2 or not h.is_monic():
        raise ValueError(f'discriminant needs a monic polynomial of degree >= 2, got {h}')
    n = h.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(h, h.derivative())


def vp_int(n, p):
    """p-adic valuation of the integer n, INFINITY for 0"""
    n = int(n)
    if n == 0:
        return INFINITY
    _, k = gmpy2.remove(abs(n), int(p))
    return int(k)


def _require_prime(p):
    if not is_probable_prime(p):
        raise ValueError(f'{p} is not prime')


def vp_poly(g, p):
    """Minimum p-adic valuation over the coefficients of g, INFINITY for the zero polynomial"""
    _require_prime(p)
    g = IntPoly(g)
    if g.is_zero():
        return INFINITY
    return min(vp_int(c, p) for c in g.coeffs if c)


def is_eisenstein(h, p):
    h = IntPoly(h)
    if h.degree < 1:
        return False
    p = int(p)
    if h.lc % p == 0 or any(c % p for c in h.coeffs[:-1]):
        return False
    return h.coeff(0) % (p * p) != 0


def _evaluates_to_zero(coeffs, u, w):
    """sum c_i u^i w^(n-i) == 0, i.e. coeffs vanish at u/w without leaving Z"""
    n = len(coeffs) - 1
    return sum(c * u ** i * w ** (n - i) for i, c in enumerate(coeffs)) == 0


def rational_roots(h):
    """Every rational root of h, by divisor enumeration of the constant and leading coefficients"""
    if isinstance(h, RatPoly):
        h = h.clear_denominators()
    h = IntPoly(h)
    _require_nonzero(h)
    roots = set()
    coeffs = list(h.coeffs)
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        coeffs = coeffs[k:]
    if len(coeffs) == 1:
        return roots
    nums = factor_int(coeffs[0]).divisors()
    dens = factor_int(coeffs[-1]).divisors()
    for u in nums:
        for w in dens:
            if math.gcd(u, w) != 1:
                continue
            for s in (1, -1):
                if _evaluates_to_zero(coeffs, s * u, w):
                    roots.add(Fraction(s * u, w))
    return roots


def is_rational_square(r):
    r = Fraction(r)
    return r >= 0 and gmpy2.is_square(r.numerator) and gmpy2.is_square(r.denominator)


@dataclass(frozen=True)
class Factorization:
    """sign * prod p^e with primes strictly increasing"""
    sign: int
    factors: tuple

    @property
    def primes(self):
        return tuple(p for p, _ in self.factors)

    def exponent(self, p):
        return dict(self.factors).get(p, 0)

    def value(self):
        v = self.sign
        for p, e in self.factors:
            v *= p ** e
        return v

    def is_squarefree(self):
        return all(e == 1 for _, e in self.factors)

    def odd_part_squarefree(self):
        return all(e == 1 for p, e in self.factors if p != 2)

    def divisors(self):
        divs = [1]
        for p, e in self.factors:
            divs = [d * p ** k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def __mul__(self, other):
        c = Counter(dict(self.factors))
        c.update(dict(other.factors))
        return Factorization(self.sign * other.sign, tuple(sorted(c.items())))

    def __pow__(self, k):
        if k < 0:
            raise ValueError('Negative powers of a factorization are not integers')
        return Factorization(self.sign ** k, tuple((p, e * k) for p, e in self.factors if k))

    def __str__(self):
        body = ' * '.join(str(p) if e == 1 else f'{p}^{e}' for p, e in self.factors) or '1'
        return f'-{body}' if self.sign < 0 else body


@functools.lru_cache(maxsize=4)
def _trial_blocks(bound, block):
    primes = [int(p) for p in small_primes(bound)]
    return tuple((tuple(primes[i:i + block]), math.prod(primes[i:i + block]))
                 for i in range(0, len(primes), block))


@functools.lru_cache(maxsize=65536)
def is_probable_prime(n, rounds=None, seed=None):
    """
    Miller-Rabin with a fixed witness set plus seeded random rounds (gmpy2 does each round).

    The fixed witnesses decide primality outright below 3.3e24; above that each random round divides the
    error bound by four.
    """
    n = int(n)
    cfg = load_defaults()['factorization']
    if n < 2:
        return False
    witnesses = cfg['mr_fixed_witnesses']
    for p in witnesses:
        if n == p:
            return True
        if n % p == 0:
            return False
    for a in witnesses:
        if not gmpy2.is_strong_prp(n, a):
            return False
    if n < _MR_DETERMINISTIC_LIMIT:
        return True
    rounds = cfg['mr_random_rounds'] if rounds is None else rounds
    rng = random.Random((load_defaults()['seed'] if seed is None else seed) ^ n)
    for _ in range(rounds):
        if not gmpy2.is_strong_prp(n, rng.randrange(2, n - 1)):
            return False
    return True


def pollard_brent(n, rng, max_iterations=None):
    """A nontrivial factor of the odd composite n (Pollard rho, Brent's cycle detection)"""
    if n % 2 == 0:
        return 2
    max_iterations = max_iterations or load_defaults()['factorization']['rho_max_iterations']
    n = gmpy2.mpz(n)
    m = 128
    for attempt in range(64):
        y, c = gmpy2.mpz(rng.randrange(1, int(n))), gmpy2.mpz(rng.randrange(1, int(n)))
        g = q = gmpy2.mpz(1)
        r = 1
        x = ys = y
        steps = 0
        while g == 1 and steps < max_iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gmpy2.gcd(q, n)
                k += m
            steps += r
            r *= 2
        if g == n:
            g = gmpy2.mpz(1)
            while g == 1:
                ys = (ys * ys + c) % n
                g = gmpy2.gcd(abs(x - ys), n)
        if 1 < g < n:
            return int(g)
        getLogger(__name__).warning(f'Pollard rho attempt {attempt} failed on {n}, retrying with a new polynomial')
    raise RuntimeError(f'Pollard rho could not split {n}')


def factor_int(n, seed=None):
    """Complete factorization of a nonzero integer with every prime certified by is_probable_prime"""
    n = int(n)
    if n == 0:
        raise ValueError('Cannot factor 0')
    cfg = load_defaults()['factorization']
    sign, m = (-1 if n < 0 else 1), abs(n)
    found = Counter()

    for block, prod in _trial_blocks(cfg['trial_division_bound'], cfg['trial_block_primes']):
        if block[0] * block[0] > m:
            break
        g = math.gcd(m, prod)
        if g == 1:
            continue
        for p in block:
            if g % p == 0:
                while m % p == 0:
                    m //= p
                    found[p] += 1

    if m > 1:
        rng = random.Random(load_defaults()['seed'] if seed is None else seed)
        stack = [m]
        while stack:
            x = stack.pop()
            if is_probable_prime(x):
                found[x] += 1
                continue
            r = math.isqrt(x)
            if r * r == x:
                stack.extend((r, r))
                continue
            d = pollard_brent(x, rng)
            getLogger(__name__).debug(f'Pollard rho split {x} = {d} * {x // d}')
            stack.extend((d, x // d))

    return Factorization(sign, tuple(sorted(found.items())))


def is_squarefree(n):
    """Square-freeness of |n|; 1 and -1 are square-free"""
    return factor_int(n).is_squarefree()


def odd_part_squarefree(n):
    """True iff no odd prime square divides n"""
    return factor_int(n).odd_part_squarefree()


class _PolyParser:
    """
    Recursive descent over

        expr  := ['+'|'-'] term (('+'|'-') term)*
        term  := power (['*'] power)*
        power := atom ['^' INT]
        atom  := INT | VAR | '(' expr ')'
    """
    _token = re.compile(r'\s*(?:(\d+)|([A-Za-z])|(\S))')

    def __init__(self, text):
        text = text.replace('−', '-').replace('**', '^')
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = self._token.match(text, pos)
            if not m:
                break
            pos = m.end()
            num, var, op = m.groups()
            if num is not None:
                self.tokens.append(('int', int(num)))
            elif var is not None:
                self.tokens.append(('var', var))
            else:
                if op not in '+-*^()':
                    raise ValueError(f'Unexpected character {op!r} in polynomial {text!r}')
                self.tokens.append(('op', op))
        self.i = 0
        self.var = None
        self.text = text

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def _take(self, kind=None, value=None):
        tok = self._peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f'Malformed polynomial {self.text!r} near token {self.i}')
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ValueError('Empty polynomial')
        result = self._expr()
        if self.i != len(self.tokens):
            raise ValueError(f'Trailing input in polynomial {self.text!r}')
        return result

    def _expr(self):
        sign = 1
        if self._peek() in (('op', '+'), ('op', '-')):
            sign = -1 if self._take()[1] == '-' else 1
        acc = self._term() * sign
        while self._peek() in (('op', '+'), ('op', '-')):
            op = self._take()[1]
            t = self._term()
            acc = acc + t if op == '+' else acc - t
        return acc

    def _term(self):
        acc = self._power()
        while True:
            kind, val = self._peek()
            if (kind, val) == ('op', '*'):
                self._take()
                acc = acc * self._power()
            elif kind in ('int', 'var') or (kind, val) == ('op', '('):
                acc = acc * self._power()
            else:
                return acc

    def _power(self):
        base = self._atom()
        if self._peek() == ('op', '^'):
            self._take()
            _, e = self._take('int')
            return base ** e
        return base

    def _atom(self):
        kind, val = self._peek()
        if kind == 'int':
            self._take()
            return IntPoly([val])
        if kind == 'var':
            self._take()
            if self.var is None:
                self.var = val
            elif self.var != val:
                raise ValueError(f'Only univariate polynomials are supported, saw {self.var} and {val}')
            return IntPoly.x()
        if (kind, val) == ('op', '('):
            self._take()
            inner = self._expr()
            self._take('op', ')')
            return inner
        raise ValueError(f'Malformed polynomial {self.text!r} near token {self.i}')
