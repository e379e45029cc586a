"""
Polynomials over F_p and over residue fields F_p[x]/(phi).

``factor_modp`` is square-free decomposition, distinct-degree factorization and Cantor-Zassenhaus equal-degree
splitting. The splitting is randomized from a seeded ``random.Random``; the factor list is sorted by
(degree, coefficients) so the output never depends on the random choices.
"""
import random
from collections import Counter
from logging import getLogger

from .intpoly import IntPoly, _require_prime
from .util import load_defaults


class ModPoly:
    __slots__ = ('p', '_coeffs')

    def __init__(self, p, coeffs=()):
        p = int(p)
        if p < 2:
            raise ValueError(f'Modulus must be >= 2, got {p}')
        c = [int(x) % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.p = p
        self._coeffs = tuple(c)

    @classmethod
    def x(cls, p):
        return cls(p, [0, 1])

    @classmethod
    def constant(cls, p, c):
        return cls(p, [c])

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

    def is_one(self):
        return self._coeffs == (1,)

    def is_monic(self):
        return self.lc == 1

    def coeff(self, i):
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else 0

    def _lift_other(self, other):
        if isinstance(other, ModPoly):
            if other.p != self.p:
                raise ValueError(f'Cannot combine polynomials mod {self.p} and mod {other.p}')
            return other
        if isinstance(other, int):
            return ModPoly(self.p, [other])
        return None

    def __add__(self, other):
        other = self._lift_other(other)
        if other is None:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        n = max(len(a), len(b))
        return ModPoly(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ModPoly(self.p, [-x for x in self._coeffs])

    def __sub__(self, other):
        other = self._lift_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift_other(other)
        if other is None:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return ModPoly(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ModPoly(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError('Negative powers are not polynomials')
        result, base = ModPoly(self.p, [1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift_other(other)
        if other.is_zero():
            raise ValueError('Division by the zero polynomial')
        p = self.p
        inv = pow(other.lc, -1, p)
        rem = list(self._coeffs)
        dq = other.degree
        q = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            t = rem[k + dq] * inv % p
            if not t:
                continue
            q[k] = t
            for j, c in enumerate(other._coeffs):
                rem[k + j] = (rem[k + j] - t * c) % p
        return ModPoly(p, q), ModPoly(p, rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            return self
        inv = pow(self.lc, -1, self.p)
        return ModPoly(self.p, [x * inv for x in self._coeffs])

    def gcd(self, other):
        """Monic gcd; gcd(0, 0) is 0"""
        a, b = self, self._lift_other(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """(g, s, t) with s*self + t*other = g and g monic"""
        other = self._lift_other(other)
        one, zero = ModPoly(self.p, [1]), ModPoly(self.p)
        r0, r1, s0, s1, t0, t1 = self, other, one, zero, zero, one
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = pow(r0.lc, -1, self.p)
        return r0 * inv, s0 * inv, t0 * inv

    def powmod(self, e, m):
        """self^e mod m by square-and-multiply"""
        result, base = ModPoly(self.p, [1]) % m, self % m
        while e:
            if e & 1:
                result = result * base % m
            base = base * base % m
            e >>= 1
        return result

    def derivative(self):
        return ModPoly(self.p, [i * c for i, c in enumerate(self._coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self._coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __eq__(self, other):
        if isinstance(other, ModPoly):
            return self.p == other.p and self._coeffs == other._coeffs
        if isinstance(other, int):
            return self._coeffs == ((other % self.p,) if other % self.p else ())
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self._coeffs))

    def sort_key(self):
        return self.degree, self._coeffs[::-1]

    def to_str(self, var='x'):
        return IntPoly(self._coeffs).to_str(var)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f'ModPoly({self.p}, {list(self._coeffs)!r})'


def reduce(f, p):
    """Coefficientwise reduction of an integer polynomial mod p"""
    _require_prime(p)
    return ModPoly(p, IntPoly(f).coeffs)


def lift(phibar):
    """Canonical lift with coefficients in [0, p)"""
    if not phibar.is_monic():
        raise ValueError(f'Only monic polynomials are lifted, got {phibar}')
    return IntPoly(phibar.coeffs)


def _pth_root(f):
    p = f.p
    return ModPoly(p, f.coeffs[::p])


def squarefree_decomposition(f):
    """[(square-free monic g, multiplicity)] with f = lc * prod g^m"""
    f = f.monic()
    out = []
    i = 1
    c = f.gcd(f.derivative())
    w = f // c
    while w.degree > 0:
        y = w.gcd(c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((g, m * f.p) for g, m in squarefree_decomposition(_pth_root(c)))
    return out


def distinct_degree_factorization(f):
    """For square-free monic f: [(product of all degree-d irreducible factors, d)]"""
    p = f.p
    x = ModPoly.x(p)
    out = []
    rest = f
    h = x
    d = 1
    while rest.degree >= 2 * d:
        h = h.powmod(p, rest)
        g = rest.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
        d += 1
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _random_poly(p, n, rng):
    return ModPoly(p, [rng.randrange(p) for _ in range(n)])


def equal_degree_factorization(f, d, rng):
    """Split a monic f whose irreducible factors all have degree d"""
    n = f.degree
    if n == d:
        return [f]
    p = f.p
    while True:
        a = _random_poly(p, n, rng)
        if a.degree < 1:
            continue
        g = a.gcd(f)
        if 0 < g.degree < n:
            break
        if p == 2:
            t = s = a % f
            for _ in range(d - 1):
                t = t * t % f
                s = s + t
            b = s
        else:
            b = a.powmod((p ** d - 1) // 2, f) - 1
        g = b.gcd(f)
        if 0 < g.degree < n:
            break
    return equal_degree_factorization(g, d, rng) + equal_degree_factorization(f // g, d, rng)


def factor_modp(f, seed=None):
    """
    Complete factorization of a nonzero polynomial over F_p.

    Returns [(monic irreducible, multiplicity)] sorted by degree then coefficients; the leading coefficient
    is dropped. A nonzero constant has the empty factorization.
    """
    if f.is_zero():
        raise ValueError('Cannot factor the zero polynomial')
    rng = random.Random(load_defaults()['seed'] if seed is None else seed)
    found = Counter()
    for sqf, m in squarefree_decomposition(f):
        for block, d in distinct_degree_factorization(sqf):
            for g in equal_degree_factorization(block, d, rng):
                found[g] += m
    out = sorted(found.items(), key=lambda gm: gm[0].sort_key())
    getLogger(__name__).debug(f'{f} mod {f.p} = ' + ' * '.join(f'({g})^{m}' for g, m in out))
    return out


def is_separable(f):
    """gcd(f, f') = 1 over F_p"""
    if f.is_zero():
        raise ValueError('The zero polynomial has no separability')
    return f.gcd(f.derivative()).degree == 0


def is_irreducible(f):
    if f.degree < 1:
        return False
    factors = factor_modp(f)
    return len(factors) == 1 and factors[0][1] == 1


class ResidueField:
    """F_p[x]/(phi) for a monic irreducible phi over F_p"""

    def __init__(self, phi):
        if phi.degree < 1 or not phi.is_monic():
            raise ValueError(f'Residue field modulus must be monic of degree >= 1, got {phi}')
        if not is_irreducible(phi):
            raise ValueError(f'{phi} is reducible mod {phi.p}')
        self.phi = phi
        self.p = phi.p

    @property
    def degree(self):
        return self.phi.degree

    @property
    def order(self):
        return self.p ** self.degree

    def __call__(self, value):
        if isinstance(value, ResidueElem):
            return value
        if isinstance(value, int):
            value = ModPoly(self.p, [value])
        elif isinstance(value, IntPoly):
            value = ModPoly(self.p, value.coeffs)
        return ResidueElem(self, value)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __eq__(self, other):
        return isinstance(other, ResidueField) and self.phi == other.phi

    def __hash__(self):
        return hash(self.phi)

    def __repr__(self):
        return f'ResidueField(F_{self.p}[x]/({self.phi}))'


class ResidueElem:
    __slots__ = ('field', 'value')

    def __init__(self, field, value):
        self.field = field
        self.value = value % field.phi

    def _other(self, other):
        if isinstance(other, ResidueElem):
            if other.field != self.field:
                raise ValueError('Residue elements from different fields')
            return other
        return self.field(other)

    def __add__(self, other):
        return ResidueElem(self.field, self.value + self._other(other).value)

    __radd__ = __add__

    def __sub__(self, other):
        return ResidueElem(self.field, self.value - self._other(other).value)

    def __neg__(self):
        return ResidueElem(self.field, -self.value)

    def __mul__(self, other):
        return ResidueElem(self.field, self.value * self._other(other).value)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError('Zero has no inverse in a residue field')
        g, s, _ = self.value.xgcd(self.field.phi)
        return ResidueElem(self.field, s)

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def is_zero(self):
        return self.value.is_zero()

    def __eq__(self, other):
        if isinstance(other, (ResidueElem, int)):
            return self.value == self._other(other).value
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        if self.value.degree <= 0:
            return str(self.value.coeff(0))
        return f'({self.value})'

    def __repr__(self):
        return f'ResidueElem({self.value!r} mod {self.field.phi})'


class ResidualPoly:
    """Polynomial in y over a ResidueField, coefficients lowest degree first"""

    def __init__(self, field, coeffs):
        c = [field(x) for x in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def derivative(self):
        return ResidualPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __mod__(self, other):
        if other.is_zero():
            raise ValueError('Division by the zero polynomial')
        rem = list(self.coeffs)
        d = other.degree
        inv = other.coeffs[-1].inverse()
        for k in range(len(rem) - 1 - d, -1, -1):
            t = rem[k + d] * inv
            if t.is_zero():
                continue
            for j, c in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - t * c
        return ResidualPoly(self.field, rem[:d])

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        inv = a.coeffs[-1].inverse()
        return ResidualPoly(self.field, [c * inv for c in a.coeffs])

    def is_separable(self):
        return self.gcd(self.derivative()).degree == 0

    def __eq__(self, other):
        return isinstance(other, ResidualPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def to_str(self, var='y'):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = '' if i == 0 else (var if i == 1 else f'{var}^{i}')
            cs = str(c)
            if not mono:
                terms.append(cs)
            elif cs == '1':
                terms.append(mono)
            else:
                terms.append(f'{cs}*{mono}')
        return ' + '.join(terms) or '0'

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f'ResidualPoly({self.to_str()} over {self.field!r})'


def residual_separable(R):
    if R.is_zero():
        raise ValueError('The zero residual polynomial has no separability')
    return R.is_separable()
