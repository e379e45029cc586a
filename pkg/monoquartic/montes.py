"""
One-step Montes machinery: phi-adic developments, phi-Newton polygons, residual polynomials, the index lower
bound they give and the Dedekind criterion as an independent check.

For a monic f and a prime p, each irreducible factor phibar of f mod p is lifted to phi, f is developed as
sum a_i(x) phi(x)^i, and the points (i, v_p(a_i)) are hulled. The lattice points under the negative-slope part
of the hull, times deg(phi), bound v_p of the index [O_K : Z[theta]] from below, with equality when every
residual polynomial is separable.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from logging import getLogger

from .intpoly import INFINITY, IntPoly, _require_prime, discriminant, vp_int
from .modpoly import ModPoly, ResidualPoly, ResidueField, factor_modp, lift, reduce, residual_separable
from .util import resolve_seed


@dataclass(frozen=True)
class PhiDevelopment:
    phi: IntPoly
    coeffs: tuple

    def reconstruct(self):
        acc = IntPoly()
        for a in reversed(self.coeffs):
            acc = acc * self.phi + a
        return acc

    def __len__(self):
        return len(self.coeffs)


def phi_development(f, phi):
    """f = sum a_i phi^i with deg a_i < deg phi, by repeated division by phi"""
    f, phi = IntPoly(f), IntPoly(phi)
    if phi.degree < 1 or not phi.is_monic():
        raise ValueError(f'phi must be monic of degree >= 1, got {phi}')
    if f.is_zero():
        raise ValueError('Cannot develop the zero polynomial')
    coeffs = []
    q = f
    while not q.is_zero():
        q, r = divmod(q, phi)
        coeffs.append(r)
    return PhiDevelopment(phi, tuple(coeffs))


@dataclass(frozen=True)
class Side:
    start: tuple
    end: tuple

    @property
    def length(self):
        return self.end[0] - self.start[0]

    @property
    def height(self):
        return self.start[1] - self.end[1]

    @property
    def degree(self):
        return math.gcd(self.length, self.height)

    @property
    def e(self):
        return self.length // self.degree

    @property
    def h(self):
        return self.height // self.degree

    @property
    def slope(self):
        return Fraction(-self.h, self.e)

    def ordinate(self, x):
        """Height of the side above x, as an exact rational"""
        return self.start[1] + self.slope * (x - self.start[0])


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points):
    """Monotone-chain lower convex envelope; collinear interior points are not vertices"""
    hull = []
    for pt in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


@dataclass(frozen=True)
class NewtonPolygon:
    p: int
    dev: PhiDevelopment
    points: tuple
    vertices: tuple
    sides: tuple
    residuals: tuple = None

    @property
    def principal_vertices(self):
        if not self.sides:
            return self.vertices[:1]
        return (self.sides[0].start,) + tuple(s.end for s in self.sides)

    @property
    def separable(self):
        """None when residual polynomials could not be formed"""
        if self.residuals is None:
            return None
        return all(residual_separable(R) for R in self.residuals)

    def height_at(self, x):
        for s in self.sides:
            if s.start[0] <= x <= s.end[0]:
                return s.ordinate(x)
        return None


def _residue_field(dev, p):
    phibar = reduce(dev.phi, p)
    try:
        return ResidueField(phibar)
    except ValueError:
        getLogger(__name__).warning(f'{dev.phi} is reducible mod {p}; residual polynomials are not defined')
        return None


def _residual_coefficient(a, v, on_side, p, F):
    if a.is_zero() or not on_side:
        return F.zero()
    return F(ModPoly(p, a.exact_div(p ** v).coeffs))


def newton_polygon(dev, p):
    """
    The phi-Newton polygon of a development at p.

    Points with a_i = 0 are left out. Residual coefficients are (a_i / p^v_p(a_i)) mod (p, phi) for points on
    a side and 0 for points strictly above it.
    """
    _require_prime(p)
    vals = [IntPoly(a).content() for a in dev.coeffs]
    points = tuple((i, vp_int(c, p)) for i, c in enumerate(vals) if c != 0)
    if not points:
        raise ValueError('Development has no nonzero coefficient')
    if points[0][0] != 0:
        getLogger(__name__).warning(f'phi = {dev.phi} divides the polynomial; the polygon starts at x={points[0][0]}')
    vertices = tuple(lower_hull(points))
    sides = []
    for a, b in zip(vertices, vertices[1:]):
        if b[1] >= a[1]:
            break
        sides.append(Side(a, b))
    sides = tuple(sides)

    F = _residue_field(dev, p)
    residuals = None
    if F is not None:
        vmap = dict(points)
        residuals = []
        for s in sides:
            coeffs = []
            for j in range(s.degree + 1):
                i = s.start[0] + j * s.e
                y = s.ordinate(i)
                on_side = vmap.get(i, INFINITY) == y
                coeffs.append(_residual_coefficient(dev.coeffs[i], int(y), on_side, p, F))
            residuals.append(ResidualPoly(F, coeffs))
        residuals = tuple(residuals)
    return NewtonPolygon(p, dev, points, vertices, sides, residuals)


def ind_phi(N):
    """Lattice points (x, y) with x >= 1, y >= 1 on or under the principal polygon"""
    count = 0
    for s in N.sides:
        for x in range(max(s.start[0], 1), s.end[0] + 1):
            if x == s.start[0] and s is not N.sides[0]:
                continue
            count += math.floor(s.ordinate(x))
    return count


@dataclass(frozen=True)
class SideRecord:
    start: tuple
    end: tuple
    h: int
    e: int
    d: int
    residual: str
    separable: object

    @classmethod
    def from_side(cls, side, residual):
        return cls(side.start, side.end, side.h, side.e, side.degree,
                   residual.to_str() if residual is not None else '',
                   residual_separable(residual) if residual is not None else None)

    def to_dict(self):
        return {'start': [str(x) for x in self.start], 'end': [str(x) for x in self.end],
                'slope': f'-{self.h}/{self.e}', 'e': str(self.e), 'd': str(self.d),
                'residual': self.residual, 'separable': self.separable}

    @classmethod
    def from_dict(cls, d):
        h, e = d['slope'][1:].split('/')
        return cls(tuple(int(x) for x in d['start']), tuple(int(x) for x in d['end']), int(h), int(e),
                   int(d['d']), d['residual'], d['separable'])


@dataclass(frozen=True)
class FactorIndex:
    phibar: ModPoly
    multiplicity: int
    ind: int
    separable: bool
    shortcut: bool
    sides: tuple = ()
    polygon: NewtonPolygon = field(default=None, compare=False, repr=False)

    @property
    def phi(self):
        return lift(self.phibar)

    def to_dict(self):
        return {'phi': str(self.phibar), 'multiplicity': str(self.multiplicity), 'ind': str(self.ind),
                'separable': self.separable, 'shortcut': self.shortcut,
                'sides': [s.to_dict() for s in self.sides]}

    @classmethod
    def from_dict(cls, d, p):
        return cls(ModPoly(p, IntPoly.parse(d['phi']).coeffs), int(d['multiplicity']), int(d['ind']),
                   d['separable'], d['shortcut'], tuple(SideRecord.from_dict(s) for s in d['sides']))


@dataclass(frozen=True)
class IndexReport:
    p: int
    factors: tuple
    seed: int

    @property
    def lower_bound(self):
        return sum(fi.ind for fi in self.factors)

    @property
    def exact(self):
        return all(fi.separable for fi in self.factors)

    def factor(self, phibar):
        for fi in self.factors:
            if fi.phibar == phibar:
                return fi
        raise KeyError(f'{phibar} is not a factor mod {self.p}')

    def to_dict(self):
        return {'p': str(self.p), 'exact': self.exact, 'lower_bound': str(self.lower_bound), 'seed': str(self.seed),
                'factors': [fi.to_dict() for fi in self.factors]}

    @classmethod
    def from_dict(cls, d):
        p = int(d['p'])
        return cls(p, tuple(FactorIndex.from_dict(x, p) for x in d['factors']), int(d['seed']))


def index_report(f, p, shortcut=True, seed=None):
    """
    Index lower bound at p from the phi-Newton polygons of every irreducible factor of f mod p.

    Simple factors contribute 0 with a separable (linear) residual polynomial; with shortcut=True their polygons
    are not built.
    """
    f = IntPoly(f)
    if not f.is_monic():
        raise ValueError(f'index_report needs a monic polynomial, got {f}')
    _require_prime(p)
    seed = resolve_seed(seed)
    log = getLogger(__name__)
    entries = []
    for phibar, m in factor_modp(reduce(f, p), seed=seed):
        if m == 1 and shortcut:
            entries.append(FactorIndex(phibar, m, 0, True, True))
            continue
        phi = lift(phibar)
        N = newton_polygon(phi_development(f, phi), p)
        count = ind_phi(N)
        residuals = N.residuals or (None,) * len(N.sides)
        sides = tuple(SideRecord.from_side(s, R) for s, R in zip(N.sides, residuals))
        sep = bool(N.separable)
        log.debug(f'p={p} phi={phi}: vertices {N.principal_vertices}, ind={phi.degree * count}, separable={sep}')
        entries.append(FactorIndex(phibar, m, phi.degree * count, sep, False, sides, N))
    return IndexReport(int(p), tuple(entries), seed)


def vp_field_disc(f, p, report, disc=None):
    """v_p(disc K) = v_p(disc f) - 2 v_p(index), or None when the report is not exact"""
    if not report.exact:
        return None
    disc = discriminant(f) if disc is None else disc
    return vp_int(disc, p) - 2 * report.lower_bound


def dedekind_test(f, p, seed=None):
    """True iff p does not divide [O_K : Z[theta]] for a root theta of the monic f"""
    f = IntPoly(f)
    if not f.is_monic():
        raise ValueError(f'dedekind_test needs a monic polynomial, got {f}')
    _require_prime(p)
    fbar = reduce(f, p)
    factors = factor_modp(fbar, seed=seed)
    gbar = ModPoly(p, [1])
    g, h = IntPoly([1]), IntPoly([1])
    for phibar, m in factors:
        gbar = gbar * phibar
        phi = lift(phibar)
        g = g * phi
        h = h * phi ** (m - 1)
    hbar = reduce(h, p)
    M = reduce((g * h - f).exact_div(p), p)
    return M.gcd(gbar).gcd(hbar).degree == 0


def render_polygon(N, var='x'):
    """
    ASCII picture of a phi-Newton polygon: rows are valuations, columns are indices. '@' marks principal
    vertices, 'o' other attached points, '+' the lattice points counted by ind_phi. A summary follows with the
    vertices, each side's slope, e, d and residual polynomial, and the phi-index deg(phi) * ind_phi(N).
    """
    pts = dict(N.points)
    pverts = set(N.principal_vertices)
    max_x = max(x for x, _ in N.points)
    max_y = max(y for _, y in N.points)
    counted = set()
    if N.sides:
        for x in range(max(N.sides[0].start[0], 1), N.sides[-1].end[0] + 1):
            counted.update((x, y) for y in range(1, math.floor(N.height_at(x)) + 1))
    width = len(str(max_y))
    lines = []
    for y in range(max_y, -1, -1):
        row = []
        for x in range(max_x + 1):
            if (x, y) in pverts:
                row.append('@')
            elif pts.get(x) == y:
                row.append('o')
            elif (x, y) in counted:
                row.append('+')
            else:
                row.append('.')
        lines.append(f'{y:>{width}} | ' + ' '.join(row))
    lines.append(' ' * width + ' +-' + '--' * (max_x + 1))
    lines.append(' ' * width + '   ' + ' '.join(str(x % 10) for x in range(max_x + 1)))
    lines.append(f'phi = {N.dev.phi.to_str(var)}, p = {N.p}')
    lines.append('vertices: ' + ' '.join(f'({x},{y})' for x, y in N.principal_vertices))
    residuals = N.residuals or (None,) * len(N.sides)
    for s, R in zip(N.sides, residuals):
        rtxt = R.to_str() if R is not None else 'undefined'
        sep = '' if R is None else (', separable' if residual_separable(R) else ', inseparable')
        lines.append(f'side ({s.start[0]},{s.start[1]})-({s.end[0]},{s.end[1]}): slope {s.slope.numerator}/'
                     f'{s.slope.denominator}, e = {s.e}, d = {s.degree}, R(y) = {rtxt}{sep}')
    lines.append(f'ind = {N.dev.phi.degree * ind_phi(N)}')
    return '\n'.join(lines) + '\n'
