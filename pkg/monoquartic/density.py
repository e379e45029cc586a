"""
Square-free sieving and empirical densities for the one-parameter families x^4 + b x + b and x^4 + x^3 + d.

Everything rests on ``linear_squarefree_mask``: for an arithmetic progression alpha*n + beta over a block of n,
each prime p <= sqrt(max |alpha*n + beta|) knocks out the residue class n = -beta/alpha mod p^2 (when it exists)
with one strided numpy assignment. Family counts, the square-free sieve and congruence-class densities are all
masks of this kind, computed segment by segment so memory stays bounded.

Counts are exact integers and densities exact fractions; floats appear only in targets and display strings.
"""
import csv
import io
import math
import multiprocessing
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from logging import getLogger

import numpy as np
from tqdm import tqdm

from .families import Verdict, check_f_bb, check_g_1d
from .intpoly import factor_int, small_primes
from .montes import dedekind_test
from .quartic import QuarticShape, is_irreducible_quartic
from .util import RunConfig, display_float, exact_str, load_defaults

SCHEMA_VERSION = 'monoquartic.density/1'

PI2 = math.pi ** 2
SQUAREFREE_DENSITY = 6 / PI2
THETA_HEURISTIC = 0.553

# family -> (alpha, beta) with the companion value alpha*t + beta
_COMPANION = {'f': (-27, 256), 'g': (256, -27)}
_PARAM = {'f': 'b', 'g': 'd'}
# residue class and modulus of the companion value, for the congruence-class density
_COMPANION_CLASS = {'f': (13, 27), 'g': (27, 256)}


def prachar_target(k):
    """Density of square-free n in a class coprime to k: (6/pi^2) prod_{p | k} (1 - 1/p^2)^-1"""
    k = abs(int(k))
    if k == 0:
        raise ValueError('Modulus must be nonzero')
    t = SQUAREFREE_DENSITY
    if k > 1:
        for p in factor_int(k).primes:
            t /= 1 - 1 / p ** 2
    return t


def pair_lower_bound(family):
    """6/pi^2 - (1 - companion class density): (51 - 4pi^2)/(4pi^2) for f, (14 - pi^2)/pi^2 for g"""
    return SQUAREFREE_DENSITY - (1 - prachar_target(_COMPANION_CLASS[family][1]))


def family_targets(family):
    return {f'{_PARAM[family]}_squarefree': SQUAREFREE_DENSITY,
            'pair_squarefree': pair_lower_bound(family),
            'companion_class': prachar_target(_COMPANION_CLASS[family][1]),
            'theta_generates': THETA_HEURISTIC}


@dataclass(frozen=True)
class SieveRange:
    """The half-open parameter range [lo, hi), tiled into segments of segment_size"""
    lo: int
    hi: int
    segment_size: int = None

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError(f'Empty range [{self.lo}, {self.hi})')
        if self.segment_size is None:
            object.__setattr__(self, 'segment_size', load_defaults()['sieve']['segment_size'])
        if self.segment_size < 1:
            raise ValueError('segment_size must be positive')

    @classmethod
    def inclusive(cls, lo, hi, segment_size=None):
        return cls(int(lo), int(hi) + 1, segment_size)

    @classmethod
    def symmetric(cls, bound, segment_size=None):
        return cls(-int(bound), int(bound) + 1, segment_size)

    def __len__(self):
        return self.hi - self.lo

    def segments(self, pieces=1):
        """[start, stop) blocks of at most segment_size, and at least `pieces` of them when the range allows"""
        step = min(self.segment_size, max(1, -(-len(self) // pieces)))
        for start in range(self.lo, self.hi, step):
            yield start, min(start + step, self.hi)


def linear_squarefree_mask(alpha, beta, lo, hi):
    """Boolean array over n in [lo, hi): |alpha*n + beta| is square-free. Zero is not square-free."""
    n = hi - lo
    mask = np.ones(n, dtype=bool)
    if n <= 0:
        return mask
    top = max(abs(alpha * lo + beta), abs(alpha * (hi - 1) + beta))
    for p in small_primes(math.isqrt(top)):
        q = int(p) * int(p)
        g = math.gcd(alpha, q)
        if beta % g:
            continue
        stride = q // g
        if stride == 1:
            mask[:] = False
            break
        n0 = (-beta // g) * pow((alpha // g) % stride, -1, stride) % stride
        mask[(n0 - lo) % stride::stride] = False
    if alpha and -beta % alpha == 0 and lo <= -beta // alpha < hi:
        mask[-beta // alpha - lo] = False
    elif alpha == 0 and beta == 0:
        mask[:] = False
    return mask


def squarefree_sieve(rng):
    """Bitmap over [lo, hi): entry i says whether |lo + i| is square-free"""
    return np.concatenate([linear_squarefree_mask(1, 0, s, e) for s, e in rng.segments()])


def _pair_masks(family, start, stop):
    alpha, beta = _COMPANION[family]
    own = linear_squarefree_mask(1, 0, start, stop)
    return own, own & linear_squarefree_mask(alpha, beta, start, stop)


def _family_segment(family, start, stop):
    own, pair = _pair_masks(family, start, stop)
    return Counter(total=stop - start, own=int(own.sum()), pair_squarefree=int(pair.sum()))


def _certify_segment(family, start, stop, seed):
    """Certificates are only attempted where both the parameter and its companion value are square-free"""
    check = check_f_bb if family == 'f' else check_g_1d
    _, pair = _pair_masks(family, start, stop)
    return Counter(certified_monogenic=sum(check(int(t), seed=seed).verdict is Verdict.MONOGENIC_GENERATOR
                                           for t in np.flatnonzero(pair) + start))


def _family_shape(family, t):
    return QuarticShape.f_family(t, t) if family == 'f' else QuarticShape.g_family(1, t)


def _family_disc_factorization(family, t):
    if family == 'f':
        return factor_int(t) ** 3 * factor_int(256 - 27 * t)
    return factor_int(t) ** 2 * factor_int(256 * t - 27)


def theta_generates(family, t, seed=None):
    """None for a reducible polynomial, else whether Z[theta] is the full ring of integers"""
    shape = _family_shape(family, t)
    if t == 0 or not is_irreducible_quartic(shape):
        return None
    fact = _family_disc_factorization(family, t)
    return all(dedekind_test(shape.poly, p, seed=seed) for p, e in fact.factors if e >= 2)


def _theta_segment(family, start, stop, seed):
    out = Counter()
    for t in range(start, stop):
        r = theta_generates(family, t, seed)
        if r is None:
            out['reducible'] += 1
        else:
            out['irreducible'] += 1
            out['theta_generates'] += int(r)
    return out


def _segment_args(family, rng, config, seeded=True):
    extra = (config.seed,) if seeded else ()
    return [(family, s, e) + extra for s, e in rng.segments(4 * config.threads)]


def _apply(packed):
    fn, args = packed
    return fn(*args)


def _run_tasks(fn, arglists, config, desc):
    """fn(*args) for every args, in a process pool when config.threads > 1; the returned Counters are summed"""
    disable = config.quiet or not sys.stderr.isatty()
    total = Counter()
    if config.threads == 1 or len(arglists) < 2:
        for args in tqdm(arglists, desc=desc, disable=disable, file=sys.stderr):
            total.update(fn(*args))
        return total
    with multiprocessing.Pool(processes=min(config.threads, len(arglists))) as pool:
        for c in tqdm(pool.imap_unordered(_apply, [(fn, a) for a in arglists]), total=len(arglists), desc=desc,
                      disable=disable, file=sys.stderr):
            total.update(c)
    return total


_DENSITY_SKIP = ('total', 'reducible')


@dataclass
class DensityReport:
    kind: str
    rng: SieveRange
    counts: dict
    targets: dict
    seed: int
    config_hash: str
    family: str = None
    params: dict = field(default_factory=dict)
    runtime: float = None

    @property
    def densities(self):
        total = self.counts['total']
        return {k: (Fraction(v, total) if v is not None and total else None)
                for k, v in self.counts.items() if k not in _DENSITY_SKIP}

    def to_dict(self):
        d = {'schema_version': SCHEMA_VERSION,
             'kind': self.kind,
             'family': self.family,
             'params': {k: str(v) for k, v in self.params.items()},
             'range': {'lo': str(self.rng.lo), 'hi': str(self.rng.hi), 'segment_size': str(self.rng.segment_size)},
             'counts': {k: (str(v) if v is not None else None) for k, v in self.counts.items()},
             'densities': {k: (exact_str(v) if v is not None else None) for k, v in self.densities.items()},
             'densities_display': {k: (display_float(v) if v is not None else None)
                                   for k, v in self.densities.items()},
             'targets': {k: display_float(v) for k, v in self.targets.items()},
             'seed': str(self.seed),
             'config_hash': self.config_hash}
        if self.runtime is not None:
            d['runtime_seconds'] = display_float(self.runtime)
        return d

    @classmethod
    def from_dict(cls, d):
        if d.get('schema_version') != SCHEMA_VERSION:
            raise ValueError(f'Unsupported density report schema {d.get("schema_version")!r}')
        r = d['range']
        return cls(d['kind'], SieveRange(int(r['lo']), int(r['hi']), int(r['segment_size'])),
                   {k: (int(v) if v is not None else None) for k, v in d['counts'].items()},
                   {k: float(v) for k, v in d['targets'].items()}, int(d['seed']), d['config_hash'],
                   d['family'], {k: int(v) for k, v in d['params'].items()},
                   float(d['runtime_seconds']) if 'runtime_seconds' in d else None)

    def csv_header(self):
        cols = ['kind', 'family', 'lo', 'hi']
        cols += list(self.params)
        cols += list(self.counts)
        cols += [f'{k}_density' for k in self.densities]
        cols += [f'{k}_target' for k in self.targets]
        if self.runtime is not None:
            cols.append('runtime_seconds')
        return cols

    def csv_row(self):
        d = self.to_dict()
        row = [self.kind, self.family or '', d['range']['lo'], d['range']['hi']]
        row += [d['params'][k] for k in self.params]
        row += [v if v is not None else '' for v in d['counts'].values()]
        row += [v if v is not None else '' for v in d['densities_display'].values()]
        row += list(d['targets'].values())
        if self.runtime is not None:
            row.append(d['runtime_seconds'])
        return row

    def to_text(self):
        lines = [f'{self.kind} report' + (f' for family {self.family}' if self.family else ''),
                 f'range: [{self.rng.lo}, {self.rng.hi})']
        for k, v in self.params.items():
            lines.append(f'{k}: {v}')
        dens = self.densities
        for k, v in self.counts.items():
            if v is None:
                continue
            line = f'{k}: {v}'
            if dens.get(k) is not None:
                line += f'  ({display_float(dens[k])})'
            lines.append(line)
        for k, v in self.targets.items():
            lines.append(f'target {k}: {display_float(v)}')
        if self.runtime is not None:
            lines.append(f'runtime: {display_float(self.runtime)} s')
        return '\n'.join(lines) + '\n'


def to_csv(reports):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator='\n')
    header = None
    for r in reports:
        if r.csv_header() != header:
            header = r.csv_header()
            w.writerow(header)
        w.writerow(r.csv_row())
    return buf.getvalue()


def _report(kind, rng, counts, targets, config, t0, **kwargs):
    runtime = time.perf_counter() - t0 if config.timing else None
    report = DensityReport(kind, rng, counts, targets, config.seed, config.digest, runtime=runtime, **kwargs)
    getLogger(__name__).info(f'{kind} over [{rng.lo}, {rng.hi}): ' +
                             ', '.join(f'{k}={v}' for k, v in counts.items()))
    return report


def squarefree_report(rng, config=None):
    config = config or RunConfig()
    t0 = time.perf_counter()
    mask = squarefree_sieve(rng)
    return _report('squarefree', rng, {'total': len(rng), 'squarefree': int(mask.sum())},
                   {'squarefree': SQUAREFREE_DENSITY}, config, t0)


def family_density(family, rng, config=None, certify=False, theta=False):
    """
    Counts over the parameter range of the family ('f' for x^4 + bx + b, 'g' for x^4 + x^3 + d): square-free
    parameters, parameters whose companion value (256 - 27b or 256d - 27) is square-free too, and optionally
    certified parameters and parameters where theta generates the ring of integers. Counts that were not
    computed are None. Every stage, the sieve included, is split into 4 * threads sub-ranges of at most
    segment_size and run through the process pool.
    """
    if family not in _COMPANION:
        raise ValueError(f'Unknown family {family!r}; expected f or g')
    config = config or RunConfig(segment_size=rng.segment_size)
    t0 = time.perf_counter()
    log = getLogger(__name__)

    seg = _run_tasks(_family_segment, _segment_args(family, rng, config, seeded=False), config, 'sieve')
    log.debug(f'family {family}: {seg["pair_squarefree"]} square-free pairs in {len(rng)} parameters')

    counts = {'total': seg['total'], f'{_PARAM[family]}_squarefree': seg['own'],
              'pair_squarefree': seg['pair_squarefree'], 'certified_monogenic': None, 'theta_generates': None}
    if certify:
        c = _run_tasks(_certify_segment, _segment_args(family, rng, config), config, 'certify')
        counts['certified_monogenic'] = c['certified_monogenic']
    if theta:
        c = _run_tasks(_theta_segment, _segment_args(family, rng, config), config, 'theta')
        counts['theta_generates'] = c['theta_generates']
    return _report('family', rng, counts, family_targets(family), config, t0, family=family)


def family_density_f(rng, config=None, certify=False, theta=False):
    return family_density('f', rng, config, certify, theta)


def family_density_g(rng, config=None, certify=False, theta=False):
    return family_density('g', rng, config, certify, theta)


def _prachar_counts(m, k, x):
    m, k, x = int(m), int(k), int(x)
    if k < 1:
        raise ValueError(f'Modulus must be positive, got {k}')
    if math.gcd(m, k) != 1:
        raise ValueError(f'gcd({m}, {k}) != 1')
    m0 = m % k
    t_lo = 0 if m0 >= 1 else 1
    t_hi = (x - m0) // k + 1
    if t_hi <= t_lo:
        raise ValueError(f'No n <= {x} with n = {m} mod {k}')
    sqf = sum(int(linear_squarefree_mask(k, m0, s, e).sum())
              for s, e in SieveRange(t_lo, t_hi).segments())
    return t_hi - t_lo, sqf


def prachar_check(m, k, x):
    """(empirical density of square-free n = m mod k with 1 <= n <= x, predicted density) for gcd(m, k) = 1"""
    total, sqf = _prachar_counts(m, k, x)
    return Fraction(sqf, total), prachar_target(k)


def prachar_report(m, k, x, config=None):
    config = config or RunConfig()
    t0 = time.perf_counter()
    total, sqf = _prachar_counts(m, k, x)
    return _report('prachar', SieveRange(1, int(x) + 1), {'total': total, 'squarefree': sqf},
                   {'prachar': prachar_target(k)}, config, t0, params={'m': int(m) % int(k), 'k': int(k)})


def theta_generates_scan(family, rng, config=None):
    """
    Fraction of parameters whose polynomial is irreducible and has Z[theta] maximal, by the Dedekind criterion at
    every p with p^2 | disc. Reducible polynomials are skipped and counted separately; 'total' counts the
    irreducible ones.
    """
    if family not in _COMPANION:
        raise ValueError(f'Unknown family {family!r}; expected f or g')
    config = config or RunConfig(segment_size=rng.segment_size)
    t0 = time.perf_counter()
    c = _run_tasks(_theta_segment, _segment_args(family, rng, config), config, f'theta-scan {family}')
    counts = {'total': c['irreducible'], 'theta_generates': c['theta_generates'], 'reducible': c['reducible']}
    return _report('theta', rng, counts, {'theta_generates': THETA_HEURISTIC}, config, t0, family=family)
