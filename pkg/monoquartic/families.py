"""
Monogenicity certificates for x^4 + a x + b, x^4 + c x^3 + d and the cubic y^3 - 4 d y - d.

A certificate records every hypothesis that was checked, one piece of evidence per prime dividing the
discriminant, and a verdict. MONOGENIC_GENERATOR means every such prime was shown not to divide the index of
Z[root] in the ring of integers. HYPOTHESES_NOT_MET only says the criterion does not apply; it never claims the
root fails to generate.

Evidence tags:
    SQFREE_VAL_1            v_p(disc) = 1, so p cannot divide the index
    CASE1_EISENSTEIN_SHAPE  the polynomial reduces to x^4 (or y^3) mod p
    CASE2_P2                p = 2 with the mod 4 congruence conditions
    CASE3_P3                p = 3 with the mod 9 congruence conditions of the (a, b) family
    GCD_SIEVE               p | d with p not dividing c, reduction x^3 (x + c)
    DEDEKIND_XCHECK         Dedekind criterion run as a cross-check; never certifies on its own
"""
import enum
import math
from dataclasses import dataclass, field
from logging import getLogger

from .intpoly import IntPoly, discriminant, factor_int, rational_roots, vp_int
from .montes import IndexReport, dedekind_test, index_report, vp_field_disc
from .quartic import GaloisGroup, GaloisReport, QuarticShape, galois_group, irreducibility
from .util import canonical_json, hasher, resolve_seed

SCHEMA_VERSION = 'monoquartic.certificate/1'

# (a mod 4, b mod 4), resp. (c mod 4, d mod 4), for the p = 2 congruence case
COND2_PAIRS = frozenset({(0, 1), (2, 3)})
# (a mod 9, b mod 9) for the p = 3 case of the (a, b) family
COND3_PAIRS = frozenset({(1, 3), (1, 6), (2, 0), (2, 3), (4, 0), (4, 6),
                         (5, 0), (5, 6), (7, 0), (7, 3), (8, 3), (8, 6)})

DISC_NOTE = ('discriminant taken from the resultant, 256b^3 - 27a^4; the product form b^3(256 - 27b) '
             'holds only when a = b')
TWO_ADIC_NOTE = ('2 || (256d - 27c^4) cannot occur: c even gives 16 | 256d - 27c^4, c odd makes it odd')


class CertificateConstructionError(Exception):
    pass


class Family(enum.Enum):
    F_AB = 'x^4 + a*x + b'
    G_CD = 'x^4 + c*x^3 + d'
    F_BB = 'x^4 + b*x + b'
    G_1D = 'x^4 + x^3 + d'
    RESOLVENT_CUBIC = 'y^3 - 4*d*y - d'


class Verdict(enum.Enum):
    MONOGENIC_GENERATOR = 'generates the ring of integers'
    HYPOTHESES_NOT_MET = 'theorem inapplicable'
    NOT_IRREDUCIBLE = 'polynomial reducible; theorem inapplicable'


class CaseTag(enum.Enum):
    SQFREE_VAL_1 = 'v_p(disc) = 1'
    CASE1_EISENSTEIN_SHAPE = 'reduction is a pure power of x'
    CASE2_P2 = 'p = 2 congruence case'
    CASE3_P3 = 'p = 3 congruence case'
    GCD_SIEVE = 'reduction x^3 (x + c)'
    DEDEKIND_XCHECK = 'Dedekind criterion cross-check'


_ROOT_NAME = {Family.F_AB: 'theta', Family.F_BB: 'theta', Family.G_CD: 'tau', Family.G_1D: 'tau',
              Family.RESOLVENT_CUBIC: 'beta'}


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    value: str
    passed: bool

    def to_dict(self):
        return {'name': self.name, 'value': self.value, 'passed': self.passed}

    @classmethod
    def from_dict(cls, d):
        return cls(d['name'], d['value'], d['passed'])


@dataclass(frozen=True)
class PrimeEvidence:
    p: int
    tag: CaseTag
    vp_disc: int
    report: IndexReport = None
    vp_field_disc: int = None
    dedekind: bool = None

    @property
    def certifying(self):
        return self.tag is not CaseTag.DEDEKIND_XCHECK

    def to_dict(self):
        return {'p': str(self.p), 'tag': self.tag.name, 'vp_disc': str(self.vp_disc),
                'index_report': self.report.to_dict() if self.report is not None else None,
                'vp_field_disc': str(self.vp_field_disc) if self.vp_field_disc is not None else None,
                'dedekind': self.dedekind}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d['p']), CaseTag[d['tag']], int(d['vp_disc']),
                   IndexReport.from_dict(d['index_report']) if d['index_report'] is not None else None,
                   int(d['vp_field_disc']) if d['vp_field_disc'] is not None else None,
                   d['dedekind'])


@dataclass(frozen=True)
class Certificate:
    family: Family
    params: tuple
    polynomial: IntPoly
    discriminant: int
    verdict: Verdict
    hypothesis_trail: tuple
    prime_evidence: tuple
    galois: GaloisReport = None
    flags: dict = field(default_factory=dict)
    rng_seed: int = 0
    deviation_notes: tuple = ()

    @property
    def variable(self):
        return 'y' if self.family is Family.RESOLVENT_CUBIC else 'x'

    @property
    def statement(self):
        if self.verdict is Verdict.MONOGENIC_GENERATOR:
            r = _ROOT_NAME[self.family]
            return f'{r} {self.verdict.value} of Q({r})'
        return self.verdict.value

    @property
    def config_hash(self):
        return hasher((SCHEMA_VERSION, self.rng_seed))

    @property
    def certified_primes(self):
        return tuple(e.p for e in self.prime_evidence if e.certifying)

    def to_dict(self):
        return {'schema_version': SCHEMA_VERSION,
                'family': self.family.name,
                'params': [str(x) for x in self.params],
                'polynomial': self.polynomial.to_str(self.variable),
                'discriminant': str(self.discriminant),
                'verdict': self.verdict.name,
                'statement': self.statement,
                'hypothesis_trail': [h.to_dict() for h in self.hypothesis_trail],
                'prime_evidence': [e.to_dict() for e in self.prime_evidence],
                'galois': self.galois.to_dict() if self.galois is not None else None,
                'flags': dict(self.flags),
                'rng_seed': str(self.rng_seed),
                'deviation_notes': list(self.deviation_notes),
                'config_hash': self.config_hash}

    @classmethod
    def from_dict(cls, d):
        if d.get('schema_version') != SCHEMA_VERSION:
            raise ValueError(f'Unsupported certificate schema {d.get("schema_version")!r}')
        return cls(Family[d['family']], tuple(int(x) for x in d['params']), IntPoly.parse(d['polynomial']),
                   int(d['discriminant']), Verdict[d['verdict']],
                   tuple(HypothesisCheck.from_dict(h) for h in d['hypothesis_trail']),
                   tuple(PrimeEvidence.from_dict(e) for e in d['prime_evidence']),
                   GaloisReport.from_dict(d['galois']) if d['galois'] is not None else None,
                   dict(d['flags']), int(d['rng_seed']), tuple(d['deviation_notes']))

    def to_json(self):
        return canonical_json(self.to_dict())

    def to_text(self):
        var = self.variable
        names = ('c', 'd') if self.family in (Family.G_CD, Family.G_1D, Family.RESOLVENT_CUBIC) else ('a', 'b')
        params = ', '.join(f'{n}={v}' for n, v in zip(names, self.params))
        lines = [f'{self.polynomial.to_str(var)}  ({self.family.name}, {params})',
                 f'discriminant: {self.discriminant}',
                 f'verdict: {self.verdict.name} ({self.statement})',
                 'hypotheses:']
        for h in self.hypothesis_trail:
            lines.append(f'  [{"pass" if h.passed else "FAIL"}] {h.name}: {h.value}')
        if self.prime_evidence:
            lines.append('primes:')
        for e in self.prime_evidence:
            line = f'  p={e.p} {e.tag.name} v_p(disc)={e.vp_disc}'
            if e.report is not None:
                line += f' ind={e.report.lower_bound} {"exact" if e.report.exact else "not exact"}'
                line += ' factors ' + ' '.join(f'({fi.phibar})^{fi.multiplicity}' for fi in e.report.factors)
            if e.vp_field_disc is not None:
                line += f' v_p(disc K)={e.vp_field_disc}'
            if e.dedekind is not None:
                line += f' dedekind={"pass" if e.dedekind else "fail"}'
            lines.append(line)
        if self.galois is not None:
            lines.append(f'galois: {self.galois.group.value} (disc square: {self.galois.disc_is_square}, '
                         f'resolvent irreducible: {self.galois.resolvent_irreducible})')
        for k, v in sorted(self.flags.items()):
            lines.append(f'flag {k}: {v}')
        for n in self.deviation_notes:
            lines.append(f'note: {n}')
        lines.append(f'seed: {self.rng_seed}')
        return '\n'.join(lines) + '\n'


@dataclass
class _Analysis:
    """Working state shared by a family check and its restricted variant"""
    poly: IntPoly
    seed: int
    disc: int = 0
    irreducible: bool = True
    trail: list = field(default_factory=list)
    evidence: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)
    disc_fact: object = None
    met: bool = False

    def check(self, name, value, passed):
        self.trail.append(HypothesisCheck(name, str(value), bool(passed)))
        return bool(passed)


def _montes_evidence(an, p, tag, vp_disc):
    report = index_report(an.poly, p, seed=an.seed)
    if not report.exact or report.lower_bound != 0:
        raise CertificateConstructionError(f'{tag.name} at p={p} for {an.poly}: index lower bound '
                                           f'{report.lower_bound}, exact={report.exact}')
    return PrimeEvidence(p, tag, vp_disc, report, vp_field_disc(an.poly, p, report, an.disc))


def _f_conditions(a, b, p):
    tags = []
    if a % p == 0 and b % p == 0 and b % (p * p):
        tags.append(CaseTag.CASE1_EISENSTEIN_SHAPE)
    if p == 2 and b % 2 and (a % 4, b % 4) in COND2_PAIRS:
        tags.append(CaseTag.CASE2_P2)
    if p == 3 and a % 3 and (a % 9, b % 9) in COND3_PAIRS:
        tags.append(CaseTag.CASE3_P3)
    return tags


def _analyse_f(a, b, seed):
    an = _Analysis(QuarticShape.f_family(a, b).poly, seed)
    an.flags['b_divides_a'] = b != 0 and a % b == 0
    an.notes.append(DISC_NOTE)
    irreducible, path = irreducibility(QuarticShape.f_family(a, b))
    an.irreducible = an.check('irreducible', path, irreducible)
    an.disc = discriminant(an.poly)
    if not an.irreducible:
        return an

    gstar = math.gcd(256 * b ** 3, 27 * a ** 4)
    ratio = an.disc // gstar
    gfact, rfact = factor_int(gstar, seed), factor_int(ratio, seed)
    an.disc_fact = gfact * rfact
    an.check('gcd(256b^3, 27a^4)', gfact, True)
    sqf = an.check('(256b^3 - 27a^4)/gcd squarefree', f'{ratio} = {rfact}', rfact.is_squarefree())

    matched = {}
    for p in gfact.primes:
        tags = _f_conditions(a, b, p)
        if len(tags) > 1:
            raise CertificateConstructionError(f'p={p} matches {[t.name for t in tags]} for (a, b) = ({a}, {b})')
        if an.check(f'p={p} condition', tags[0].name if tags else 'none', tags):
            matched[p] = tags[0]
    an.met = sqf and len(matched) == len(gfact.primes)
    if not an.met:
        return an

    for p, e in an.disc_fact.factors:
        if p in matched:
            an.evidence.append(_montes_evidence(an, p, matched[p], e))
            if matched[p] is CaseTag.CASE1_EISENSTEIN_SHAPE:
                an.notes.append(f'p={p}: residual polynomial computed as y + {(b // p) % p} from the residual '
                                f'coefficient b/p mod p; the form y - b/p differs only in sign and is equally linear')
        elif e == 1:
            an.evidence.append(PrimeEvidence(p, CaseTag.SQFREE_VAL_1, 1, vp_field_disc=1))
        else:
            raise CertificateConstructionError(f'p={p} has v_p(disc)={e} and matches no case')
    return an


def _analyse_g(c, d, seed):
    an = _Analysis(QuarticShape.g_family(c, d).poly, seed)
    an.notes.append(TWO_ADIC_NOTE)
    irreducible, path = irreducibility(QuarticShape.g_family(c, d))
    an.irreducible = an.check('irreducible', path, irreducible)
    an.disc = discriminant(an.poly)
    if not an.irreducible:
        return an

    m = 256 * d - 27 * c ** 4
    dfact, mfact = factor_int(d, seed), factor_int(m, seed)
    an.disc_fact = dfact ** 2 * mfact
    d_sqf = an.check('d squarefree', dfact, dfact.is_squarefree())
    m_sqf = an.check('256d - 27c^4 free of odd prime squares', f'{m} = {mfact}', mfact.odd_part_squarefree())
    v2m = mfact.exponent(2)
    an.check('v_2(256d - 27c^4) != 1', v2m, v2m != 1)
    four = m % 4 == 0
    an.flags['four_divides_m'] = four
    cong = True
    if four:
        cong = an.check('(c, d) mod 4', f'({c % 4}, {d % 4})', (c % 4, d % 4) in COND2_PAIRS)
        cong = an.check('v_2(c + d + 1) = 1', vp_int(c + d + 1, 2), vp_int(c + d + 1, 2) == 1) and cong
    an.met = d_sqf and m_sqf and cong
    if not an.met:
        return an

    for p, e in an.disc_fact.factors:
        if d % p == 0:
            tag = CaseTag.CASE1_EISENSTEIN_SHAPE if c % p == 0 else CaseTag.GCD_SIEVE
            an.evidence.append(_montes_evidence(an, p, tag, e))
        elif p == 2:
            an.evidence.append(_montes_evidence(an, p, CaseTag.CASE2_P2, e))
        elif e == 1:
            an.evidence.append(PrimeEvidence(p, CaseTag.SQFREE_VAL_1, 1, vp_field_disc=1))
        else:
            raise CertificateConstructionError(f'p={p} has v_p(disc)={e} and matches no case')
    return an


def _analyse_cubic(d, seed):
    an = _Analysis(IntPoly([-d, -4 * d, 0, 1]), seed)
    roots = rational_roots(an.poly)
    an.irreducible = an.check('irreducible', 'rational-root', not roots)
    an.disc = discriminant(an.poly)
    if not an.irreducible:
        return an

    m = 256 * d - 27
    dfact, mfact = factor_int(d, seed), factor_int(m, seed)
    an.disc_fact = dfact ** 2 * mfact
    d_sqf = an.check('d squarefree', dfact, dfact.is_squarefree())
    m_sqf = an.check('256d - 27 squarefree', f'{m} = {mfact}', mfact.is_squarefree())
    excluded = an.check('d != -2', d, d != -2)
    an.met = d_sqf and m_sqf and excluded
    if not an.met:
        return an

    for p, e in an.disc_fact.factors:
        if d % p == 0:
            an.evidence.append(_montes_evidence(an, p, CaseTag.CASE1_EISENSTEIN_SHAPE, e))
        elif e == 1:
            an.evidence.append(PrimeEvidence(p, CaseTag.SQFREE_VAL_1, 1, vp_field_disc=1))
        else:
            raise CertificateConstructionError(f'p={p} has v_p(disc)={e} and matches no case')
    return an


def _crosscheck(an):
    fact = an.disc_fact if an.disc_fact is not None else factor_int(an.disc, an.seed)
    for p, e in fact.factors:
        if e >= 2:
            an.evidence.append(PrimeEvidence(p, CaseTag.DEDEKIND_XCHECK, e,
                                             dedekind=dedekind_test(an.poly, p, seed=an.seed)))


def _certificate(family, params, an, verdict, galois=None, crosscheck=False):
    if crosscheck and an.irreducible:
        _crosscheck(an)

    tagged = [e.p for e in an.evidence if e.certifying]
    if len(tagged) != len(set(tagged)):
        raise CertificateConstructionError(f'{an.poly}: a prime carries more than one case tag')
    if verdict is Verdict.MONOGENIC_GENERATOR:
        missing = set(an.disc_fact.primes) - set(tagged)
        if missing:
            raise CertificateConstructionError(f'{an.poly}: primes {sorted(missing)} divide the discriminant '
                                               f'without evidence')
        failed = [e.p for e in an.evidence if e.dedekind is False]
        if failed:
            raise CertificateConstructionError(f'{an.poly}: Dedekind criterion fails at {failed} '
                                               f'for a certified polynomial')

    cert = Certificate(family, tuple(params), an.poly, an.disc, verdict, tuple(an.trail), tuple(an.evidence),
                       galois, dict(an.flags), an.seed, tuple(an.notes))
    getLogger(__name__).info(f'{family.name}{tuple(params)}: {verdict.name}')
    return cert


def _verdict(an, *extra):
    if not an.irreducible:
        return Verdict.NOT_IRREDUCIBLE
    if an.met and all(extra):
        return Verdict.MONOGENIC_GENERATOR
    return Verdict.HYPOTHESES_NOT_MET


def check_f(a, b, seed=None, crosscheck=False):
    """Certificate that a root of x^4 + a x + b generates the ring of integers, when the criterion applies"""
    a, b = int(a), int(b)
    an = _analyse_f(a, b, resolve_seed(seed))
    return _certificate(Family.F_AB, (a, b), an, _verdict(an), crosscheck=crosscheck)


def check_g(c, d, seed=None, crosscheck=False):
    """Certificate that a root of x^4 + c x^3 + d generates the ring of integers, when the criterion applies"""
    c, d = int(c), int(d)
    an = _analyse_g(c, d, resolve_seed(seed))
    return _certificate(Family.G_CD, (c, d), an, _verdict(an), crosscheck=crosscheck)


def _require_s4(verdict, galois, poly):
    if verdict is Verdict.MONOGENIC_GENERATOR and galois.group is not GaloisGroup.S4:
        raise CertificateConstructionError(f'{poly} certified but its Galois group is {galois.group.value}')


def check_f_bb(b, seed=None, crosscheck=False):
    """x^4 + b x + b with b and 256 - 27b squarefree and b not 3 or 5: monogenic with group S4"""
    b = int(b)
    an = _analyse_f(b, b, resolve_seed(seed))
    restricted = []
    if an.irreducible:
        restricted = [an.check('b squarefree', b, factor_int(b).is_squarefree()),
                      an.check('256 - 27b squarefree', 256 - 27 * b, factor_int(256 - 27 * b).is_squarefree()),
                      an.check('b not in {3, 5}', b, b not in (3, 5))]
        if an.met and not all(restricted):
            an.notes.append('the (a, b) criterion certifies every prime, but the restricted hypotheses fail')
    galois = galois_group(QuarticShape.f_family(b, b))
    verdict = _verdict(an, *restricted)
    _require_s4(verdict, galois, an.poly)
    return _certificate(Family.F_BB, (b, b), an, verdict, galois, crosscheck)


def check_g_1d(d, seed=None, crosscheck=False):
    """x^4 + x^3 + d with d and 256d - 27 squarefree and d != -2: monogenic with group S4"""
    d = int(d)
    an = _analyse_g(1, d, resolve_seed(seed))
    restricted = []
    if an.irreducible:
        restricted = [an.check('d squarefree', d, factor_int(d).is_squarefree()),
                      an.check('256d - 27 squarefree', 256 * d - 27, factor_int(256 * d - 27).is_squarefree()),
                      an.check('d != -2', d, d != -2)]
        if an.met and not all(restricted):
            an.notes.append('the (c, d) criterion certifies every prime, but the restricted hypotheses fail')
    galois = galois_group(QuarticShape.g_family(1, d))
    verdict = _verdict(an, *restricted)
    _require_s4(verdict, galois, an.poly)
    return _certificate(Family.G_1D, (1, d), an, verdict, galois, crosscheck)


def check_resolvent_cubic(d, seed=None, crosscheck=False):
    """Certificate for a root of y^3 - 4dy - d, the resolvent cubic of x^4 + x^3 + d"""
    d = int(d)
    an = _analyse_cubic(d, resolve_seed(seed))
    if d == -2:
        an.notes.append('d = -2 is excluded exactly as for x^4 + x^3 + d')
    return _certificate(Family.RESOLVENT_CUBIC, (1, d), an, _verdict(an), crosscheck=crosscheck)
