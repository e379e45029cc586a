"""
Command line entry point.

Exit codes: 0 on success, 2 when a certificate verdict is HYPOTHESES_NOT_MET or NOT_IRREDUCIBLE (the computation
itself succeeded), 1 on usage or internal errors. Reports go to stdout, logging to stderr.
"""
import argparse
import csv
import io
import sys
from logging import getLogger

from . import __version__
from .density import (SieveRange, family_density, prachar_report, squarefree_report, theta_generates_scan,
                      to_csv)
from .families import (CertificateConstructionError, Verdict, check_f, check_f_bb, check_g, check_g_1d,
                       check_resolvent_cubic)
from .intpoly import IntPoly
from .montes import dedekind_test, index_report, ind_phi, newton_polygon, phi_development, render_polygon
from .quartic import QuarticShape, galois_group
from .util import RunConfig, canonical_json, load_defaults, setup_logging

PROGRAM = 'monoquartic'


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f'{self.format_usage()}{self.prog}: error: {message}')


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator='\n').writerows(rows)
    return buf.getvalue()


def parse_cl(argv=None):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', dest='fmt', action='store', required=False, type=str, default='human',
                        choices=('human', 'json', 'csv'), help='Output format')
    common.add_argument('--seed', dest='seed', action='store', required=False, type=int, default=None,
                        help='RNG seed for polynomial factoring mod p (MQ_SEED overrides)')
    common.add_argument('--threads', dest='threads', action='store', required=False, type=int, default=1,
                        help='Worker processes for scans')
    common.add_argument('--symmetric', dest='symmetric', action='store_true', required=False, default=False,
                        help='Scan [-hi, hi] instead of [lo, hi]')
    common.add_argument('--quiet', dest='quiet', action='store_true', required=False, default=False,
                        help='Only log warnings and hide progress bars')
    common.add_argument('--log-level', dest='log_level', action='store', required=False, type=str, default=None,
                        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'), help='Log level for the package loggers')
    common.add_argument('--timing', dest='timing', action='store_true', required=False, default=False,
                        help='Add runtime metadata to reports')

    parser = _Parser(prog=PROGRAM, description='Monogenic quartic certificates, Galois groups and densities',
                     add_help=True)
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = sub.add_parser('check-f', parents=[common], help='Certify x^4 + a*x + b')
    p.add_argument('--a', dest='a', action='store', required=True, type=int)
    p.add_argument('--b', dest='b', action='store', required=True, type=int)
    p = sub.add_parser('check-g', parents=[common], help='Certify x^4 + c*x^3 + d')
    p.add_argument('--c', dest='c', action='store', required=True, type=int)
    p.add_argument('--d', dest='d', action='store', required=True, type=int)
    p = sub.add_parser('check-fbb', parents=[common], help='Certify x^4 + b*x + b with group S4')
    p.add_argument('--b', dest='b', action='store', required=True, type=int)
    p = sub.add_parser('check-g1d', parents=[common], help='Certify x^4 + x^3 + d with group S4')
    p.add_argument('--d', dest='d', action='store', required=True, type=int)
    p = sub.add_parser('check-cubic', parents=[common], help='Certify the resolvent cubic y^3 - 4*d*y - d')
    p.add_argument('--d', dest='d', action='store', required=True, type=int)
    for name in ('check-f', 'check-g', 'check-fbb', 'check-g1d', 'check-cubic'):
        sub.choices[name].add_argument('--crosscheck', dest='crosscheck', action='store_true', required=False,
                                       default=False, help='Also run the Dedekind criterion at every p^2 | disc')

    p = sub.add_parser('galois', parents=[common], help='Galois group of a monic quartic')
    p.add_argument('--poly', dest='poly', action='store', required=True, type=str)
    p = sub.add_parser('newton', parents=[common], help='phi-Newton polygon at p')
    p.add_argument('--poly', dest='poly', action='store', required=True, type=str)
    p.add_argument('--p', dest='p', action='store', required=True, type=int)
    p.add_argument('--phi', dest='phi', action='store', required=False, type=str, default='x')
    p = sub.add_parser('index', parents=[common], help='Index lower bound at p and the Dedekind verdict')
    p.add_argument('--poly', dest='poly', action='store', required=True, type=str)
    p.add_argument('--p', dest='p', action='store', required=True, type=int)

    p = sub.add_parser('density', parents=[common], help='Square-free densities over a parameter range')
    p.add_argument('--family', dest='family', action='store', required=True, type=str,
                   choices=('f', 'g', 'squarefree'))
    p.add_argument('--lo', dest='lo', action='store', required=False, type=int, default=1)
    p.add_argument('--hi', dest='hi', action='store', required=True, type=int)
    p.add_argument('--segment-size', dest='segment_size', action='store', required=False, type=int, default=None)
    p.add_argument('--certify', dest='certify', action='store_true', required=False, default=False,
                   help='Also count certified parameters')
    p.add_argument('--theta', dest='theta', action='store_true', required=False, default=False,
                   help='Also count parameters where Z[theta] is maximal')
    p = sub.add_parser('prachar', parents=[common], help='Square-free density in a residue class')
    p.add_argument('--m', dest='m', action='store', required=True, type=int)
    p.add_argument('--k', dest='k', action='store', required=True, type=int)
    p.add_argument('--x', dest='x', action='store', required=True, type=int)
    p = sub.add_parser('theta-scan', parents=[common], help='Fraction of fields where theta generates')
    p.add_argument('--family', dest='family', action='store', required=True, type=str, choices=('f', 'g'))
    p.add_argument('--bound', dest='bound', action='store', required=False, type=int,
                   default=load_defaults()['scan']['bound'])
    p.add_argument('--full', dest='full', action='store_true', required=False, default=False,
                   help='Symmetric scan to the full replication bound')
    return parser.parse_args(argv)


def _certificate_output(cert, fmt):
    if fmt == 'json':
        return cert.to_json()
    if fmt == 'csv':
        return _csv([['family', 'params', 'polynomial', 'discriminant', 'verdict', 'certified_primes'],
                     [cert.family.name, ' '.join(map(str, cert.params)), cert.polynomial.to_str(cert.variable),
                      str(cert.discriminant), cert.verdict.name, ' '.join(map(str, cert.certified_primes))]])
    return cert.to_text()


def _run_check(args, config):
    if args.command == 'check-f':
        cert = check_f(args.a, args.b, seed=config.seed, crosscheck=args.crosscheck)
    elif args.command == 'check-g':
        cert = check_g(args.c, args.d, seed=config.seed, crosscheck=args.crosscheck)
    elif args.command == 'check-fbb':
        cert = check_f_bb(args.b, seed=config.seed, crosscheck=args.crosscheck)
    elif args.command == 'check-g1d':
        cert = check_g_1d(args.d, seed=config.seed, crosscheck=args.crosscheck)
    else:
        cert = check_resolvent_cubic(args.d, seed=config.seed, crosscheck=args.crosscheck)
    return _certificate_output(cert, config.fmt), (0 if cert.verdict is Verdict.MONOGENIC_GENERATOR else 2)


def _run_galois(args, config):
    h = IntPoly.parse(args.poly)
    report = galois_group(QuarticShape.from_poly(h))
    if config.fmt == 'json':
        return canonical_json({'polynomial': str(h), 'galois': report.to_dict()})
    if config.fmt == 'csv':
        d = report.to_dict()
        return _csv([['polynomial'] + list(d), [str(h)] + [str(v) for v in d.values()]])
    return (f'{h}: {report.group.value}\n'
            f'discriminant: {report.disc} (square: {report.disc_is_square})\n'
            f'resolvent: {report.resolvent.to_str("y")} (irreducible: {report.resolvent_irreducible})\n'
            f'irreducibility: {report.irreducibility_path}\n')


def _run_newton(args, config):
    f, phi = IntPoly.parse(args.poly), IntPoly.parse(args.phi)
    N = newton_polygon(phi_development(f, phi), args.p)
    ind = phi.degree * ind_phi(N)
    if config.fmt == 'human':
        return render_polygon(N)
    residuals = N.residuals or (None,) * len(N.sides)
    sides = [{'start': [str(x) for x in s.start], 'end': [str(x) for x in s.end], 'slope': f'-{s.h}/{s.e}',
              'e': str(s.e), 'd': str(s.degree), 'residual': R.to_str() if R is not None else None}
             for s, R in zip(N.sides, residuals)]
    if config.fmt == 'json':
        return canonical_json({'polynomial': str(f), 'phi': str(phi), 'p': str(args.p),
                               'points': [[str(x), str(y)] for x, y in N.points],
                               'vertices': [[str(x), str(y)] for x, y in N.principal_vertices],
                               'sides': sides, 'ind': str(ind)})
    return _csv([['start', 'end', 'slope', 'e', 'd', 'residual']] +
                [[f'({s["start"][0]},{s["start"][1]})', f'({s["end"][0]},{s["end"][1]})', s['slope'], s['e'],
                  s['d'], s['residual'] or ''] for s in sides] +
                [['ind', str(ind)]])


def _run_index(args, config):
    f = IntPoly.parse(args.poly)
    report = index_report(f, args.p, seed=config.seed)
    dedekind = dedekind_test(f, args.p, seed=config.seed)
    if config.fmt == 'json':
        return canonical_json({'polynomial': str(f), 'index_report': report.to_dict(), 'dedekind': dedekind})
    if config.fmt == 'csv':
        return _csv([['phi', 'multiplicity', 'ind', 'separable', 'shortcut']] +
                    [[str(fi.phibar), fi.multiplicity, fi.ind, fi.separable, fi.shortcut] for fi in report.factors] +
                    [['lower_bound', report.lower_bound], ['exact', report.exact], ['dedekind', dedekind]])
    lines = [f'{f} at p = {args.p}']
    for fi in report.factors:
        how = 'simple factor' if fi.shortcut else f'{len(fi.sides)} side(s)'
        lines.append(f'  ({fi.phibar})^{fi.multiplicity}: ind = {fi.ind}, '
                     f'{"separable" if fi.separable else "inseparable"} ({how})')
    lines.append(f'lower bound: {report.lower_bound} ({"exact" if report.exact else "not exact"})')
    lines.append(f'dedekind: p {"does not divide" if dedekind else "divides"} the index')
    return '\n'.join(lines) + '\n'


def _report_output(report, fmt):
    if fmt == 'json':
        return canonical_json(report.to_dict())
    if fmt == 'csv':
        return to_csv([report])
    return report.to_text()


def _run_density(args, config):
    if args.symmetric:
        rng = SieveRange.symmetric(args.hi, config.segment_size)
    else:
        rng = SieveRange.inclusive(args.lo, args.hi, config.segment_size)
    if args.family == 'squarefree':
        report = squarefree_report(rng, config)
    else:
        report = family_density(args.family, rng, config, certify=args.certify, theta=args.theta)
    return _report_output(report, config.fmt)


def _run_theta(args, config):
    if args.full:
        rng = SieveRange.symmetric(load_defaults()['scan']['full_bound'], config.segment_size)
    elif args.symmetric:
        rng = SieveRange.symmetric(args.bound, config.segment_size)
    else:
        rng = SieveRange.inclusive(1, args.bound, config.segment_size)
    return _report_output(theta_generates_scan(args.family, rng, config), config.fmt)


_COMMANDS = {'check-f': _run_check, 'check-g': _run_check, 'check-fbb': _run_check, 'check-g1d': _run_check,
             'check-cubic': _run_check, 'galois': _run_galois, 'newton': _run_newton, 'index': _run_index,
             'density': _run_density, 'prachar': lambda a, c: _report_output(prachar_report(a.m, a.k, a.x, c), c.fmt),
             'theta-scan': _run_theta}


def run(argv=None):
    """Execute one subcommand and return the exit code"""
    try:
        args = parse_cl(argv)
    except UsageError as e:
        sys.stderr.write(f'{e}\n')
        return 1
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1

    setup_logging(PROGRAM, level='WARNING' if args.quiet and not args.log_level else args.log_level)
    log = getLogger(__name__)
    try:
        overrides = dict(seed=args.seed, threads=args.threads, segment_size=getattr(args, 'segment_size', None),
                         symmetric=args.symmetric, fmt=args.fmt, quiet=args.quiet, timing=args.timing)
        config = RunConfig().deltafy(**{k: v for k, v in overrides.items() if v is not None})
        log.debug(f'{args.command}: {config}')
        out = _COMMANDS[args.command](args, config)
    except ValueError as e:
        log.error(f'{args.command}: {e}')
        return 1
    except CertificateConstructionError as e:
        log.error(f'{args.command}: certificate construction failed: {e}')
        return 1
    except Exception as e:
        log.debug('Internal error', exc_info=True)
        log.error(f'{args.command}: internal error: {e}')
        return 1

    code = 0
    if isinstance(out, tuple):
        out, code = out
    sys.stdout.write(out)
    return code


def main():
    sys.exit(run())
