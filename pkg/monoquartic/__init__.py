from logging import getLogger

__version__ = '0.1'

from .intpoly import IntPoly, RatPoly, Factorization, factor_int, discriminant, resultant, rational_roots
from .modpoly import ModPoly, factor_modp, reduce, lift
from .montes import index_report, dedekind_test, newton_polygon, phi_development
from .quartic import QuarticShape, GaloisGroup, galois_group
from .families import (Certificate, CertificateConstructionError, Verdict, check_f, check_g, check_f_bb,
                       check_g_1d, check_resolvent_cubic)

getLogger(__name__).debug(f'monoquartic {__version__} loaded')
