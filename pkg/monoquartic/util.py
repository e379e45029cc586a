import functools
import json
import logging.config
import os
from fractions import Fraction
from hashlib import md5
from importlib import resources

import yaml

SEED_ENV_VAR = 'MQ_SEED'


def _config_path(fname):
    return resources.files('monoquartic').joinpath('config', fname)


def setup_logging(name, level=None):
    path = _config_path('logging.yaml')
    if path.is_file():
        config = yaml.safe_load(path.read_text())
    else:
        return
    # postprocess loggers dict
    # keys are program names values are either
    #   1) a level for the log of the program
    #   2) a dict of log names and levels
    #   3) a dict of log names and dicts describing how to configure the corresponding Logger instance.
    #  See https://docs.python.org/3/library/logging.config.html#logging-config-dictschema
    cfg = config['loggers'][name]  # extract one we care about
    if isinstance(cfg, str):
        config['loggers'] = {name: {'level': cfg.upper()}}
    else:
        loggers = {}
        for k, v in cfg.items():
            loggers[k] = {'level': v.upper()} if isinstance(v, str) else v
        config['loggers'] = loggers
    if level is not None:
        config['loggers'].setdefault('monoquartic', {})['level'] = level.upper()

    logging.config.dictConfig(config)

    return logging.getLogger(name)


@functools.lru_cache(maxsize=None)
def load_defaults():
    """Numeric defaults from config/defaults.yaml, read once per process."""
    return yaml.safe_load(_config_path('defaults.yaml').read_text())


def resolve_seed(seed=None):
    """MQ_SEED beats an explicit seed, which beats the packaged default."""
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise ValueError(f'{SEED_ENV_VAR} must be an integer, got {env!r}')
    if seed is not None:
        return int(seed)
    return int(load_defaults()['seed'])


def hasher(v, pass_none=False):
    if v is None and pass_none:
        return None
    if v is None:
        v = '___python_None'
    return md5(str(v).encode()).hexdigest()


def exact_str(x):
    """Decimal-string form for exact quantities: ints as '229', rationals as '3/8'."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f'{x.numerator}/{x.denominator}'
    return str(int(x))


def display_float(x, digits=None):
    digits = digits or load_defaults()['display']['significant_digits']
    return f'{float(x):.{digits}g}'


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + '\n'


class SettingsMixin:
    """Settings objects compare and hash by the values named in ``_settings``."""
    _settings = tuple()

    @property
    def _hash_data(self):
        hash_data = ((k, hasher(getattr(self, k), pass_none=True)) for k in self._settings)
        return tuple(sorted(hash_data, key=lambda x: x[0]))

    def __hash__(self):
        return int(hasher(self._hash_data), 16)

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return False
        return self._hash_data == other._hash_data

    def __str__(self):
        return f"{self.__class__.__name__}: {self.digest}\n  {self.settings_dict()}"

    @property
    def digest(self):
        return hasher(self._hash_data)

    def settings_dict(self, omit_none=True):
        return {k: getattr(self, k) for k in self._settings if not (getattr(self, k) is None and omit_none)}

    def deltafy(self, **changes):
        """Return a copy with the given settings replaced"""
        d = self.settings_dict(omit_none=False)
        d.update(changes)
        return type(self)(**d)


class RunConfig(SettingsMixin):
    _settings = ('seed', 'threads', 'segment_size', 'symmetric', 'fmt', 'quiet', 'timing')

    def __init__(self, seed=None, threads=1, segment_size=None, symmetric=False, fmt='human', quiet=False,
                 timing=False):
        if fmt not in ('human', 'json', 'csv'):
            raise ValueError(f'Unknown output format {fmt!r}')
        if threads is None or int(threads) < 1:
            raise ValueError(f'threads must be >= 1, got {threads}')
        self.seed = resolve_seed(seed)
        self.threads = int(threads)
        self.segment_size = int(segment_size or load_defaults()['sieve']['segment_size'])
        if self.segment_size < 1:
            raise ValueError('segment_size must be positive')
        self.symmetric = bool(symmetric)
        self.fmt = fmt
        self.quiet = bool(quiet)
        self.timing = bool(timing)
