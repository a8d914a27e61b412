#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

"""Run configuration for counting, constants and error-table workflows"""

import json
import logging

from semiprime_asymptotics.util import check_config_dict_empty

try:
    import yaml
except ImportError:
    yaml = None

CONFIG_VERSION = 1

DEFAULT_PRECISION = 40
DEFAULT_DIGITS = 20
DEFAULT_ORACLE_LIMIT = 10 ** 7
DEFAULT_SEGMENT_SIZE = 2 ** 18
DEFAULT_MEMORY_BUDGET = 2 * 2 ** 30

MIN_SEGMENT_SIZE = 2 ** 10
MIN_PRECISION = 30

OUTPUT_FORMATS = ('csv', 'json')


class ConfigError(ValueError):
    """Raised when a configuration could not be satisfied"""


sieve_init_args = [
    'segment_size',
    'memory_budget',
    'segmented',
    'threads',
]

init_args = [
    'precision',
    'digits',
    'oracle_limit',
    'output_format',
    'output_path',
    'threads',
    'sieve',
]


class SieveConfig(object):
    """Segment geometry and memory limits of the prime sieve

    segment_size counts odd entries per segment, so one segment spans
    2 * segment_size integers.
    """

    def __init__(self, segment_size=DEFAULT_SEGMENT_SIZE,
                 memory_budget=DEFAULT_MEMORY_BUDGET, segmented=True,
                 threads=1):
        self.segment_size = int(segment_size)
        self.memory_budget = int(memory_budget)
        self.segmented = bool(segmented)
        self.threads = int(threads)

        if self.segment_size < MIN_SEGMENT_SIZE:
            raise ConfigError('segment_size must be at least %s, got %s' %
                              (MIN_SEGMENT_SIZE, self.segment_size))
        if self.segment_size > self.memory_budget:
            raise ConfigError('segment_size %s exceeds memory_budget %s' %
                              (self.segment_size, self.memory_budget))
        if self.threads < 1:
            raise ConfigError('threads must be positive, got %s' %
                              self.threads)

    @classmethod
    def from_dict(cls, dct):
        """Load a SieveConfig from a dict"""
        dct = dict(dct)
        kwargs = {}
        for argname in sieve_init_args:
            if argname in dct:
                kwargs[argname] = dct.pop(argname)
        check_config_dict_empty(dct, 'sieve')
        return cls(**kwargs)

    def to_dict(self):
        """Save this SieveConfig to a dict compatible with from_dict"""
        return dict((argname, getattr(self, argname))
                    for argname in sieve_init_args)

    def __repr__(self):
        return '<%s segment_size=%s memory_budget=%s threads=%s>' % (
            type(self).__name__, self.segment_size, self.memory_budget,
            self.threads)


class RunConfig(object):
    """Container for run-wide settings and the SieveConfig

    All commands are deterministic given a RunConfig.
    """

    def __init__(self, **kwargs):
        self.log = self.get_logger('%s.%s' % (__name__, type(self).__name__))

        self.precision = int(kwargs.get('precision', DEFAULT_PRECISION))
        self.digits = int(kwargs.get('digits', DEFAULT_DIGITS))
        self.oracle_limit = int(kwargs.get('oracle_limit',
                                           DEFAULT_ORACLE_LIMIT))
        self.output_format = str(kwargs.get('output_format', 'csv'))
        self.output_path = kwargs.get('output_path')
        self.threads = int(kwargs.get('threads', 1))

        sieve = kwargs.get('sieve') or {}
        if isinstance(sieve, SieveConfig):
            self.sieve = sieve
        else:
            sieve = dict(sieve)
            sieve.setdefault('threads', self.threads)
            self.sieve = SieveConfig.from_dict(sieve)

        if self.precision < MIN_PRECISION:
            raise ConfigError('precision must be at least %s digits, got %s'
                              % (MIN_PRECISION, self.precision))
        if not 1 <= self.digits <= self.precision:
            raise ConfigError('digits must be between 1 and precision (%s), '
                              'got %s' % (self.precision, self.digits))
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError('output_format must be one of %s, got %r' %
                              (', '.join(OUTPUT_FORMATS), self.output_format))
        if self.oracle_limit < 1:
            raise ConfigError('oracle_limit must be positive')

    def get_logger(self, name):
        """Get a logger of the given name

        Override in subclasses to use a custom logging system
        """
        return logging.getLogger(name)

    @classmethod
    def from_dict(cls, dct):
        """Load a RunConfig object from a dict

        The dict is usually loaded from an user-supplied YAML or JSON file.
        A 'version' key is accepted and checked, other unknown keys are
        rejected.
        """
        dct = dict(dct)
        version = dct.pop('version', CONFIG_VERSION)
        if version != CONFIG_VERSION:
            raise ConfigError('Unsupported configuration version %r' %
                              (version, ))
        kwargs = {}
        for argname in init_args:
            if argname in dct:
                kwargs[argname] = dct.pop(argname)
        check_config_dict_empty(dct, 'run')
        return cls(**kwargs)

    def to_dict(self):
        """Save this RunConfig object to a dict compatible with from_dict"""
        dct = {'version': CONFIG_VERSION, 'sieve': self.sieve.to_dict()}
        for argname in set(init_args) - set(['sieve']):
            dct[argname] = getattr(self, argname)
        return dct

    def updated(self, **overrides):
        """Return a copy with the given non-None settings replaced"""
        dct = self.to_dict()
        sieve = dct['sieve']
        for key in ('segment_size', 'memory_budget', 'segmented'):
            value = overrides.pop(key, None)
            if value is not None:
                sieve[key] = value
        if overrides.get('threads') is not None:
            sieve['threads'] = overrides['threads']
        for key, value in overrides.items():
            if value is not None:
                dct[key] = value
                self.log.debug('Overriding %s with %r', key, value)
        return type(self).from_dict(dct)


def load_config_file(path):
    """Load a configuration dict from a YAML or JSON file

    Without PyYAML only JSON files can be used.
    """
    try:
        conffile = open(path)
    except IOError as e:
        raise ConfigError('Unable to open configuration file %s: %s' %
                          (path, e.strerror))
    with conffile:
        if yaml:
            try:
                confdict = yaml.safe_load(conffile)
            except yaml.YAMLError as e:
                raise ConfigError('Could not load %s: %s' % (path, e))
        else:
            try:
                confdict = json.load(conffile)
            except ValueError:
                raise ConfigError(
                    'Could not load %s. If it is a YAML file, you need '
                    'PyYAML installed.' % path)
    if confdict is None:
        confdict = {}
    if not isinstance(confdict, dict):
        raise ConfigError('Configuration file %s must contain a mapping' %
                          path)
    return confdict
