#!/usr/bin/env python
"""expconfig.py - Experiment configuration files

Experiments read a flat INI file. Every command looks at the section named
after it, with ``[DEFAULT]`` supplying shared keys such as ``seed`` and
``out``::

    [DEFAULT]
    seed = 7

    [states-sweep]
    rho_max = 15
    rho_points = 150
    out = states.csv

Values passed on the command line override the file.
"""
import configparser

from reluinit import config


class ConfigError(ValueError):
    pass


#: keys every section may carry
COMMON_KEYS = frozenset(('seed', 'out'))


class ExperimentConfig(object):
    """Typed view of one command's section

    :param str command: section name
    :param dict values: raw string values of the section
    :param dict defaults: command defaults, also the set of known keys
    """
    def __init__(self, command, values=None, defaults=None):
        self._command = command
        self._defaults = dict(defaults or {})
        self._values = dict(values or {})
        known = set(self._defaults) | COMMON_KEYS
        unknown = sorted(set(self._values) - known)
        if unknown:
            raise ConfigError('unknown key(s) in [{0}]: {1}'.format(
                command, ', '.join(unknown)))

    @property
    def command(self):
        return self._command

    def _raw(self, key):
        if key in self._values:
            return self._values[key]
        if key in self._defaults:
            return self._defaults[key]
        raise ConfigError('[{0}] needs a value for {1!r}'.format(
            self._command, key))

    def _convert(self, key, func, what):
        raw = self._raw(key)
        if not isinstance(raw, str):
            return raw
        try:
            return func(raw.strip())
        except ValueError:
            raise ConfigError('[{0}] {1} = {2!r} is not {3}'.format(
                self._command, key, raw, what))

    def get_str(self, key):
        return str(self._raw(key)).strip()

    def get_int(self, key):
        return self._convert(key, int, 'an integer')

    def get_float(self, key):
        return self._convert(key, float, 'a number')

    def get_bool(self, key):
        def to_bool(text):
            lowered = text.lower()
            if lowered in configparser.ConfigParser.BOOLEAN_STATES:
                return configparser.ConfigParser.BOOLEAN_STATES[lowered]
            raise ValueError(text)
        return self._convert(key, to_bool, 'a boolean')

    def _get_list(self, key, func, what):
        def to_list(text):
            return [func(v.strip()) for v in text.split(',') if v.strip()]
        return list(self._convert(key, to_list, 'a list of ' + what))

    def get_int_list(self, key):
        return self._get_list(key, int, 'integers')

    def get_float_list(self, key):
        return self._get_list(key, float, 'numbers')

    def get_str_list(self, key):
        raw = self._raw(key)
        if not isinstance(raw, str):
            return list(raw)
        return [v.strip() for v in raw.split(';') if v.strip()]

    @property
    def seed(self):
        if 'seed' not in self._values:
            return config.DEFAULT_SEED
        value = self.get_int('seed')
        if value < 0:
            raise ConfigError('seed must be non negative')
        return value

    @property
    def out(self):
        if 'out' not in self._values:
            raise ConfigError('[{0}] needs an output path, set out = ... or '
                              'pass --out'.format(self._command))
        return self.get_str('out')

    def override(self, **values):
        """Copy with the given non None values replacing the file values"""
        merged = dict(self._values)
        merged.update(
            (k, v if isinstance(v, str) else str(v))
            for k, v in values.items() if v is not None
        )
        return ExperimentConfig(self._command, merged, self._defaults)

    def items(self):
        keys = sorted(set(self._defaults) | set(self._values))
        return [(k, self._values.get(k, self._defaults.get(k))) for k in keys]


def load_config(path, command, defaults=None):
    """Read the section of ``command`` from an INI file

    :param str path: config file path, None for defaults only
    :param str command: section name
    :param dict defaults: known keys with their default values
    :rtype: ExperimentConfig
    """
    values = {}
    if path:
        parser = configparser.ConfigParser(interpolation=None)
        try:
            with open(path) as fd:
                parser.read_file(fd, source=path)
        except (IOError, OSError) as err:
            raise ConfigError('cannot read config {0}: {1}'.format(path, err))
        except configparser.Error as err:
            raise ConfigError('malformed config {0}: {1}'.format(path, err))
        values.update(parser.defaults())
        if parser.has_section(command):
            values.update(
                (k, v) for k, v in parser.items(command)
            )
    return ExperimentConfig(command, values, defaults)


def experiment(command, path, defaults, seed=None, out=None):
    """Load a command's configuration and apply command line overrides

    :param str command: section name
    :param str path: config file, may be None
    :param dict defaults: known keys with their default values
    :param seed: ``--seed`` value, None keeps the file value
    :param out: ``--out`` value, None keeps the file value
    :rtype: ExperimentConfig
    """
    return load_config(path, command, defaults).override(seed=seed, out=out)
