"""Settings for logspace.

Settings live in a module-level dict seeded from :data:`DEFAULTS`. A
local settings file--the django-local-settings variety, INI sections
with JSON values--can be merged in by calling :func:`init_settings`::

    from logspace.settings import init_settings
    init_settings('local.cfg', section='dev')

Sub-packages read their own slice of the settings through
:class:`PrefixedSettings`::

    >>> quadrature = PrefixedSettings('QUADRATURE', {'abs_tol': 1e-10})
    >>> quadrature.get('abs_tol')
    1e-10
    >>> quadrature.get('nope', default='fallback')
    'fallback'

Lookups are live, so :func:`override_settings` applies to instances
created before the override.

"""
import copy
import functools
import logging.config
import os
import pkg_resources
from contextlib import contextmanager

from local_settings import NO_DEFAULT, load_and_check_settings
from local_settings.settings import DottedAccessDict


LOGSPACE_PACKAGE_DIR = pkg_resources.resource_filename('logspace', '')

SETTINGS_FILE_ENV_VAR = 'LOGSPACE_SETTINGS_FILE'


DEFAULTS = {
    'LOGGING': {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'verbose': {
                'style': '{',
                'format': '[{asctime}] {levelname} {name}:{lineno} {message}',
                'datefmt': '%d/%b/%Y %H:%M:%S',
            },
        },
        'handlers': {
            'console': {
                'class': 'logging.StreamHandler',
                'formatter': 'verbose',
                'level': 'WARNING',
            },
            'null': {
                'class': 'logging.NullHandler',
            },
        },
        'loggers': {
            'logspace': {
                'handlers': ['console'],
                'level': 'WARNING',
                'propagate': False,
            },
        },
    },
}


_settings = copy.deepcopy(DEFAULTS)


def init_settings(file_name=None, section=None, prompt=False, quiet=True, configure_logging=True):
    """Initialize settings, optionally merging a local settings file.

    If ``file_name`` isn't passed, the ``LOGSPACE_SETTINGS_FILE``
    environment variable is consulted. Either may name the section after
    a hash: ``local.cfg#test``. A missing file isn't an error; the
    defaults are used as is.

    Returns the settings dict.

    """
    file_name = file_name or os.environ.get(SETTINGS_FILE_ENV_VAR)
    if file_name and '#' in file_name:
        file_name, file_section = file_name.split('#', 1)
        section = section or file_section or None
    settings = copy.deepcopy(DEFAULTS)
    settings['LOGSPACE_PACKAGE_DIR'] = LOGSPACE_PACKAGE_DIR
    if file_name and os.path.exists(file_name):
        settings.update(load_and_check_settings(
            settings, file_name=file_name, section=section, prompt=prompt, quiet=quiet))
    _settings.clear()
    _settings.update(settings)
    if configure_logging:
        logging.config.dictConfig(_settings['LOGGING'])
    return _settings


def get_settings():
    return _settings


def get_setting(name, default=NO_DEFAULT, settings=None):
    """Get setting for ``name``, falling back to ``default`` if passed.

    ``name`` is a dotted path like 'QUADRATURE.abs_tol' or 'X.Y.0';
    it's traversed by :class:`local_settings.settings.DottedAccessDict`.

    If the setting isn't found and no ``default`` is passed, a
    ``KeyError`` is raised.

    """
    if settings is None:
        settings = _settings
    if not isinstance(settings, DottedAccessDict):
        settings = DottedAccessDict(settings)
    return settings.get_dotted(name, default)


class PrefixedSettings:

    """Read-only settings for a given ``prefix``.

    Args:
        prefix: An upper case setting name such as "QUADRATURE"
        defaults: A dict of defaults for the prefix

    Lookup order is: project settings for ``prefix``, then
    ``defaults``, then the ``default`` arg.

    """

    def __init__(self, prefix, defaults=None, settings=None):
        self.__prefix = prefix
        self.__defaults = DottedAccessDict(defaults or {})
        self.__settings = settings

    def get(self, name, default=NO_DEFAULT):
        qualified_name = '{prefix}.{name}'.format(prefix=self.__prefix, name=name)
        settings = self.__settings if self.__settings is not None else _settings
        try:
            return get_setting(qualified_name, settings=settings)
        except KeyError:
            return self.__defaults.get_dotted(name, default=default)

    def __getitem__(self, key):
        return PrefixedSettings.get(self, key, NO_DEFAULT)


@contextmanager
def _overridden(overrides):
    saved = {name: copy.deepcopy(_settings[name]) for name in overrides if name in _settings}
    try:
        for name, value in overrides.items():
            current = _settings.get(name)
            if isinstance(current, dict) and isinstance(value, dict):
                merged = copy.deepcopy(current)
                merged.update(value)
                _settings[name] = merged
            else:
                _settings[name] = value
        yield _settings
    finally:
        for name in overrides:
            if name in saved:
                _settings[name] = saved[name]
            else:
                _settings.pop(name, None)


class override_settings:

    """Temporarily override settings.

    Works as a context manager or as a decorator on functions and
    ``TestCase`` classes (in which case ``setUp``/``tearDown`` wrap each
    test)::

        with override_settings(QUADRATURE={'abs_tol': 1e-12}):
            ...

    Dict-valued sections are merged with the current section rather
    than replacing it.

    """

    def __init__(self, **overrides):
        self.overrides = overrides
        self._context = None

    def __enter__(self):
        self._context = _overridden(self.overrides)
        return self._context.__enter__()

    def __exit__(self, *exc_info):
        return self._context.__exit__(*exc_info)

    def __call__(self, obj):
        if isinstance(obj, type):
            return self._decorate_class(obj)

        @functools.wraps(obj)
        def wrapper(*args, **kwargs):
            with override_settings(**self.overrides):
                return obj(*args, **kwargs)

        return wrapper

    def _decorate_class(self, cls):
        overrides = self.overrides
        original_set_up = cls.setUp
        original_tear_down = cls.tearDown

        def setUp(test_self):
            test_self._settings_override = _overridden(overrides)
            test_self._settings_override.__enter__()
            original_set_up(test_self)

        def tearDown(test_self):
            try:
                original_tear_down(test_self)
            finally:
                test_self._settings_override.__exit__(None, None, None)

        cls.setUp = setUp
        cls.tearDown = tearDown
        return cls
