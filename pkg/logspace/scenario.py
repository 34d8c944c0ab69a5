"""Scenario documents.

A scenario is a versioned JSON document naming a pair of measures and
the functions to check against them::

    {
        "version": 1,
        "name": "density_2x",
        "space": {"kind": "lebesgue", "domain": [0, 1]},
        "nu_density": {
            "segments": [
                {"interval": [0, 1], "form": "affine", "slope": 2, "intercept": 0}
            ]
        },
        "options": {"mode": "all", "seed": 0}
    }

Exactly one of ``h`` (the density of ``nu`` with respect to ``mu``) and
``nu_density`` (the density of ``nu`` itself) must be given. Numbers
may be written as JSON numbers or as rational strings like ``"1/25"``.
Unknown fields are errors; every error carries the path of the field
that caused it::

    >>> loads('{"version": 1, "name": "x", "space": {"kind": "lebesgue"}, "h": 1}')
    Traceback (most recent call last):
      ...
    logspace.exc.ScenarioError: h: Expected an object

Function specs are either ``{"segments": [...], "positive": bool}``,
``{"constant": c}`` on the space's domain or ``{"steps": [...]}`` (one
value per atom of an atomic space). Segment forms are ``const`` (``c``),
``affine`` (``slope``, ``intercept``), ``power`` (``c``, ``p``,
optional ``anchor``), ``expinv`` (``c``, optional ``a`` and ``anchor``)
and ``reciprocal`` (``of``: another form).

"""
import json
import logging
import os
from fractions import Fraction

import pkg_resources

from .components import ATOM, HOMOGENEOUS, MODES, Component, DecomposedSpace
from .core.forms import FORM_TYPES, Affine, Const, ExpInv, Power
from .core.functions import PiecewiseFn
from .core.settings import CHECKS_DEFAULTS, QUADRATURE_DEFAULTS
from .core.spaces import MeasureSpace
from .exc import LogspaceError, ScenarioError


log = logging.getLogger(__name__)


SCENARIO_VERSION = 1

SCENARIO_DIR = pkg_resources.resource_filename('logspace', 'scenarios')

TOLERANCE_SECTIONS = {
    'QUADRATURE': QUADRATURE_DEFAULTS,
    'CHECKS': CHECKS_DEFAULTS,
}


class _Reader:

    """A JSON value and the path that leads to it."""

    def __init__(self, value, path=''):
        self.value = value
        self.path = path

    def fail(self, message):
        raise ScenarioError(message, self.path or None)

    def _join(self, key):
        if isinstance(key, int):
            return '{0}[{1}]'.format(self.path, key)
        return '{0}.{1}'.format(self.path, key) if self.path else key

    def fields(self, required=(), optional=()):
        """Map field names to readers; missing required or unknown fields fail."""
        if not isinstance(self.value, dict):
            self.fail('Expected an object')
        unknown = set(self.value) - set(required) - set(optional)
        if unknown:
            self.fail('Unknown fields: {0}'.format(', '.join(sorted(unknown))))
        missing = [name for name in required if name not in self.value]
        if missing:
            self.fail('Missing fields: {0}'.format(', '.join(missing)))
        return {
            name: _Reader(value, self._join(name)) for name, value in self.value.items()
        }

    def items(self):
        if not isinstance(self.value, list):
            self.fail('Expected an array')
        return [_Reader(value, self._join(i)) for i, value in enumerate(self.value)]

    def number(self):
        value = self.value
        if isinstance(value, bool):
            self.fail('Expected a number; got a boolean')
        if isinstance(value, (int, float)):
            return float(value)
        if isinstance(value, str):
            try:
                return float(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError):
                self.fail('Not a number or rational: {0!r}'.format(value))
        self.fail('Expected a number')

    def integer(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            self.fail('Expected an integer')
        return self.value

    def boolean(self):
        if not isinstance(self.value, bool):
            self.fail('Expected true or false')
        return self.value

    def text(self):
        if not isinstance(self.value, str):
            self.fail('Expected a string')
        return self.value

    def choice(self, options):
        value = self.text()
        if value not in options:
            self.fail('Expected one of {0}; got {1!r}'.format(', '.join(options), value))
        return value

    def interval(self):
        items = self.items()
        if len(items) != 2:
            self.fail('An interval is [lo, hi]')
        lo, hi = (item.number() for item in items)
        if not hi > lo:
            self.fail('Empty interval [{0}, {1}]'.format(lo, hi))
        return lo, hi

    def build(self, factory, *args, **kwargs):
        """Call ``factory``, reporting library errors at this path."""
        try:
            return factory(*args, **kwargs)
        except LogspaceError as exc:
            if isinstance(exc, ScenarioError):
                raise
            self.fail(str(exc))


# Functions


def _read_form(reader, lo):
    fields = reader.value if isinstance(reader.value, dict) else {}
    kind = fields.get('form')
    if kind == 'reciprocal':
        parts = reader.fields(required=('form', 'of'))
        return _read_form(parts['of'], lo).reciprocal()
    if kind not in FORM_TYPES:
        _Reader(kind, reader._join('form')).choice(sorted(FORM_TYPES) + ['reciprocal'])
    if kind == Const.kind:
        parts = reader.fields(required=('form', 'c'))
        return Const(parts['c'].number())
    if kind == Affine.kind:
        parts = reader.fields(required=('form', 'slope', 'intercept'))
        return Affine(parts['slope'].number(), parts['intercept'].number())
    if kind == Power.kind:
        parts = reader.fields(required=('form', 'c', 'p'), optional=('anchor',))
        anchor = parts['anchor'].number() if 'anchor' in parts else lo
        return Power(parts['c'].number(), parts['p'].number(), anchor)
    parts = reader.fields(required=('form', 'c'), optional=('a', 'anchor'))
    anchor = parts['anchor'].number() if 'anchor' in parts else lo
    amplitude = parts['a'].number() if 'a' in parts else 1.0
    return ExpInv(parts['c'].number(), amplitude, anchor)


def read_function(reader, domain, positive=False):
    """Parse a function spec on ``domain``.

    ``positive=True`` requires (and asserts) a positive function.

    """
    spec = reader.value if isinstance(reader.value, dict) else None
    if spec is not None and 'constant' in spec:
        parts = reader.fields(required=('constant',))
        c = parts['constant'].number()
        if positive and not c > 0:
            parts['constant'].fail('Must be positive')
        return reader.build(PiecewiseFn.constant, c, domain)
    if spec is not None and 'steps' in spec:
        parts = reader.fields(required=('steps',))
        values = [item.number() for item in parts['steps'].items()]
        if not values:
            parts['steps'].fail('At least one step is required')
        if positive and not all(v > 0 for v in values):
            parts['steps'].fail('Steps must be positive')
        fn = reader.build(PiecewiseFn.steps, values)
    else:
        parts = reader.fields(required=('segments',), optional=('positive',))
        declared = parts['positive'].boolean() if 'positive' in parts else positive
        if positive and not declared:
            parts['positive'].fail('This function must be positive')
        segments = []
        for item in parts['segments'].items():
            if not isinstance(item.value, dict) or 'interval' not in item.value:
                item.fail('A segment needs an interval')
            lo, hi = _Reader(item.value['interval'], item._join('interval')).interval()
            body = {k: v for k, v in item.value.items() if k != 'interval'}
            segments.append((lo, hi, _read_form(_Reader(body, item.path), lo)))
        if not segments:
            parts['segments'].fail('At least one segment is required')
        fn = reader.build(PiecewiseFn.from_pieces, segments, positive=declared)
    if tuple(fn.domain) != tuple(domain):
        reader.fail('Domain {0} differs from the space domain {1}'.format(
            tuple(fn.domain), tuple(domain)))
    return fn


# Spaces


def _read_space(reader):
    fields = reader.value if isinstance(reader.value, dict) else {}
    kind = _Reader(fields.get('kind'), reader._join('kind')).choice(
        ('lebesgue', 'continuum', 'atomic'))
    if kind == 'lebesgue':
        parts = reader.fields(required=('kind',), optional=('domain',))
        domain = parts['domain'].interval() if 'domain' in parts else (0.0, 1.0)
        return {'kind': kind, 'domain': list(domain)}, MeasureSpace.lebesgue(domain)
    if kind == 'atomic':
        parts = reader.fields(required=('kind', 'weights'), optional=('labels',))
        weights = [item.number() for item in parts['weights'].items()]
        labels = [item.text() for item in parts['labels'].items()] if 'labels' in parts else None
        space = parts['weights'].build(MeasureSpace.atomic, weights, labels)
        return {'kind': kind, 'weights': weights, 'labels': list(space.labels)}, space
    parts = reader.fields(required=('kind', 'density'))
    density_reader = parts['density']
    density = read_function(density_reader, _peek_domain(density_reader), positive=True)
    space = density_reader.build(MeasureSpace.continuum, density)
    return {'kind': kind, 'density': density.to_dict()}, space


def _peek_domain(reader):
    """The domain a segment list spans, for specs that define their own."""
    value = reader.value
    if not isinstance(value, dict) or not isinstance(value.get('segments'), list):
        reader.fail('A density needs explicit segments')
    segments = reader.fields(required=('segments',), optional=('positive',))['segments'].items()
    if not segments:
        reader.fail('At least one segment is required')
    first, last = segments[0].value, segments[-1].value
    lo = _Reader(first.get('interval') if isinstance(first, dict) else None,
                 segments[0]._join('interval')).interval()[0]
    hi = _Reader(last.get('interval') if isinstance(last, dict) else None,
                 segments[-1]._join('interval')).interval()[1]
    return lo, hi


# Decompositions


def _restricted(space, lo, hi):
    return MeasureSpace.continuum(space.density.restrict(lo, hi))


def _read_decomposition(reader, mu, nu):
    if mu.is_atomic:
        reader.fail('Atomic spaces decompose into their atoms; no decomposition needed')
    mu_parts, nu_parts, printed = [], [], []
    edge = mu.domain.lo
    for item in reader.items():
        fields = item.value if isinstance(item.value, dict) else {}
        kind = _Reader(fields.get('kind'), item._join('kind')).choice((ATOM, HOMOGENEOUS))
        if kind == ATOM:
            parts = item.fields(required=('label', 'kind', 'mu', 'nu'))
            label = parts['label'].text()
            mu_weight, nu_weight = parts['mu'].number(), parts['nu'].number()
            mu_parts.append(item.build(
                Component, label, MeasureSpace.atomic([mu_weight], [label]), ATOM))
            nu_parts.append(item.build(
                Component, label, MeasureSpace.atomic([nu_weight], [label]), ATOM))
            printed.append({'label': label, 'kind': kind, 'mu': mu_weight, 'nu': nu_weight})
            continue
        parts = item.fields(required=('label', 'kind', 'interval', 'weight_label'))
        label = parts['label'].text()
        lo, hi = parts['interval'].interval()
        if lo != edge:
            parts['interval'].fail('Components must tile the domain; expected lo = {0}'.format(
                edge))
        edge = hi
        weight_label = parts['weight_label'].value
        if isinstance(weight_label, bool) or not isinstance(weight_label, (int, float, str)):
            parts['weight_label'].fail('Weight labels are numbers or strings')
        for spaces, space in ((mu_parts, mu), (nu_parts, nu)):
            piece = item.build(_restricted, space, lo, hi)
            spaces.append(item.build(Component, label, piece, HOMOGENEOUS, weight_label))
        printed.append({
            'label': label, 'kind': kind, 'interval': [lo, hi], 'weight_label': weight_label})
    if not printed:
        reader.fail('A decomposition needs at least one component')
    if edge != mu.domain.hi:
        reader.fail('Components must tile the domain; they stop at {0}'.format(edge))
    pair = (reader.build(DecomposedSpace, mu_parts), reader.build(DecomposedSpace, nu_parts))
    return printed, pair


# Options


def _read_options(reader):
    parts = reader.fields(optional=('mode', 'seed', 'tolerances'))
    mode = parts['mode'].choice(MODES) if 'mode' in parts else 'all'
    seed = parts['seed'].integer() if 'seed' in parts else 0
    tolerances = {}
    if 'tolerances' in parts:
        sections = parts['tolerances'].fields(optional=tuple(TOLERANCE_SECTIONS))
        for section, section_reader in sorted(sections.items()):
            names = section_reader.fields(optional=tuple(TOLERANCE_SECTIONS[section]))
            tolerances[section] = {
                name: _tolerance(value, TOLERANCE_SECTIONS[section][name])
                for name, value in sorted(names.items())
            }
    return mode, seed, tolerances


def _tolerance(reader, default):
    if isinstance(default, int):
        return reader.integer()
    return reader.number()


# Scenarios


class Scenario:

    """A parsed scenario.

    ``mu`` and ``nu`` are :class:`~logspace.core.spaces.MeasureSpace`
    instances and ``h`` is ``d(nu)/d(mu)``. ``decomposition`` is a pair
    of :class:`~logspace.components.DecomposedSpace` or ``None``.

    """

    def __init__(self, name, mu, nu, document, decomposition=None, test_functions=None,
                 mode='all', seed=0, tolerances=None):
        self.name = name
        self.mu = mu
        self.nu = nu
        self.document = document
        self.decomposition = decomposition
        self.test_functions = dict(test_functions or {})
        self.mode = mode
        self.seed = seed
        self.tolerances = dict(tolerances or {})

    @property
    def h(self):
        return self.mu.density_ratio(self.nu)

    def to_dict(self):
        return self.document

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return self.document == other.document

    def __repr__(self):
        return 'Scenario({0!r})'.format(self.name)


def parse(document):
    """Build a :class:`Scenario` from a decoded JSON document."""
    reader = _Reader(document)
    parts = reader.fields(
        required=('version', 'name', 'space'),
        optional=('description', 'h', 'nu_density', 'decomposition', 'test_functions',
                  'options'))
    version = parts['version'].integer()
    if version != SCENARIO_VERSION:
        parts['version'].fail('Unsupported version {0}; expected {1}'.format(
            version, SCENARIO_VERSION))
    name = parts['name'].text()
    printed = {'version': version, 'name': name}
    if 'description' in parts:
        printed['description'] = parts['description'].text()

    printed['space'], mu = _read_space(parts['space'])

    given = [key for key in ('h', 'nu_density') if key in parts]
    if len(given) != 1:
        reader.fail('Exactly one of h and nu_density is required')
    key = given[0]
    fn = read_function(parts[key], mu.domain, positive=True)
    printed[key] = fn.to_dict()
    if key == 'h':
        nu = parts[key].build(mu.with_density_ratio, fn)
    else:
        nu = parts[key].build(MeasureSpace, fn, atomic=mu.is_atomic, labels=mu.labels or None)

    decomposition = None
    if 'decomposition' in parts:
        printed['decomposition'], decomposition = _read_decomposition(
            parts['decomposition'], mu, nu)

    test_functions = {}
    if 'test_functions' in parts:
        fields = parts['test_functions'].value
        if not isinstance(fields, dict):
            parts['test_functions'].fail('Expected an object')
        readers = parts['test_functions'].fields(optional=tuple(fields))
        for function_id, function_reader in sorted(readers.items()):
            test_functions[function_id] = read_function(function_reader, mu.domain)
        printed['test_functions'] = {k: f.to_dict() for k, f in test_functions.items()}

    mode, seed, tolerances = 'all', 0, {}
    if 'options' in parts:
        mode, seed, tolerances = _read_options(parts['options'])
    printed['options'] = {'mode': mode, 'seed': seed}
    if tolerances:
        printed['options']['tolerances'] = tolerances

    log.debug('Parsed scenario %s', name)
    return Scenario(
        name, mu, nu, printed,
        decomposition=decomposition,
        test_functions=test_functions,
        mode=mode,
        seed=seed,
        tolerances=tolerances,
    )


def _reject_constant(name):
    raise ValueError('{0} is not allowed'.format(name))


def _unique_keys(pairs):
    keys = [key for key, _ in pairs]
    duplicates = sorted({key for key in keys if keys.count(key) > 1})
    if duplicates:
        raise ScenarioError('Duplicate fields: {0}'.format(', '.join(duplicates)))
    return dict(pairs)


def loads(text):
    try:
        document = json.loads(
            text, object_pairs_hook=_unique_keys, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ScenarioError('Invalid JSON: {0.msg} (line {0.lineno}, column {0.colno})'.format(
            exc))
    except ValueError as exc:
        raise ScenarioError('Invalid JSON: {0}'.format(exc))
    return parse(document)


def dumps(scenario):
    """Print ``scenario`` canonically; ``loads(dumps(s)) == s``."""
    return json.dumps(scenario.to_dict(), indent=2, sort_keys=True) + '\n'


def catalog():
    """Names of the scenarios shipped with logspace."""
    return sorted(
        os.path.splitext(name)[0] for name in os.listdir(SCENARIO_DIR)
        if name.endswith('.json'))


def load(name_or_path):
    """Load a scenario by catalog name or by file path."""
    path = name_or_path
    if not os.path.exists(path) and name_or_path in catalog():
        path = os.path.join(SCENARIO_DIR, '{0}.json'.format(name_or_path))
    try:
        with open(path) as fp:
            text = fp.read()
    except OSError as exc:
        raise ScenarioError('Cannot read scenario {0}: {1}'.format(name_or_path, exc.strerror))
    return loads(text)
