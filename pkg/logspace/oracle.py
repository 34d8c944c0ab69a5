"""Independent ground truth for cross-checking the integrator.

Nothing here goes through :mod:`logspace.core.quadrature`: closed-form
integrals come from a small antiderivative catalog, :func:`riemann` is a
plain midpoint rule on a dense grid and :func:`exhaustive_match` tries
every permutation of a pair of atom weight lists.

    >>> round(closed_form_integral('log1p_c_over_x', {'c': 1}, (0, 1)).value, 12)
    1.38629436112
    >>> closed_form_integral('power', {'p': -0.5}, (0, 1))
    OracleResult(value=2.0, method=ClosedForm(formula='power'))
    >>> exhaustive_match([0.2, 0.3, 0.5], [0.5, 0.2, 0.3])
    OracleResult(value=Some((1, 2, 0)), method=Exhaustive(searched=4))
    >>> exhaustive_match([0.5, 0.5], [0.3, 0.7]).value
    Null

"""
import itertools
import logging
import math
from collections import namedtuple

import numpy as np

from .core.settings import checks_settings
from .exc import OracleRefusedError, PreconditionError, UnsupportedFormError
from .types import Null, Option, Some


log = logging.getLogger(__name__)


class ClosedForm(namedtuple('ClosedForm', ('formula',))):

    __slots__ = ()

    def to_dict(self):
        return {'method': 'closed_form', 'formula': self.formula}


class Riemann(namedtuple('Riemann', ('n',))):

    __slots__ = ()

    def to_dict(self):
        return {'method': 'riemann', 'n': self.n}


class Exhaustive(namedtuple('Exhaustive', ('searched',))):

    __slots__ = ()

    def to_dict(self):
        return {'method': 'exhaustive', 'searched': self.searched}


class OracleResult(namedtuple('OracleResult', ('value', 'method'))):

    __slots__ = ()

    def to_dict(self):
        d = self.method.to_dict()
        value = self.value
        if isinstance(value, Option):
            # A permutation or nothing
            value = list(value.unwrap()) if value else None
        d['value'] = value
        return d


# Closed forms
#
# Each entry maps an id to (antiderivative, parameter defaults, check).
# The antiderivative takes the parameters and a point; the check raises
# PreconditionError when the integral isn't proper on the interval.


def _x_log1p_c_over_x(c, x):
    return 0.0 if x == 0 else x * math.log1p(c / x)


def _log1p_c_over_x(params, x):
    c = params['c']
    return _x_log1p_c_over_x(c, x) + c * math.log(x + c)


def _check_log1p_c_over_x(params, lo, hi):
    if not params['c'] > 0 or lo < 0:
        raise PreconditionError('log(1 + c/x) needs c > 0 on [0, inf)')


def _log1p_cx(params, x):
    c = params['c']
    if c == 0:
        return 0.0
    y = c * x
    return (1 + y) * math.log1p(y) / c - x


def _check_log1p_cx(params, lo, hi):
    c = params['c']
    if not (1 + c * lo > 0 and 1 + c * hi > 0):
        raise PreconditionError('log(1 + c*x) needs 1 + c*x > 0 on the interval')


def _power(params, x):
    p = params['p']
    return params['c'] * x ** (p + 1) / (p + 1)


def _check_power(params, lo, hi):
    if not params['p'] > -1:
        raise PreconditionError('x**p is only integrable at 0 for p > -1')
    if lo < 0:
        raise PreconditionError('x**p is only catalogued on [0, inf)')


def _x_log_c(params, x):
    return math.log(params['c']) * x * x / 2


def _check_x_log_c(params, lo, hi):
    if not params['c'] > 0:
        raise PreconditionError('x*log(c) needs c > 0')


def _affine(params, x):
    return params['a'] * x * x / 2 + params['b'] * x


def _no_check(params, lo, hi):
    pass


CATALOG = {
    'log1p_c_over_x': (_log1p_c_over_x, {'c': 1.0}, _check_log1p_c_over_x),
    'log1p_cx': (_log1p_cx, {'c': 1.0}, _check_log1p_cx),
    'power': (_power, {'p': 0.0, 'c': 1.0}, _check_power),
    'x_log_c': (_x_log_c, {'c': 1.0}, _check_x_log_c),
    'affine': (_affine, {'a': 0.0, 'b': 0.0}, _no_check),
}


def closed_form_integral(form_id, params, interval):
    """Integrate a catalogued form over ``interval`` by its antiderivative.

    Raises :class:`~logspace.exc.UnsupportedFormError` for ids that
    aren't in :data:`CATALOG`.

    """
    try:
        antiderivative, defaults, check = CATALOG[form_id]
    except KeyError:
        raise UnsupportedFormError('No closed form for {0!r}'.format(form_id))
    unknown = set(params) - set(defaults)
    if unknown:
        raise PreconditionError('Unknown parameters for {0}: {1}'.format(
            form_id, ', '.join(sorted(unknown))))
    values = dict(defaults)
    values.update({name: float(value) for name, value in params.items()})
    lo, hi = (float(x) for x in interval)
    if hi < lo:
        raise PreconditionError('Empty interval: [{0}, {1}]'.format(lo, hi))
    check(values, lo, hi)
    value = antiderivative(values, hi) - antiderivative(values, lo)
    return OracleResult(value, ClosedForm(form_id))


# Midpoint rule


_CHUNK = 2 ** 16


def riemann(g, space, n=None, delta=0.0, tail=0.0):
    """Midpoint rule for ``integral g dmu`` with ``n`` panels.

    ``g`` is any vectorized callable. For integrands singular at the
    left end, pass ``delta`` to start the grid at ``lo + delta`` and
    ``tail`` to add a known bound for the skipped piece.

    Only continuum spaces are accepted; atomic integrals are exact sums
    already.

    """
    minimum = checks_settings.get('riemann_panels')
    n = minimum if n is None else int(n)
    if n < minimum:
        raise PreconditionError('The Riemann oracle needs at least {0} panels'.format(minimum))
    if space.is_atomic:
        raise PreconditionError('The Riemann oracle only handles continuum spaces')
    lo, hi = space.domain
    lo = lo + delta
    if not hi > lo:
        raise PreconditionError('delta leaves nothing to integrate')
    width = (hi - lo) / n
    partials = []
    for start in range(0, n, _CHUNK):
        x = lo + (np.arange(start, min(start + _CHUNK, n)) + 0.5) * width
        partials.append(float(np.sum(np.asarray(g(x), dtype=float) * space.density(x))))
    value = math.fsum(partials) * width + tail
    log.debug('Riemann oracle for %r: %r with %d panels', g, value, n)
    return OracleResult(value, Riemann(n))


# Atom matching


def exhaustive_match(weights_a, weights_b, tol=None):
    """Find ``sigma`` with ``a[i] == b[sigma[i]]`` by brute force.

    Returns an :class:`OracleResult` whose value is ``Some(sigma)`` for
    the first matching permutation in lexicographic order (so the
    identity wins when it works) or :const:`~logspace.types.Null`, and
    whose method records how many permutations were tried.

    Raises :class:`~logspace.exc.OracleRefusedError` when either list
    is longer than the ``CHECKS.oracle_max_atoms`` setting.

    """
    limit = checks_settings.get('oracle_max_atoms')
    if max(len(weights_a), len(weights_b)) > limit:
        raise OracleRefusedError('Refusing exhaustive search over more than {0} atoms'.format(
            limit))
    tol = checks_settings.get('atom_tol') if tol is None else tol
    if len(weights_a) != len(weights_b):
        return OracleResult(Null, Exhaustive(0))
    searched = 0
    for sigma in itertools.permutations(range(len(weights_a))):
        searched += 1
        if all(abs(a - weights_b[j]) <= tol for a, j in zip(weights_a, sigma)):
            log.debug('Exhaustive match after %d permutations: %s', searched, sigma)
            return OracleResult(Some(sigma), Exhaustive(searched))
    log.debug('No match in %d permutations', searched)
    return OracleResult(Null, Exhaustive(searched))
