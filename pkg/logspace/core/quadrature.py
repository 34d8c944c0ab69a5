"""Integration engine.

:func:`integrate` returns an :class:`IntegralResult`: either
:class:`Finite` with an error estimate or :class:`Divergent` with a
recorded witness.

Continuum integrals are computed panel by panel. Knots of every factor
and of the space's density are mandatory panel boundaries, so each
panel sees one closed form per factor. Regular panels go through
vectorized adaptive 7/15-point Gauss-Kronrod.

Panel ends where the integrand is unbounded are decided from the
integrand's :class:`~logspace.core.forms.Asymptote` before any
numerics:

    - not integrable: :class:`Divergent` with an :class:`AnalyticRule`
    - integrable: the power singularity is removed by the substitution
      ``t = w * u**m`` and the panel is integrated in geometric levels
      toward the end point
    - unknown: geometric levels in ``t``; if the last ``tail_window``
      increments don't shrink by ``tail_decay`` overall, the result is
      :class:`Divergent` with a :class:`RefinementGrowth` trace

Atomic integrals are exact weighted sums.

"""
import logging
import math
from collections import namedtuple

import numpy as np

from ..exc import IntegrationError
from .settings import Tolerances


log = logging.getLogger(__name__)


# Kronrod abscissae on [0, 1] in decreasing order with K15 weights; the
# G7 nodes are every other one starting at the second.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK, _XK[-2::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK, _WK[-2::-1]])
GAUSS_WEIGHTS = np.concatenate([_WG, _WG[-2::-1]])

_EPS = np.finfo(float).eps

# Offsets below this are too close to underflow to evaluate in a tail
_SMALLEST_OFFSET = 1e-280

# Cap on the tail substitution exponent
_MAX_SUBSTITUTION = 50.0


# Results


class IntegralResult:

    finite = False

    def plus(self, other):
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError


class Finite(IntegralResult, namedtuple('Finite', ('value', 'err'))):

    __slots__ = ()

    finite = True

    def plus(self, other):
        if not other.finite:
            return other
        return Finite(self.value + other.value, self.err + other.err)

    def minus(self, other):
        if not other.finite:
            return other
        return Finite(self.value - other.value, self.err + other.err)

    def scaled(self, k):
        return Finite(k * self.value, abs(k) * self.err)

    def to_dict(self):
        return {'verdict': 'finite', 'value': self.value, 'err': self.err}


class Divergent(IntegralResult, namedtuple('Divergent', ('reason',))):

    __slots__ = ()

    def plus(self, other):
        return self

    minus = plus

    def scaled(self, k):
        return self

    def to_dict(self):
        return {'verdict': 'divergent', 'witness': self.reason.to_dict()}


class AnalyticRule(namedtuple('AnalyticRule', ('text',))):

    """Closed-form comparison that proves divergence."""

    __slots__ = ()

    def to_dict(self):
        return {'rule': 'analytic', 'text': self.text}


class RefinementGrowth(namedtuple('RefinementGrowth', ('trace',))):

    """Tail increments that failed to contract."""

    __slots__ = ()

    def to_dict(self):
        return {'rule': 'refinement', 'trace': list(self.trace)}


ZERO_RESULT = Finite(0.0, 0.0)


# Kernel


def gauss_kronrod(log_g, lo, hi):
    """Apply the G7/K15 pair to every panel ``[lo[i], hi[i]]`` at once.

    ``log_g`` maps an array of points to the log of the (nonnegative)
    integrand. Returns ``(estimates, errors, points)``; ``points`` is
    ``None`` unless some value wasn't finite, in which case it holds the
    offending points.

    """
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center[:, None] + half[:, None] * NODES
    with np.errstate(over='ignore', invalid='ignore'):
        values = np.exp(log_g(x.ravel())).reshape(x.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        return None, None, x[bad]
    kronrod = half * (values @ KRONROD_WEIGHTS)
    gauss = half * (values @ GAUSS_WEIGHTS)
    mean = 0.5 * (values @ KRONROD_WEIGHTS)
    resasc = half * (np.abs(values - mean[:, None]) @ KRONROD_WEIGHTS)
    err = np.abs(kronrod - gauss)
    with np.errstate(divide='ignore', invalid='ignore'):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc > 0) & (err > 0), scaled, err)
    err = np.maximum(err, 50 * _EPS * kronrod)
    return kronrod, err, None


def _checked(result, where):
    values, errs, bad = result
    if bad is not None:
        raise IntegrationError('Integrand is not finite', point=float(where(bad[0])))
    return values, errs


def adaptive(log_g, a, b, abs_target, tolerances, where=lambda t: t):
    """Adaptive G7/K15 of ``exp(log_g)`` over ``[a, b]``.

    Panels whose error exceeds their fair share of the target are
    bisected together until the total error meets
    ``max(abs_target, rel_tol * |value| / 2)`` or the panel limit is
    reached. ``where`` maps integration variables back to domain points
    for error messages.

    """
    lo, hi = np.array([float(a)]), np.array([float(b)])
    values, errs = _checked(gauss_kronrod(log_g, lo, hi), where)
    while True:
        total = math.fsum(values)
        err = float(errs.sum())
        target = max(abs_target, 0.5 * tolerances.rel_tol * abs(total))
        if err <= target:
            break
        room = tolerances.panel_limit - len(values)
        if room <= 0:
            log.warning(
                'Panel limit reached on [%s, %s]: err=%.3g target=%.3g',
                where(a), where(b), err, target)
            break
        split = np.flatnonzero(errs > target / len(errs))
        if len(split) > room:
            split = split[np.argsort(errs[split])[::-1][:room]]
        mid = 0.5 * (lo[split] + hi[split])
        if np.any((mid <= lo[split]) | (mid >= hi[split])):
            log.warning('Panels too narrow to split near %s', where(mid[0]))
            break
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_values, new_errs = _checked(gauss_kronrod(log_g, new_lo, new_hi), where)
        keep = np.ones(len(values), dtype=bool)
        keep[split] = False
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        values = np.concatenate([values[keep], new_values])
        errs = np.concatenate([errs[keep], new_errs])
    return Finite(total, err)


# Singular ends


class _End(namedtuple('_End', ('kind', 'asymptote'))):

    __slots__ = ()

    REGULAR = 'regular'
    ANALYTIC = 'analytic'
    NUMERIC = 'numeric'


def _classify_end(integrand, point, side):
    asymptote = integrand.asymptote(point, side)
    if asymptote is None:
        return _End(_End.NUMERIC, None)
    if not asymptote.integrable:
        text = 'integrand ~ {behaviour} near x={point!r} is not integrable'.format(
            behaviour=asymptote.describe(), point=point)
        return Divergent(AnalyticRule(text))
    if not asymptote.bounded:
        return _End(_End.ANALYTIC, asymptote)
    return _End(_End.REGULAR, asymptote)


def substitution_exponent(asymptote):
    # t = w * u**m turns t**p into u**(m * (p + 1) - 1)
    if asymptote is None or asymptote.rate != 0 or asymptote.power <= -1:
        return 1.0
    return min(_MAX_SUBSTITUTION, max(1.0, 2.0 / (asymptote.power + 1.0)))


def _tail(log_g, base, side, width, end, budget, tolerances):
    """Integral of ``g(base + side * t)`` for ``t`` in ``(0, width]``."""
    m = substitution_exponent(end.asymptote)
    log_scale = math.log(width * m)

    def log_h(u):
        with np.errstate(divide='ignore', invalid='ignore'):
            return log_g(base, side, width * u ** m) + log_scale + (m - 1) * np.log(u)

    def where(u):
        return base + side * width * u ** m

    level_budget = budget / tolerances.tail_levels
    trace = []
    total, err = [], 0.0
    converged = False
    upper = 1.0
    for level in range(tolerances.tail_levels):
        lower = 0.5 * upper
        if width * lower ** m < _SMALLEST_OFFSET:
            break
        piece = adaptive(log_h, lower, upper, level_budget, tolerances, where)
        trace.append(piece.value)
        total.append(piece.value)
        err += piece.err
        upper = lower
        if level >= 2 and piece.value <= 1e-3 * level_budget:
            converged = True
            break

    if end.kind == _End.NUMERIC and not converged:
        window = tolerances.tail_window
        if len(trace) >= window and trace[-1] > 0:
            if trace[-window] / trace[-1] < tolerances.tail_decay:
                log.info(
                    'Tail increments toward x=%r are not contracting; declaring divergence',
                    base)
                return Divergent(RefinementGrowth(tuple(trace)))

    remainder = 0.0
    if len(trace) >= 2 and trace[-2] > 0:
        ratio = min(trace[-1] / trace[-2], 0.999)
        remainder = trace[-1] * ratio / (1.0 - ratio)
    err += abs(remainder) * (1e-2 if not converged else 1.0)
    log.debug(
        'Tail toward x=%r: %d levels, m=%g, remainder=%.3g', base, len(trace), m, remainder)
    return Finite(math.fsum(total) + remainder, err)


def _integrate_panel(integrand, a, b, budget, tolerances):
    left = _classify_end(integrand, a, 1)
    if not isinstance(left, _End):
        return left
    right = _classify_end(integrand, b, -1)
    if not isinstance(right, _End):
        return right
    log_g = integrand.local(a, b)
    left_singular = left.kind != _End.REGULAR
    right_singular = right.kind != _End.REGULAR
    if not (left_singular or right_singular):
        return adaptive(
            lambda t: log_g(a, 1, t), 0.0, b - a, budget, tolerances, lambda t: a + t)
    if left_singular and right_singular:
        mid = 0.5 * (a + b)
        result = _tail(log_g, a, 1, mid - a, left, 0.5 * budget, tolerances)
        return result.plus(_tail(log_g, b, -1, b - mid, right, 0.5 * budget, tolerances))
    if left_singular:
        return _tail(log_g, a, 1, b - a, left, budget, tolerances)
    return _tail(log_g, b, -1, b - a, right, budget, tolerances)


# Entry point


def integrate(g, space, interval=None, tolerances=None):
    """Integrate the nonnegative integrand ``g`` against ``space``.

    Args:
        g: an :class:`~logspace.core.integrands.Integrand`
        space: a :class:`~logspace.core.spaces.MeasureSpace`
        interval: optional ``(lo, hi)`` restricting the integral; an
            empty interval gives ``Finite(0, 0)``
        tolerances: a :class:`~logspace.core.settings.Tolerances`;
            defaults to the current settings

    """
    tolerances = tolerances or Tolerances.current()
    if space.is_atomic:
        result = _integrate_atoms(g, space, interval)
    else:
        result = _integrate_continuum(g, space, interval, tolerances)
    if result.finite and tolerances.fault:
        result = Finite(result.value * (1.0 + tolerances.fault), result.err)
    return result


def _integrate_atoms(g, space, interval):
    points = space.atom_points
    weights = np.asarray(space.weights)
    if interval is not None:
        lo, hi = interval
        mask = (points >= lo) & (points <= hi)
        points, weights = points[mask], weights[mask]
    if not len(points):
        return ZERO_RESULT
    values = g(points)
    infinite = np.flatnonzero(~np.isfinite(values))
    if len(infinite):
        i = int(points[infinite[0]])
        return Divergent(AnalyticRule('integrand is infinite on atom {0}'.format(
            space.labels[i])))
    return Finite(math.fsum(weights * values), 0.0)


def _integrate_continuum(g, space, interval, tolerances):
    integrand = g.times(space.density)
    lo, hi = interval if interval is not None else space.domain
    lo, hi = max(float(lo), space.domain.lo), min(float(hi), space.domain.hi)
    if not hi > lo:
        return ZERO_RESULT
    knots = integrand.knots(lo, hi)
    panels = list(zip(knots[:-1], knots[1:]))
    budget = tolerances.abs_tol / (2 * len(panels))
    result = ZERO_RESULT
    for a, b in panels:
        piece = _integrate_panel(integrand, float(a), float(b), budget, tolerances)
        if not piece.finite:
            log.debug('Divergent on [%s, %s]: %s', a, b, piece.reason)
            return piece
        result = result.plus(piece)
    log.debug('%r over [%s, %s]: %s in %d panels', g, lo, hi, result, len(panels))
    return result
