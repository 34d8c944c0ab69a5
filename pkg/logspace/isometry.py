"""When are ``L_log(mu)`` and ``L_log(nu)`` isometric?

With ``h = d(nu)/d(mu)`` they're isometric iff ``integral h dmu`` equals
``mu(Omega)`` (condition C1). :func:`check_equivalences` evaluates the
equivalent forms of that condition side by side:

    - ``ii``: ``integral h dmu / mu(Omega) == 1``
    - ``iii``: ``integral h**-1 dnu / nu(Omega) == 1``
    - ``iv``: ``nu(Omega) == mu(Omega)``
    - ``v_paper``: ``S_> == S_<`` (normalized balance)
    - ``v_corrected``: ``B_> == B_<`` (unnormalized balance)
    - ``vi``: a measure-preserving map from ``mu`` onto ``nu`` exists

``v_paper`` is *not* equivalent to the others unless ``mu(h > 1)``
equals ``mu(h < 1)``; records flag the disagreement instead of hiding it.

    >>> from logspace.core.forms import Affine
    >>> from logspace.core.functions import PiecewiseFn
    >>> from logspace.core.spaces import MeasureSpace
    >>> report = region_split(
    ...     PiecewiseFn.from_pieces([(0, 1, Affine(2.0, 0.0))], positive=True),
    ...     MeasureSpace.lebesgue())
    >>> round(report.mass_gt, 12), round(report.s_gt, 12)
    (0.25, 0.5)

"""
import logging
import math
from collections import namedtuple

import numpy as np
from scipy import optimize

from .core.classify import invert_density
from .core.integrands import Integrand
from .core.quadrature import Finite, integrate
from .core.settings import checks_settings, eq_tol
from .exc import (
    InfiniteMassError,
    NotIsometricError,
    PreconditionError,
    RootFindingError,
)
from .fnorm import lognorm, pnorm, residual
from .transport import apply_J, build_transport


log = logging.getLogger(__name__)


class BalanceReport(namedtuple('BalanceReport', (
        'c1_ratio', 'mass_gt', 'mass_lt', 'mu_gt', 'mu_lt', 'mu_eq', 's_gt', 's_lt',
        'total', 'err'))):

    """Excess and deficit of ``h`` over the regions where it's above and below 1.

    ``mass_gt`` is ``B_> = integral over {h > 1} of (h - 1) dmu`` and
    ``s_gt = B_> / mu(h > 1)`` (0 when that region is null); likewise for
    ``lt``. ``err`` bounds the error of every mass in the report.

    """

    __slots__ = ()

    def to_dict(self):
        return dict(self._asdict())


def _level_regions(h, scan=None):
    """Split the domain into pieces labeled 'gt', 'lt' or 'eq' against 1."""
    scan = scan or checks_settings.get('root_scan')
    pieces = []
    for segment in h.segments:
        form = segment.form
        roots = form.roots(1.0, segment.lo, segment.hi)
        if roots is None:
            roots = _scan_roots(segment, scan)
        edges = [segment.lo] + sorted(roots) + [segment.hi]
        for a, b in zip(edges, edges[1:]):
            pieces.append((a, b, _label(form, a, b)))
    return pieces


def _label(form, a, b):
    c = form.constant_value
    if c is not None:
        if math.isclose(c, 1.0, rel_tol=1e-14):
            return 'eq'
        return 'gt' if c > 1 else 'lt'
    value = float(form.local_value(a, 1, np.array([0.5 * (b - a)]))[0])
    if value == 1:
        return 'eq'
    return 'gt' if value > 1 else 'lt'


def _scan_roots(segment, scan):
    """Roots of ``h - 1`` on a segment whose form has no closed-form solution."""
    lo, hi = segment.lo, segment.hi
    x = lo + (hi - lo) * np.arange(1, scan) / scan
    values = segment.form.value(x) - 1.0
    if not np.all(np.isfinite(values)):
        raise RootFindingError(
            'Cannot scan {0} for h == 1'.format(segment), segment=segment)

    def excess(point):
        return float(segment.form.value(np.array([point]))[0]) - 1.0

    roots = [float(p) for p, v in zip(x, values) if v == 0]
    for i in np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0):
        try:
            roots.append(optimize.brentq(excess, x[i], x[i + 1], xtol=1e-15))
        except (ValueError, RuntimeError) as exc:
            raise RootFindingError(
                'Root of h == 1 not found on {0}: {1}'.format(segment, exc),
                segment=segment)
    log.debug('Scanned %s for h == 1: %d roots', segment, len(roots))
    return roots


def _integral(g, space, interval=None):
    result = integrate(g, space, interval)
    if not result.finite:
        raise InfiniteMassError(
            'integral of {0!r} diverges: {1}'.format(g, result.reason.to_dict()))
    return result


def _ratio(h, space):
    """``integral h dmu / mu(Omega)`` as a :class:`Finite`."""
    if not h.positive:
        raise PreconditionError('h must be positive')
    integral = _integral(Integrand.of(h), space)
    mass = space.mass
    ratio = integral.value / mass
    err = (integral.err + abs(ratio) * space.mass_err) / mass
    return Finite(ratio, err)


def region_split(h, space):
    """Masses of ``h`` over ``{h > 1}``, ``{h < 1}`` and ``{h == 1}``."""
    if not h.positive:
        raise PreconditionError('h must be positive')
    sums = {'gt': [0.0, 0.0], 'lt': [0.0, 0.0], 'eq': [0.0, 0.0]}
    err = 0.0
    for a, b, label in _level_regions(h):
        mass = _integral(Integrand(), space, (a, b))
        integral = _integral(Integrand.of(h), space, (a, b))
        sums[label][0] += mass.value
        sums[label][1] += integral.value
        err += mass.err + integral.err
    mu_gt, h_gt = sums['gt']
    mu_lt, h_lt = sums['lt']
    mu_eq = sums['eq'][0]
    mass_gt = h_gt - mu_gt
    mass_lt = mu_lt - h_lt
    ratio = _ratio(h, space)
    return BalanceReport(
        c1_ratio=ratio.value,
        mass_gt=mass_gt,
        mass_lt=mass_lt,
        mu_gt=mu_gt,
        mu_lt=mu_lt,
        mu_eq=mu_eq,
        s_gt=mass_gt / mu_gt if mu_gt > 0 else 0.0,
        s_lt=mass_lt / mu_lt if mu_lt > 0 else 0.0,
        total=space.mass,
        err=err + ratio.err,
    )


class C1Result(namedtuple('C1Result', ('holds', 'ratio', 'err'))):

    __slots__ = ()

    def __bool__(self):
        return self.holds

    def to_dict(self):
        return dict(self._asdict())


def _is_one(value):
    return abs(value.value - 1.0) <= eq_tol() + value.err


def check_c1(h, space):
    """Condition C1: ``integral h dmu / mu(Omega) == 1``.

    Raises :class:`~logspace.exc.InfiniteMassError` if ``h`` isn't
    integrable (``nu`` isn't a finite measure).

    """
    ratio = _ratio(h, space)
    return C1Result(_is_one(ratio), ratio.value, ratio.err)


class Equivalences(namedtuple('Equivalences', (
        'ii', 'iii', 'iv', 'v_paper', 'v_corrected', 'vi', 'balance', 'inverse_ratio',
        'masses'))):

    __slots__ = ()

    VERDICTS = ('ii', 'iii', 'iv', 'v_paper', 'v_corrected', 'vi')

    @property
    def bundle_agrees(self):
        """``ii``, ``iii``, ``iv`` and ``v_corrected`` all agree.

        ``vi`` is left out: on atomic spaces equal masses don't give a
        measure-preserving map.

        """
        verdicts = {self.ii, self.iii, self.iv, self.v_corrected}
        return len(verdicts) == 1

    @property
    def discrepancy(self):
        """The normalized balance disagrees with C1."""
        return self.v_paper != self.ii

    def to_dict(self):
        d = {name: getattr(self, name) for name in self.VERDICTS}
        d.update({
            'balance': self.balance.to_dict(),
            'inverse_ratio': self.inverse_ratio.to_dict(),
            'masses': list(self.masses),
            'bundle_agrees': self.bundle_agrees,
            'discrepancy': self.discrepancy,
        })
        return d


def _transport_exists(mu, nu):
    try:
        build_transport(mu, nu)
    except NotIsometricError as exc:
        log.debug('No measure-preserving map: %s', exc)
        return False
    return True


def check_equivalences(mu, nu):
    """Evaluate every equivalent form of C1 for ``nu = h * mu``."""
    h = mu.density_ratio(nu)
    tol = eq_tol()
    balance = region_split(h, mu)
    ratio = Finite(balance.c1_ratio, balance.err)
    inverse_ratio = _ratio(invert_density(h), nu)
    mu_mass, nu_mass = mu.mass, nu.mass
    mass_err = mu.mass_err + nu.mass_err
    return Equivalences(
        ii=_is_one(ratio),
        iii=_is_one(inverse_ratio),
        iv=abs(nu_mass - mu_mass) <= tol + mass_err,
        v_paper=abs(balance.s_gt - balance.s_lt) <= tol + balance.err,
        v_corrected=abs(balance.mass_gt - balance.mass_lt) <= tol + balance.err,
        vi=_transport_exists(mu, nu),
        balance=balance,
        inverse_ratio=inverse_ratio,
        masses=(mu_mass, nu_mass),
    )


def lp_isometry_check(mu, nu, p, f):
    """``|| h**(-1/p) f ||_{p,nu}`` against ``|| f ||_{p,mu}``.

    ``f -> h**(-1/p) f`` is the standard surjective isometry from
    ``L_p(mu)`` onto ``L_p(nu)``.

    """
    h = mu.density_ratio(nu)
    image = h.abs_pow(-1.0 / p) * f
    return residual(pnorm(image, nu, p), pnorm(f, mu, p))


def isometry_residual(transport, f):
    """``| ||f||_{log,mu} - ||J f||_{log,nu} |`` for a measure-preserving map."""
    return residual(lognorm(apply_J(transport, f), transport.target),
                    lognorm(f, transport.source))
