"""The log F-norm and friends.

    ``||f||_log = integral of log(1 + |f|) dmu``

Norms come back as :class:`Finite` (a value with an error estimate) or
:class:`Infinite` (carrying the divergence witness from the
integrator). Membership in ``L_log`` is exactly "the norm is finite".

"""
import logging
import math
from collections import namedtuple

import numpy as np

from .core.integrands import Integrand
from .core.quadrature import Finite, integrate
from .exc import PreconditionError


log = logging.getLogger(__name__)


class Infinite(namedtuple('Infinite', ('witness',))):

    """A norm that diverges; ``witness`` is the integrator's reason."""

    __slots__ = ()

    finite = False

    def to_dict(self):
        return {'verdict': 'infinite', 'witness': self.witness.to_dict()}


ZERO_NORM = Finite(0.0, 0.0)


def as_norm(result):
    """Convert an integration result to a norm value."""
    if result.finite:
        return result
    return Infinite(result.reason)


def is_zero(f):
    return getattr(f, 'is_zero', False)


def lognorm(f, space):
    """``integral of log(1 + |f|) dmu``; exactly ``Finite(0)`` for ``f == 0``."""
    if is_zero(f):
        return ZERO_NORM
    return as_norm(integrate(Integrand.log1p(f), space))


def lognorm_nu(f, space, h):
    """``||f||_{log,nu}`` computed as ``integral of h * log(1 + |f|) dmu``."""
    if is_zero(f):
        return ZERO_NORM
    return as_norm(integrate(Integrand.log1p(f, weights=[h]), space))


def pnorm(f, space, p):
    """``(integral of |f|**p dmu) ** (1/p)`` for ``p >= 1``."""
    if p < 1:
        raise PreconditionError('p must be >= 1; got {0}'.format(p))
    if is_zero(f):
        return ZERO_NORM
    result = integrate(Integrand.of(f, p), space)
    if not result.finite:
        return Infinite(result.reason)
    value = max(result.value, 0.0)
    root = value ** (1.0 / p)
    # Worst-case spread of the p-th root over [value - err, value + err]
    err = (value + result.err) ** (1.0 / p) - root
    return Finite(root, err)


def distance(f, g, space):
    """The F-metric ``||f - g||_log``."""
    return lognorm(f - g, space)


def in_log_space(f, space):
    return lognorm(f, space).finite


def in_lp(f, space, p):
    return pnorm(f, space, p).finite


def combined_err(*values):
    return sum(v.err for v in values if v.finite)


def _slack(*values):
    # Rounding in the comparison itself
    total = sum(abs(v.value) for v in values if v.finite)
    return combined_err(*values) + 8 * np.finfo(float).eps * total


def at_most(lhs, *rhs):
    """``lhs <= sum(rhs)`` up to the combined error of all terms.

    An infinite right-hand side makes the comparison vacuously true;
    an infinite left-hand side with a finite right-hand side is false.

    """
    if not all(v.finite for v in rhs):
        return True
    if not lhs.finite:
        return False
    return lhs.value <= math.fsum(v.value for v in rhs) + _slack(lhs, *rhs)


class Inequality(namedtuple('Inequality', ('lhs', 'rhs', 'holds'))):

    __slots__ = ()

    def to_dict(self):
        return {
            'lhs': self.lhs.to_dict() if hasattr(self.lhs, 'to_dict') else self.lhs,
            'rhs': self.rhs.to_dict() if hasattr(self.rhs, 'to_dict') else self.rhs,
            'holds': self.holds,
        }


def sum_norms(*values):
    result = ZERO_NORM
    for v in values:
        if not v.finite:
            return v
        result = result.plus(v)
    return result


def product_norm_check(f, g, space):
    """``||f * g||_log <= ||f||_log + ||g||_log``."""
    lhs = lognorm(f * g, space)
    terms = lognorm(f, space), lognorm(g, space)
    return Inequality(lhs, sum_norms(*terms), at_most(lhs, *terms))


def lp_inclusion_check(f, space, p):
    """``integral of log(1+|f|) <= mu(Omega) log 2 + (1/p) integral of |f|**p``.

    Follows pointwise from ``log(1 + t) <= log 2 + t**p / p``, which is
    how the inclusion of ``L_p`` in ``L_log`` is tested.

    """
    lhs = lognorm(f, space)
    power = integrate(Integrand.of(f, p), space) if not is_zero(f) else ZERO_NORM
    if not power.finite:
        return Inequality(lhs, Infinite(power.reason), True)
    constant = Finite(space.mass, space.mass_err).scaled(math.log(2.0))
    rhs = constant.plus(power.scaled(1.0 / p))
    return Inequality(lhs, rhs, at_most(lhs, rhs))


# Axioms


AXIOMS = ('definite', 'scalar', 'vanishing', 'triangle')


class AxiomReport:

    """Pass/fail/vacuous counts per axiom, with failing witnesses."""

    def __init__(self):
        self.counts = {name: {'passed': 0, 'failed': 0, 'vacuous': 0} for name in AXIOMS}
        self.failures = []

    def record(self, axiom, outcome, trial=None, detail=None):
        self.counts[axiom][outcome] += 1
        if outcome == 'failed':
            self.failures.append({'axiom': axiom, 'trial': trial, 'detail': detail})

    @property
    def passed(self):
        return not self.failures

    @property
    def trials(self):
        return sum(self.counts['triangle'].values())

    def to_dict(self):
        return {'counts': self.counts, 'failures': self.failures, 'passed': self.passed}

    def __repr__(self):
        return 'AxiomReport(trials={0}, failures={1})'.format(self.trials, len(self.failures))


def _describe(value):
    return value.to_dict()


def check_axioms(norm, f, g, alpha, report, trial=None):
    """Check the four F-norm axioms on one draw."""
    norm_f = norm(f)

    # (i) nonzero f has a positive norm
    if is_zero(f):
        report.record('definite', 'vacuous', trial)
    elif norm_f.finite and not norm_f.value > norm_f.err:
        report.record('definite', 'failed', trial, {'norm': _describe(norm_f)})
    else:
        report.record('definite', 'passed', trial)

    # (ii) ||alpha f|| <= ||f|| for |alpha| <= 1
    norm_af = norm(f * alpha)
    if at_most(norm_af, norm_f):
        report.record('scalar', 'passed', trial)
    else:
        report.record('scalar', 'failed', trial, {
            'alpha': alpha, 'lhs': _describe(norm_af), 'rhs': _describe(norm_f)})

    # (iii) ||2**-k f|| decreases to below 1e-6 for some k <= 40
    if not norm_f.finite:
        report.record('vanishing', 'vacuous', trial)
    else:
        _check_vanishing(norm, f, norm_f, report, trial)

    # (iv) triangle inequality
    norm_g = norm(g)
    norm_sum = norm(f + g)
    if at_most(norm_sum, norm_f, norm_g):
        report.record('triangle', 'passed', trial)
    else:
        report.record('triangle', 'failed', trial, {
            'lhs': _describe(norm_sum), 'rhs': [_describe(norm_f), _describe(norm_g)]})


def _check_vanishing(norm, f, norm_f, report, trial):
    previous = norm_f
    for k in range(1, 41):
        current = norm(f * 2.0 ** -k)
        if not at_most(current, previous):
            report.record('vanishing', 'failed', trial, {
                'k': k, 'norm': _describe(current), 'previous': _describe(previous)})
            return
        if current.value < 1e-6:
            report.record('vanishing', 'passed', trial)
            return
        previous = current
    report.record('vanishing', 'failed', trial, {'k': 40, 'norm': _describe(previous)})


def axiom_suite(space, sampler, trials, norm=None):
    """Run the F-norm axioms over ``trials`` random draws.

    ``norm`` defaults to :func:`lognorm` on ``space``; pass another
    one-argument norm (e.g. the weighted norm) to check that instead.

    """
    if norm is None:
        def norm(f):
            return lognorm(f, space)
    report = AxiomReport()
    for trial in range(trials):
        f, g, alpha = sampler.function(), sampler.function(), sampler.scalar()
        check_axioms(norm, f, g, alpha, report, trial)
    log.info('Axiom suite over %d trials: %r', trials, report)
    return report


def equal_within_err(a, b, tol=None):
    """``|a - b| <= errs`` (plus ``tol``, default none) for finite values."""
    if not (a.finite and b.finite):
        return a.finite == b.finite
    tol = 0.0 if tol is None else tol
    return abs(a.value - b.value) <= _slack(a, b) + tol


class Residual(namedtuple('Residual', ('value', 'err', 'lhs', 'rhs'))):

    """``|lhs - rhs|`` between two norm values and their combined error."""

    __slots__ = ()

    @property
    def holds(self):
        return equal_within_err(self.lhs, self.rhs)

    def to_dict(self):
        return {
            'residual': self.value,
            'err': self.err,
            'lhs': self.lhs.to_dict(),
            'rhs': self.rhs.to_dict(),
            'holds': self.holds,
        }


def residual(lhs, rhs):
    if lhs.finite and rhs.finite:
        return Residual(abs(lhs.value - rhs.value), combined_err(lhs, rhs), lhs, rhs)
    return Residual(0.0 if lhs.finite == rhs.finite else math.inf, 0.0, lhs, rhs)
