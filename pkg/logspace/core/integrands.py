"""Integrands built from piecewise functions.

Every integral in logspace has the shape::

    g = |w_1|**e_1 * ... * |w_n|**e_n * log(1 + |u_1 * ... * u_m|)

where the log factor is optional. Norms, masses, balance quantities and
the weighted norm are all instances::

    lognorm(f)        log(1 + |f|)
    lognorm_nu(f, h)  |h| * log(1 + |f|)
    weighted(f, h)    log(1 + |h * f|)
    pnorm(f, p)       |f|**p

Values are computed in the log domain so products like ``h * h**-1``
near an essential singularity of ``h`` stay exact.

Factors are anything with the :class:`~logspace.core.functions.PiecewiseFn`
evaluation protocol: ``domain``, ``knots``, ``log_abs(x)``,
``local(lo, hi)`` and ``asymptote(point, side)``.

"""
import numpy as np

from ..exc import DomainError
from .forms import ONE
from .functions import Interval


def _log_log1p(s):
    """``log(log(1 + exp(s)))``, accurate for very negative ``s``."""
    s = np.asarray(s, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(s < -30, s, np.log(np.logaddexp(0.0, s)))


class CallableFn:

    """Wrap a plain vectorized callable as an integrand factor.

    The asymptote at a ``singular`` point is unknown, which sends the
    integrator to its numeric tail heuristic there. Every other point is
    assumed regular.

    """

    def __init__(self, func, domain=(0.0, 1.0), breakpoints=(), singular=()):
        self.func = func
        self.domain = Interval(*domain)
        inner = sorted({float(b) for b in breakpoints} | {float(s) for s in singular})
        inner = [b for b in inner if self.domain.lo < b < self.domain.hi]
        self.knots = np.array([self.domain.lo] + inner + [self.domain.hi])
        self.singular = frozenset(float(s) for s in singular)

    def __call__(self, x):
        return self.func(np.asarray(x, dtype=float))

    def log_abs(self, x):
        with np.errstate(divide='ignore'):
            return np.log(np.abs(self(x)))

    def local(self, lo, hi):
        return lambda base, side, t: self.log_abs(base + side * np.asarray(t, dtype=float))

    def asymptote(self, point, side):
        return None if float(point) in self.singular else ONE

    def __repr__(self):
        return 'CallableFn({0!r})'.format(getattr(self.func, '__name__', self.func))


class Integrand:

    """``prod(|w| ** e) * log(1 + prod(|u|))``.

    Args:
        weights: ``(factor, exponent)`` pairs
        inner: factors inside the log; ``None`` means there's no log
            factor at all

    """

    def __init__(self, weights=(), inner=None, label=None):
        self.weights = tuple((factor, float(exponent)) for factor, exponent in weights)
        self.inner = None if inner is None else tuple(inner)
        self.label = label

    @classmethod
    def of(cls, f, exponent=1.0):
        """``|f| ** exponent``."""
        return cls([(f, exponent)], label='|f|^{0:g}'.format(exponent))

    @classmethod
    def log1p(cls, *inner, weights=()):
        """``prod(|w|) * log(1 + |u_1 * ... * u_m|)``."""
        return cls([(w, 1.0) for w in weights], inner, label='log(1+|f|)')

    @classmethod
    def from_callable(cls, func, domain=(0.0, 1.0), breakpoints=(), singular=()):
        return cls.of(CallableFn(func, domain, breakpoints, singular))

    def times(self, factor, exponent=1.0):
        return Integrand(self.weights + ((factor, exponent),), self.inner, self.label)

    @property
    def factors(self):
        return tuple(f for f, _ in self.weights) + (self.inner or ())

    @property
    def domain(self):
        domains = {tuple(f.domain) for f in self.factors}
        if len(domains) != 1:
            raise DomainError('Integrand factors have different domains: {0}'.format(domains))
        return Interval(*domains.pop())

    def knots(self, lo, hi):
        """Mandatory subdivision points in ``[lo, hi]``, ends included."""
        points = {float(lo), float(hi)}
        for factor in self.factors:
            points.update(float(k) for k in factor.knots if lo < k < hi)
        return np.array(sorted(points))

    # Evaluation

    def log_value(self, x):
        x = np.asarray(x, dtype=float)
        return self._combine(
            [f.log_abs(x) for f, _ in self.weights],
            None if self.inner is None else [f.log_abs(x) for f in self.inner],
            np.shape(x))

    def __call__(self, x):
        with np.errstate(over='ignore'):
            return np.exp(self.log_value(x))

    def local(self, lo, hi):
        """Log-domain evaluator ``(base, side, t)`` for a panel in ``[lo, hi]``."""
        weights = [(f.local(lo, hi), e) for f, e in self.weights]
        inner = None if self.inner is None else [f.local(lo, hi) for f in self.inner]

        def log_value(base, side, t):
            t = np.asarray(t, dtype=float)
            return self._combine(
                [fn(base, side, t) for fn, _ in weights],
                None if inner is None else [fn(base, side, t) for fn in inner],
                np.shape(t))

        return log_value

    def _combine(self, weight_logs, inner_logs, shape):
        total = np.zeros(shape)
        with np.errstate(invalid='ignore'):
            for log_abs, (_, exponent) in zip(weight_logs, self.weights):
                if exponent:
                    total = total + exponent * log_abs
            if inner_logs is not None:
                s = np.zeros(shape)
                for log_abs in inner_logs:
                    s = s + log_abs
                total = total + _log_log1p(s)
        return total

    # Structure

    def asymptote(self, point, side):
        """Leading behaviour of the integrand near ``point``; ``None`` if unknown."""
        result = ONE
        for factor, exponent in self.weights:
            asymptote = factor.asymptote(point, side)
            if asymptote is None:
                return None
            if exponent:
                result = result.times(asymptote.raised(exponent))
        if self.inner is not None:
            inner = ONE
            for factor in self.inner:
                asymptote = factor.asymptote(point, side)
                if asymptote is None:
                    return None
                inner = inner.times(asymptote)
            result = result.times(inner.log1p())
        return result

    def describe(self):
        parts = []
        for factor, exponent in self.weights:
            text = '|{0!r}|'.format(factor)
            parts.append(text if exponent == 1 else '{0}^{1:g}'.format(text, exponent))
        if self.inner is not None:
            parts.append('log(1+|{0}|)'.format('*'.join(repr(f) for f in self.inner) or '1'))
        return ' * '.join(parts) or '1'

    def __repr__(self):
        return 'Integrand({0})'.format(self.label or self.describe())
