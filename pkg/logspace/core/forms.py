"""Closed-form segment functions.

Each segment of a :class:`~logspace.core.functions.PiecewiseFn` carries
one form from this catalog:

    - :class:`Const` ``c``
    - :class:`Affine` ``slope * x + intercept`` (absolute ``x``)
    - :class:`Power` ``c * (x - anchor) ** p``
    - :class:`ExpInv` ``a * exp(c / (x - anchor))``

The anchor of a :class:`Power` or :class:`ExpInv` is the ``lo`` of the
segment it was declared on and it stays put when the segment is split,
so refinement never changes values.

Reciprocals, products, sums and absolute powers of forms are kept as
exact composite forms (:class:`Reciprocal`, :class:`Product`,
:class:`Sum`, :class:`AbsPow`). :func:`multiply` and :func:`add` fold
combinations that stay inside the catalog::

    >>> multiply(Power(2.0, 0.5, 0.0), Power(0.5, -0.5, 0.0))
    Const(c=1.0)
    >>> multiply(ExpInv(-1.0), ExpInv(1.0))
    Const(c=1.0)
    >>> add(Const(1.0), Affine(2.0, 0.5))
    Affine(slope=2.0, intercept=1.5)

Every form can describe its leading behaviour near a point with an
:class:`Asymptote`. That's what the integrator uses to decide
integrability of singular endpoints without numerics.

"""
import math
from collections import namedtuple

import numpy as np

from ..exc import ClassificationError, PreconditionError


def _close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _pow(value, exponent):
    if value == 0:
        if exponent > 0:
            return 0.0
        if exponent < 0:
            return math.inf
        return 1.0
    if math.isinf(value):
        return math.inf if exponent > 0 else (0.0 if exponent < 0 else 1.0)
    return value ** exponent


def _inverse(value):
    if value == 0:
        return math.inf
    if math.isinf(value):
        return 0.0
    return 1.0 / value


class Asymptote(namedtuple('Asymptote', ('rate', 'power', 'logs'))):

    """Leading behaviour ``C * exp(rate/t) * t**power * log(1/t)**logs``.

    ``t`` is the distance to the point being approached. An identically
    zero function has ``rate == -inf`` (:data:`ZERO`); a function with a
    finite nonzero limit is :data:`ONE`.

        >>> Asymptote(0.0, -0.5, 0.0).integrable
        True
        >>> Asymptote(1.0, 0.0, 0.0).log1p()
        Asymptote(rate=0.0, power=-1.0, logs=0.0)
        >>> Asymptote(1.0, 0.0, 0.0).log1p().integrable
        False

    """

    __slots__ = ()

    @property
    def is_zero(self):
        return self.rate == -math.inf

    def times(self, other):
        if self.is_zero or other.is_zero:
            return ZERO
        return Asymptote(
            self.rate + other.rate, self.power + other.power, self.logs + other.logs)

    def raised(self, exponent):
        if self.is_zero:
            if exponent > 0:
                return ZERO
            raise PreconditionError('Negative power of a vanishing function')
        return Asymptote(self.rate * exponent, self.power * exponent, self.logs * exponent)

    def log1p(self):
        """Behaviour of ``log(1 + |g|)`` given the behaviour of ``g``."""
        if self.is_zero:
            return ZERO
        if self.rate > 0:
            # log(exp(rate/t)) == rate/t
            return Asymptote(0.0, -1.0, 0.0)
        if self.rate < 0 or self.power > 0:
            return self
        if self.power < 0:
            return Asymptote(0.0, 0.0, 1.0)
        if self.logs > 0:
            # log(log(1/t)) grows slower than any power
            return Asymptote(0.0, 0.0, 0.0)
        return self

    @property
    def growth_key(self):
        return (round(self.rate, 12), -round(self.power, 12), round(self.logs, 12))

    @property
    def bounded(self):
        if self.is_zero or self.rate < 0:
            return True
        if self.rate > 0:
            return False
        if _close(self.power, 0.0):
            return self.logs <= 0
        return self.power > 0

    @property
    def integrable(self):
        if self.is_zero or self.rate < 0:
            return True
        if self.rate > 0:
            return False
        if _close(self.power, -1.0):
            return self.logs < -1
        return self.power > -1

    def describe(self):
        if self.is_zero:
            return '0'
        parts = []
        if self.rate:
            parts.append('exp({0:g}/t)'.format(self.rate))
        if self.power:
            parts.append('t^{0:g}'.format(self.power))
        if self.logs:
            parts.append('log(1/t)^{0:g}'.format(self.logs))
        return '*'.join(parts) or 'const'


ONE = Asymptote(0.0, 0.0, 0.0)
ZERO = Asymptote(-math.inf, 0.0, 0.0)


class SegmentForm:

    __slots__ = ()

    #: Name used in scenario documents; composites have none.
    kind = None

    def __eq__(self, other):
        return type(self) is type(other) and tuple.__eq__(self, other)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((type(self).__name__,) + tuple(self))

    def value(self, x):
        raise NotImplementedError

    def log_abs(self, x):
        with np.errstate(divide='ignore'):
            return np.log(np.abs(self.value(x)))

    def sign(self, x):
        return np.sign(self.value(x))

    def local_value(self, base, side, t):
        """Value at ``base + side * t`` with the offset ``t`` kept exact."""
        return self.value(base + side * np.asarray(t, dtype=float))

    def local_log_abs(self, base, side, t):
        with np.errstate(divide='ignore'):
            return np.log(np.abs(self.local_value(base, side, t)))

    @property
    def fixed_sign(self):
        """Sign of the value when it never changes; else ``None``."""
        return None

    def asymptote(self, point):
        """Leading behaviour approaching ``point``; ``None`` if unknown."""
        raise NotImplementedError

    def bounds(self, lo, hi):
        """Exact ``(inf, sup)`` of ``|value|`` over the open segment."""
        raise NotImplementedError

    def trend(self, lo, hi):
        """Monotonicity of ``|value|`` over the segment: 1, -1, 0 or ``None``."""
        raise NotImplementedError

    def is_positive(self, lo, hi):
        raise NotImplementedError

    def roots(self, level, lo, hi):
        """Solutions of ``value == level`` inside ``(lo, hi)``.

        Returns ``None`` when the form has no closed-form solution.

        """
        return None

    @property
    def constant_value(self):
        return None

    @property
    def is_zero(self):
        return self.constant_value == 0

    def reciprocal(self):
        return Reciprocal(self)

    def scaled(self, k):
        return multiply(Const(k), self)

    def to_dict(self, lo):
        raise ClassificationError(
            '{0} has no scenario representation'.format(type(self).__name__))

    def describe(self):
        return repr(self)


class Const(SegmentForm, namedtuple('Const', ('c',))):

    __slots__ = ()

    kind = 'const'

    def value(self, x):
        return np.full(np.shape(x), float(self.c))

    def log_abs(self, x):
        v = math.log(abs(self.c)) if self.c else -math.inf
        return np.full(np.shape(x), v)

    def local_log_abs(self, base, side, t):
        return self.log_abs(t)

    @property
    def fixed_sign(self):
        return int(np.sign(self.c))

    def asymptote(self, point):
        return ONE if self.c else ZERO

    def bounds(self, lo, hi):
        return abs(self.c), abs(self.c)

    def trend(self, lo, hi):
        return 0

    def is_positive(self, lo, hi):
        return self.c > 0

    def roots(self, level, lo, hi):
        return []

    @property
    def constant_value(self):
        return float(self.c)

    def reciprocal(self):
        if not self.c:
            raise PreconditionError('Reciprocal of zero')
        return Const(1.0 / self.c)

    def scaled(self, k):
        return Const(k * self.c)

    def to_dict(self, lo):
        return {'form': self.kind, 'c': self.c}

    def describe(self):
        return '{0:g}'.format(self.c)


class Affine(SegmentForm, namedtuple('Affine', ('slope', 'intercept'))):

    __slots__ = ()

    kind = 'affine'

    def at(self, x):
        return self.slope * x + self.intercept

    def value(self, x):
        return self.slope * np.asarray(x, dtype=float) + self.intercept

    def local_value(self, base, side, t):
        start = np.where(self._vanishes_at(base), 0.0, self.at(base))
        return start + side * self.slope * np.asarray(t, dtype=float)

    def _vanishes_at(self, point):
        scale = np.abs(self.slope * point) + abs(self.intercept)
        return np.abs(self.at(point)) <= 1e-14 * np.maximum(scale, 1e-300)

    def asymptote(self, point):
        if not self.slope and not self.intercept:
            return ZERO
        if self._vanishes_at(point):
            return Asymptote(0.0, 1.0, 0.0) if self.slope else ZERO
        return ONE

    def bounds(self, lo, hi):
        a, b = self.at(lo), self.at(hi)
        if a * b < 0:
            return 0.0, max(abs(a), abs(b))
        return min(abs(a), abs(b)), max(abs(a), abs(b))

    def trend(self, lo, hi):
        if not self.slope:
            return 0
        a, b = self.at(lo), self.at(hi)
        if a * b < 0:
            return None
        sign = 1 if (a + b) > 0 else -1
        return sign * (1 if self.slope > 0 else -1)

    def is_positive(self, lo, hi):
        a, b = self.at(lo), self.at(hi)
        return a >= 0 and b >= 0 and (a > 0 or b > 0)

    def roots(self, level, lo, hi):
        if not self.slope:
            return []
        x = (level - self.intercept) / self.slope
        return [x] if lo < x < hi else []

    @property
    def constant_value(self):
        return float(self.intercept) if not self.slope else None

    def scaled(self, k):
        return Affine(k * self.slope, k * self.intercept)

    def to_dict(self, lo):
        return {'form': self.kind, 'slope': self.slope, 'intercept': self.intercept}

    def describe(self):
        return '{0:g}*x{1:+g}'.format(self.slope, self.intercept)


class Power(SegmentForm, namedtuple('Power', ('c', 'p', 'anchor'))):

    __slots__ = ()

    kind = 'power'

    def __new__(cls, c, p, anchor=0.0):
        return super().__new__(cls, c, p, anchor)

    def value(self, x):
        return self._value_at_offset(np.asarray(x, dtype=float) - self.anchor)

    def log_abs(self, x):
        return self._log_abs_at_offset(np.asarray(x, dtype=float) - self.anchor)

    def _value_at_offset(self, t):
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            return self.c * np.power(t, self.p)

    def _log_abs_at_offset(self, t):
        if not self.c:
            return np.full(np.shape(t), -math.inf)
        with np.errstate(divide='ignore', invalid='ignore'):
            return math.log(abs(self.c)) + self.p * np.log(t)

    def local_value(self, base, side, t):
        return self._value_at_offset((base - self.anchor) + side * np.asarray(t, dtype=float))

    def local_log_abs(self, base, side, t):
        return self._log_abs_at_offset((base - self.anchor) + side * np.asarray(t, dtype=float))

    def sign(self, x):
        return np.full(np.shape(x), np.sign(self.c))

    @property
    def fixed_sign(self):
        return int(np.sign(self.c))

    def asymptote(self, point):
        if not self.c:
            return ZERO
        if _close(point, self.anchor, 1e-15):
            return Asymptote(0.0, float(self.p), 0.0)
        return ONE

    def _end_values(self, lo, hi):
        values = []
        for x in (lo, hi):
            t = x - self.anchor
            values.append(abs(self.c) * _pow(t, self.p) if t > 0 else
                          abs(self.c) * _pow(0.0, self.p))
        return values

    def bounds(self, lo, hi):
        if not self.c:
            return 0.0, 0.0
        a, b = self._end_values(lo, hi)
        return min(a, b), max(a, b)

    def trend(self, lo, hi):
        if not self.c or not self.p:
            return 0
        return 1 if self.p > 0 else -1

    def is_positive(self, lo, hi):
        return self.c > 0 and self.anchor <= lo

    def roots(self, level, lo, hi):
        if not self.c or not self.p:
            return []
        ratio = level / self.c
        if ratio <= 0:
            return []
        x = self.anchor + ratio ** (1.0 / self.p)
        return [x] if lo < x < hi else []

    @property
    def constant_value(self):
        if not self.c:
            return 0.0
        return float(self.c) if not self.p else None

    def reciprocal(self):
        if not self.c:
            raise PreconditionError('Reciprocal of zero')
        return Power(1.0 / self.c, -self.p, self.anchor)

    def scaled(self, k):
        return Power(k * self.c, self.p, self.anchor)

    def to_dict(self, lo):
        d = {'form': self.kind, 'c': self.c, 'p': self.p}
        if self.anchor != lo:
            d['anchor'] = self.anchor
        return d

    def describe(self):
        return '{0:g}*(x-{1:g})^{2:g}'.format(self.c, self.anchor, self.p)


class ExpInv(SegmentForm, namedtuple('ExpInv', ('c', 'a', 'anchor'))):

    __slots__ = ()

    kind = 'expinv'

    def __new__(cls, c, a=1.0, anchor=0.0):
        return super().__new__(cls, c, a, anchor)

    def value(self, x):
        return self._value_at_offset(np.asarray(x, dtype=float) - self.anchor)

    def log_abs(self, x):
        return self._log_abs_at_offset(np.asarray(x, dtype=float) - self.anchor)

    def _value_at_offset(self, t):
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            return self.a * np.exp(self.c / t)

    def _log_abs_at_offset(self, t):
        if not self.a:
            return np.full(np.shape(t), -math.inf)
        with np.errstate(divide='ignore', invalid='ignore'):
            return math.log(abs(self.a)) + self.c / t

    def local_value(self, base, side, t):
        return self._value_at_offset((base - self.anchor) + side * np.asarray(t, dtype=float))

    def local_log_abs(self, base, side, t):
        return self._log_abs_at_offset((base - self.anchor) + side * np.asarray(t, dtype=float))

    def sign(self, x):
        return np.full(np.shape(x), np.sign(self.a))

    @property
    def fixed_sign(self):
        return int(np.sign(self.a))

    def asymptote(self, point):
        if not self.a:
            return ZERO
        if _close(point, self.anchor, 1e-15):
            return Asymptote(float(self.c), 0.0, 0.0)
        return ONE

    def _end_value(self, x):
        t = x - self.anchor
        if t > 0:
            exponent = self.c / t
            return math.inf if exponent > 709 else abs(self.a) * math.exp(exponent)
        if self.c > 0:
            return math.inf
        return 0.0 if self.c < 0 else abs(self.a)

    def bounds(self, lo, hi):
        a, b = self._end_value(lo), self._end_value(hi)
        return min(a, b), max(a, b)

    def trend(self, lo, hi):
        if not self.a or not self.c:
            return 0
        return -1 if self.c > 0 else 1

    def is_positive(self, lo, hi):
        return self.a > 0 and self.anchor <= lo

    def roots(self, level, lo, hi):
        if not self.a or not self.c:
            return []
        ratio = level / self.a
        if ratio <= 0 or ratio == 1:
            return []
        t = self.c / math.log(ratio)
        if t <= 0:
            return []
        x = self.anchor + t
        return [x] if lo < x < hi else []

    @property
    def constant_value(self):
        if not self.a:
            return 0.0
        return float(self.a) if not self.c else None

    def reciprocal(self):
        if not self.a:
            raise PreconditionError('Reciprocal of zero')
        return ExpInv(-self.c, 1.0 / self.a, self.anchor)

    def scaled(self, k):
        return ExpInv(self.c, k * self.a, self.anchor)

    def to_dict(self, lo):
        d = {'form': self.kind, 'c': self.c}
        if self.a != 1:
            d['a'] = self.a
        if self.anchor != lo:
            d['anchor'] = self.anchor
        return d

    def describe(self):
        return '{0:g}*exp({1:g}/(x-{2:g}))'.format(self.a, self.c, self.anchor)


class Reciprocal(SegmentForm, namedtuple('Reciprocal', ('base',))):

    """Exact reciprocal of a form without a folded closed form."""

    __slots__ = ()

    def value(self, x):
        with np.errstate(divide='ignore'):
            return 1.0 / self.base.value(x)

    def log_abs(self, x):
        return -self.base.log_abs(x)

    def local_value(self, base, side, t):
        with np.errstate(divide='ignore'):
            return 1.0 / self.base.local_value(base, side, t)

    def local_log_abs(self, base, side, t):
        return -self.base.local_log_abs(base, side, t)

    @property
    def fixed_sign(self):
        return self.base.fixed_sign

    def sign(self, x):
        return self.base.sign(x)

    def asymptote(self, point):
        inner = self.base.asymptote(point)
        return None if inner is None else inner.raised(-1)

    def bounds(self, lo, hi):
        inf, sup = self.base.bounds(lo, hi)
        return _inverse(sup), _inverse(inf)

    def trend(self, lo, hi):
        trend = self.base.trend(lo, hi)
        return None if trend is None else -trend

    def is_positive(self, lo, hi):
        return self.base.is_positive(lo, hi)

    def roots(self, level, lo, hi):
        if not level:
            return []
        return self.base.roots(1.0 / level, lo, hi)

    @property
    def constant_value(self):
        c = self.base.constant_value
        return None if not c else 1.0 / c

    def reciprocal(self):
        return self.base

    def to_dict(self, lo):
        return {'form': 'reciprocal', 'of': self.base.to_dict(lo)}

    def describe(self):
        return '1/({0})'.format(self.base.describe())


class AbsPow(SegmentForm, namedtuple('AbsPow', ('base', 'exponent'))):

    """``|base| ** exponent``."""

    __slots__ = ()

    def value(self, x):
        with np.errstate(over='ignore'):
            return np.exp(self.log_abs(x))

    def local_value(self, base, side, t):
        with np.errstate(over='ignore'):
            return np.exp(self.local_log_abs(base, side, t))

    def local_log_abs(self, base, side, t):
        return self._raise(self.base.local_log_abs(base, side, t))

    def _raise(self, log_base):
        # 0 * -inf
        with np.errstate(invalid='ignore'):
            out = self.exponent * log_base
        return np.where(np.isneginf(log_base) & (self.exponent == 0), 0.0, out)

    @property
    def fixed_sign(self):
        return 1

    def log_abs(self, x):
        return self._raise(self.base.log_abs(x))

    def sign(self, x):
        return np.ones(np.shape(x))

    def asymptote(self, point):
        inner = self.base.asymptote(point)
        return None if inner is None else inner.raised(self.exponent)

    def bounds(self, lo, hi):
        inf, sup = self.base.bounds(lo, hi)
        if self.exponent >= 0:
            return _pow(inf, self.exponent), _pow(sup, self.exponent)
        return _pow(sup, self.exponent), _pow(inf, self.exponent)

    def trend(self, lo, hi):
        trend = self.base.trend(lo, hi)
        if trend is None:
            return None
        return trend * (1 if self.exponent > 0 else -1 if self.exponent < 0 else 0)

    def is_positive(self, lo, hi):
        return self.base.is_positive(lo, hi)

    def roots(self, level, lo, hi):
        if level <= 0 or not self.exponent or not self.base.is_positive(lo, hi):
            return None
        return self.base.roots(level ** (1.0 / self.exponent), lo, hi)

    @property
    def constant_value(self):
        c = self.base.constant_value
        return None if c is None else _pow(abs(c), self.exponent)

    def reciprocal(self):
        return abs_power(self.base, -self.exponent)

    def describe(self):
        return '|{0}|^{1:g}'.format(self.base.describe(), self.exponent)


class Product(SegmentForm, namedtuple('Product', ('factors',))):

    __slots__ = ()

    def value(self, x):
        with np.errstate(over='ignore'):
            return self.sign(x) * np.exp(self.log_abs(x))

    def local_value(self, base, side, t):
        x = base + side * np.asarray(t, dtype=float)
        with np.errstate(over='ignore'):
            return self.sign(x) * np.exp(self.local_log_abs(base, side, t))

    def local_log_abs(self, base, side, t):
        total = np.zeros(np.shape(t))
        with np.errstate(invalid='ignore'):
            for factor in self.factors:
                total = total + factor.local_log_abs(base, side, t)
        return total

    @property
    def fixed_sign(self):
        signs = [f.fixed_sign for f in self.factors]
        return None if None in signs else int(np.prod(signs))

    def log_abs(self, x):
        total = np.zeros(np.shape(x))
        with np.errstate(invalid='ignore'):
            for factor in self.factors:
                total = total + factor.log_abs(x)
        return total

    def sign(self, x):
        sign = np.ones(np.shape(x))
        for factor in self.factors:
            sign = sign * factor.sign(x)
        return sign

    def asymptote(self, point):
        result = ONE
        for factor in self.factors:
            asymptote = factor.asymptote(point)
            if asymptote is None:
                return None
            result = result.times(asymptote)
        return result

    def _common_trend(self, lo, hi):
        direction = 0
        for factor in self.factors:
            trend = factor.trend(lo, hi)
            if trend is None or (trend and direction and trend != direction):
                return None
            direction = direction or trend
        return direction

    def bounds(self, lo, hi):
        if self._common_trend(lo, hi) is None:
            raise ClassificationError(
                'Unsupported form combination on [{lo}, {hi}): {form}'.format(
                    lo=lo, hi=hi, form=self.describe()))
        inf, sup = 1.0, 1.0
        for factor in self.factors:
            f_inf, f_sup = factor.bounds(lo, hi)
            if (inf == 0 and math.isinf(f_inf)) or (math.isinf(inf) and f_inf == 0):
                raise ClassificationError('Indeterminate product on [{lo}, {hi})'.format(
                    lo=lo, hi=hi))
            if (sup == 0 and math.isinf(f_sup)) or (math.isinf(sup) and f_sup == 0):
                raise ClassificationError('Indeterminate product on [{lo}, {hi})'.format(
                    lo=lo, hi=hi))
            inf *= f_inf
            sup *= f_sup
        return inf, sup

    def trend(self, lo, hi):
        return self._common_trend(lo, hi)

    def is_positive(self, lo, hi):
        return all(f.is_positive(lo, hi) for f in self.factors)

    @property
    def constant_value(self):
        value = 1.0
        for factor in self.factors:
            c = factor.constant_value
            if c is None:
                return None
            value *= c
        return value

    def reciprocal(self):
        result = Const(1.0)
        for factor in self.factors:
            result = multiply(result, factor.reciprocal())
        return result

    def describe(self):
        return '*'.join('({0})'.format(f.describe()) for f in self.factors)


class Sum(SegmentForm, namedtuple('Sum', ('terms',))):

    __slots__ = ()

    def value(self, x):
        return self._total(term.value(x) for term in self.terms)

    def local_value(self, base, side, t):
        return self._total(term.local_value(base, side, t) for term in self.terms)

    def _total(self, values):
        total = 0.0
        with np.errstate(invalid='ignore'):
            for value in values:
                total = total + value
        return total

    @property
    def fixed_sign(self):
        signs = {t.fixed_sign for t in self.terms}
        return signs.pop() if len(signs) == 1 else None

    def asymptote(self, point):
        leading = []
        for term in self.terms:
            asymptote = term.asymptote(point)
            if asymptote is None:
                return None
            if not asymptote.is_zero:
                leading.append((term, asymptote))
        if not leading:
            return ZERO
        top = max(a.growth_key for _, a in leading)
        dominant = [(t, a) for t, a in leading if a.growth_key == top]
        if len(dominant) == 1:
            return dominant[0][1]
        signs = {t.fixed_sign for t, _ in dominant}
        if None not in signs and len(signs) == 1:
            return dominant[0][1]
        if top == ONE.growth_key:
            # Finite limits; they cancel only if they sum to zero
            values = [float(t.value(np.array([point]))[0]) for t, _ in dominant]
            limit = math.fsum(values)
            if math.isfinite(limit) and abs(limit) > 1e-12 * sum(abs(v) for v in values):
                return ONE
        return None

    def bounds(self, lo, hi):
        trends = {t.trend(lo, hi) for t in self.terms} - {0}
        if not self.is_positive(lo, hi) or None in trends or len(trends) > 1:
            raise ClassificationError(
                'Unsupported form combination on [{lo}, {hi}): {form}'.format(
                    lo=lo, hi=hi, form=self.describe()))
        inf = sum(t.bounds(lo, hi)[0] for t in self.terms)
        sup = sum(t.bounds(lo, hi)[1] for t in self.terms)
        return inf, sup

    def trend(self, lo, hi):
        if not self.is_positive(lo, hi):
            return None
        trends = {t.trend(lo, hi) for t in self.terms} - {0}
        if None in trends or len(trends) > 1:
            return None
        return trends.pop() if trends else 0

    def is_positive(self, lo, hi):
        return all(t.is_positive(lo, hi) for t in self.terms)

    @property
    def constant_value(self):
        values = [t.constant_value for t in self.terms]
        return None if None in values else sum(values)

    def describe(self):
        return ' + '.join('({0})'.format(t.describe()) for t in self.terms)


def _factors(form):
    return form.factors if isinstance(form, Product) else (form,)


def multiply(a, b):
    """Product of two forms, folded where the catalog allows."""
    ca, cb = a.constant_value, b.constant_value
    if ca is not None and cb is not None:
        return Const(ca * cb)
    if ca == 0 or cb == 0:
        return Const(0.0)
    if ca is not None:
        return b if ca == 1 else _scale(b, ca)
    if cb is not None:
        return a if cb == 1 else _scale(a, cb)
    if isinstance(a, Power) and isinstance(b, Power) and a.anchor == b.anchor:
        product = Power(a.c * b.c, a.p + b.p, a.anchor)
        return Const(product.c) if _close(product.p, 0.0) else product
    if isinstance(a, ExpInv) and isinstance(b, ExpInv) and a.anchor == b.anchor:
        product = ExpInv(a.c + b.c, a.a * b.a, a.anchor)
        return Const(product.a) if _close(product.c, 0.0) else product
    if a == b.reciprocal() or b == a.reciprocal():
        return Const(1.0)
    factors = list(_factors(a))
    for factor in _factors(b):
        for i, existing in enumerate(factors):
            folded = _fold(existing, factor)
            if folded is not None:
                factors[i] = folded
                break
        else:
            factors.append(factor)
    factors = [f for f in factors if f.constant_value != 1]
    if not factors:
        return Const(1.0)
    if len(factors) == 1:
        return factors[0]
    return Product(tuple(factors))


def _fold(a, b):
    """Fold two factors if the result stays a single catalog form."""
    if a.constant_value is not None or b.constant_value is not None:
        return multiply(a, b)
    if isinstance(a, Power) and isinstance(b, Power) and a.anchor == b.anchor:
        return multiply(a, b)
    if isinstance(a, ExpInv) and isinstance(b, ExpInv) and a.anchor == b.anchor:
        return multiply(a, b)
    if a == b.reciprocal() or b == a.reciprocal():
        return Const(1.0)
    return None


def _scale(form, k):
    if isinstance(form, (Const, Affine, Power, ExpInv)):
        return form.scaled(k)
    if isinstance(form, Product):
        return Product((Const(k),) + tuple(f for f in form.factors))
    return Product((Const(k), form))


def add(a, b):
    """Sum of two forms, folded where the catalog allows."""
    ca, cb = a.constant_value, b.constant_value
    if ca == 0:
        return b
    if cb == 0:
        return a
    if ca is not None and cb is not None:
        return Const(ca + cb)
    if ca is not None and isinstance(b, Affine):
        return Affine(b.slope, b.intercept + ca)
    if cb is not None and isinstance(a, Affine):
        return Affine(a.slope, a.intercept + cb)
    if isinstance(a, Affine) and isinstance(b, Affine):
        return Affine(a.slope + b.slope, a.intercept + b.intercept)
    if (isinstance(a, Power) and isinstance(b, Power) and
            a.anchor == b.anchor and a.p == b.p):
        return Power(a.c + b.c, a.p, a.anchor)
    terms = (a.terms if isinstance(a, Sum) else (a,)) + (b.terms if isinstance(b, Sum) else (b,))
    return Sum(terms)


def abs_power(form, exponent, positive=False):
    """``|form| ** exponent``, folded where the catalog allows.

    Pass ``positive=True`` when ``form`` is known to be positive on its
    segment.

    """
    if exponent == 1 and positive:
        return form
    if exponent == -1 and positive:
        return form.reciprocal()
    c = form.constant_value
    if c is not None:
        return Const(_pow(abs(c), exponent))
    if isinstance(form, Power):
        return Power(abs(form.c) ** exponent, form.p * exponent, form.anchor)
    if isinstance(form, ExpInv):
        return ExpInv(form.c * exponent, abs(form.a) ** exponent, form.anchor)
    if isinstance(form, AbsPow):
        return abs_power(form.base, form.exponent * exponent)
    return AbsPow(form, exponent)


#: Scenario ``form`` names -> constructors taking the segment's lo as anchor
FORM_TYPES = {
    Const.kind: Const,
    Affine.kind: Affine,
    Power.kind: Power,
    ExpInv.kind: ExpInv,
}
