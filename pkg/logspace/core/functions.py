"""Piecewise closed-form functions on an interval.

Segments are half-open ``[lo, hi)`` except the last, which is closed,
so every point of the domain belongs to exactly one segment::

    >>> from logspace.core.forms import Affine, Power
    >>> h = PiecewiseFn.from_pieces([
    ...     (0.0, 0.04, Power(1.0, -0.5, 0.0)),
    ...     (0.04, 1.0, Affine(-25 / 32, 33 / 32)),
    ... ], positive=True)
    >>> h.evaluate(0.015625)
    8.0
    >>> h.evaluate(1.0)
    0.25
    >>> h.evaluate(0.5)
    0.640625

Functions on atomic spaces are step functions with one unit-width
segment per atom (see :meth:`PiecewiseFn.steps`).

"""
from collections import namedtuple

import numpy as np

from ..exc import DomainError, PreconditionError
from .forms import ONE, Const, abs_power, add, multiply


class Interval(namedtuple('Interval', ('lo', 'hi'))):

    __slots__ = ()

    def __new__(cls, lo, hi):
        lo, hi = float(lo), float(hi)
        if not hi > lo:
            raise DomainError('Interval [{lo}, {hi}] is empty'.format(lo=lo, hi=hi))
        return super().__new__(cls, lo, hi)

    @property
    def width(self):
        return self.hi - self.lo

    def __contains__(self, x):
        return self.lo <= x <= self.hi


class Segment(namedtuple('Segment', ('lo', 'hi', 'form'))):

    __slots__ = ()

    @property
    def width(self):
        return self.hi - self.lo

    def __str__(self):
        return '[{0.lo:g}, {0.hi:g}): {1}'.format(self, self.form.describe())


class PiecewiseFn:

    """A function given by one closed form per segment.

    Args:
        segments: ordered, contiguous :class:`Segment`s
        positive: assert the value is > 0 on the interior of every
            segment; checked analytically per form

    Instances are immutable.

    """

    def __init__(self, segments, positive=False):
        segments = tuple(Segment(float(lo), float(hi), form) for lo, hi, form in segments)
        if not segments:
            raise DomainError('A piecewise function needs at least one segment')
        for segment in segments:
            if not segment.hi > segment.lo:
                raise DomainError('Segment widths must be positive: {0}'.format(segment))
        for left, right in zip(segments, segments[1:]):
            if left.hi != right.lo:
                raise DomainError('Segments must be contiguous: {0} then {1}'.format(
                    left, right))
        if positive:
            for segment in segments:
                if not segment.form.is_positive(segment.lo, segment.hi):
                    raise PreconditionError(
                        'Not positive on segment {0}'.format(segment))
        self.__segments = segments
        self.__positive = bool(positive)
        self.__knots = np.array([s.lo for s in segments] + [segments[-1].hi])

    @classmethod
    def from_pieces(cls, pieces, positive=False):
        return cls([Segment(lo, hi, form) for lo, hi, form in pieces], positive=positive)

    @classmethod
    def constant(cls, c, domain=(0.0, 1.0)):
        domain = Interval(*domain)
        return cls([(domain.lo, domain.hi, Const(float(c)))], positive=c > 0)

    @classmethod
    def steps(cls, values, positive=None):
        """Step function with value ``values[i]`` on ``[i, i + 1)``."""
        values = [float(v) for v in values]
        if positive is None:
            positive = all(v > 0 for v in values)
        return cls([(i, i + 1, Const(v)) for i, v in enumerate(values)], positive=positive)

    @property
    def segments(self):
        return self.__segments

    @property
    def positive(self):
        return self.__positive

    @property
    def domain(self):
        return Interval(self.__knots[0], self.__knots[-1])

    @property
    def knots(self):
        """Segment boundaries including both domain ends."""
        return self.__knots.copy()

    @property
    def breakpoints(self):
        return tuple(self.__knots[1:-1])

    @property
    def is_zero(self):
        return all(s.form.is_zero for s in self.__segments)

    def __repr__(self):
        return 'PiecewiseFn({0})'.format('; '.join(str(s) for s in self.__segments))

    def __eq__(self, other):
        if not isinstance(other, PiecewiseFn):
            return NotImplemented
        return self.__segments == other.segments and self.__positive == other.positive

    def __hash__(self):
        return hash(self.__segments)

    # Evaluation

    def segment_index(self, x):
        """Index of the segment each point of ``x`` belongs to."""
        index = np.searchsorted(self.__knots, x, side='right') - 1
        return np.clip(index, 0, len(self.__segments) - 1)

    def segment_at(self, x):
        if x not in self.domain:
            raise DomainError('{x} is outside of the domain {d}'.format(x=x, d=self.domain))
        return self.__segments[int(self.segment_index(x))]

    def evaluate(self, x):
        """Value at the single point ``x``."""
        segment = self.segment_at(x)
        return float(segment.form.value(np.array([float(x)]))[0])

    def _map(self, method, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        index = self.segment_index(x)
        out = np.empty(x.shape)
        for i in np.unique(index):
            mask = index == i
            out[mask] = getattr(self.__segments[i].form, method)(x[mask])
        return out[0] if scalar else out

    def __call__(self, x):
        return self._map('value', x)

    def log_abs(self, x):
        return self._map('log_abs', x)

    def local(self, lo, hi):
        """Evaluator for a panel ``[lo, hi]`` inside a single segment.

        The returned callable maps ``(base, side, t)`` to
        ``log|f(base + side * t)|``, computing the distance to the
        segment's anchor without cancellation.

        """
        return self.segment_at(0.5 * (lo + hi)).form.local_log_abs

    def segment_beside(self, point, side):
        """The segment entered when leaving ``point`` toward ``side`` (+1 or -1).

        ``side=+1`` is the segment whose ``lo`` is ``point`` when ``point``
        is a knot. ``None`` past the domain ends.

        """
        for segment in self.__segments:
            if side > 0 and segment.lo <= point < segment.hi:
                return segment
            if side < 0 and segment.lo < point <= segment.hi:
                return segment
        return None

    def local_at(self, point, side):
        """Like :meth:`local` for the segment beside ``point``."""
        segment = self.segment_beside(point, side)
        if segment is None:
            raise DomainError('Nothing beside {0} toward {1:+d}'.format(point, side))
        return segment.form.local_log_abs

    def asymptote(self, point, side):
        """Leading behaviour approaching ``point`` from ``side`` (+1 or -1)."""
        segment = self.segment_beside(point, side)
        return ONE if segment is None else segment.form.asymptote(point)

    def unbounded_points(self):
        """Knots where some adjacent segment isn't bounded."""
        lo, hi = self.__knots[0], self.__knots[-1]
        points = []
        for x in self.__knots:
            for side in (1, -1):
                if (side > 0 and x == hi) or (side < 0 and x == lo):
                    continue
                asymptote = self.asymptote(x, side)
                if asymptote is None or not asymptote.bounded:
                    points.append(float(x))
                    break
        return tuple(points)

    # Structure

    def refine(self, points):
        """Split segments at ``points`` (forms are unchanged)."""
        cuts = sorted({float(p) for p in points if self.domain.lo < p < self.domain.hi})
        if not cuts:
            return self
        segments = []
        for segment in self.__segments:
            inner = [p for p in cuts if segment.lo < p < segment.hi]
            edges = [segment.lo] + inner + [segment.hi]
            segments.extend(Segment(a, b, segment.form) for a, b in zip(edges, edges[1:]))
        return PiecewiseFn(segments, positive=self.__positive)

    def restrict(self, lo, hi):
        """The function restricted to ``[lo, hi]``."""
        domain = self.domain
        if not (domain.lo <= lo < hi <= domain.hi):
            raise DomainError('[{lo}, {hi}] is not inside {domain}'.format(
                lo=lo, hi=hi, domain=domain))
        refined = self.refine([lo, hi])
        segments = [s for s in refined.segments if s.lo >= lo and s.hi <= hi]
        return PiecewiseFn(segments, positive=self.__positive)

    def _combine(self, other, op, positive):
        if self.domain != other.domain:
            raise DomainError('Domains differ: {0} vs {1}'.format(self.domain, other.domain))
        left = self.refine(other.breakpoints)
        right = other.refine(self.breakpoints)
        segments = [
            Segment(a.lo, a.hi, op(a.form, b.form))
            for a, b in zip(left.segments, right.segments)
        ]
        return PiecewiseFn(segments, positive=positive)

    def map_forms(self, op, positive=False):
        return PiecewiseFn(
            [Segment(s.lo, s.hi, op(s)) for s in self.__segments], positive=positive)

    # Arithmetic

    def __mul__(self, other):
        if isinstance(other, PiecewiseFn):
            return self._combine(other, multiply, self.__positive and other.positive)
        k = float(other)
        return self.map_forms(lambda s: s.form.scaled(k), positive=self.__positive and k > 0)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, PiecewiseFn):
            return self._combine(other, add, self.__positive and other.positive)
        k = float(other)
        return self.map_forms(
            lambda s: add(s.form, Const(k)), positive=self.__positive and k >= 0)

    __radd__ = __add__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def __truediv__(self, other):
        if isinstance(other, PiecewiseFn):
            return self * other.reciprocal()
        return self * (1.0 / float(other))

    def reciprocal(self):
        if not self.__positive:
            raise PreconditionError('Reciprocal needs a positive function')
        return self.map_forms(lambda s: s.form.reciprocal(), positive=True)

    def abs_pow(self, exponent):
        """``|f| ** exponent``."""
        return self.map_forms(
            lambda s: abs_power(s.form, exponent, positive=self.__positive),
            positive=self.__positive)

    # Serialization

    def to_dict(self):
        return {
            'positive': self.__positive,
            'segments': [
                {'interval': [s.lo, s.hi], **s.form.to_dict(s.lo)} for s in self.__segments
            ],
        }

