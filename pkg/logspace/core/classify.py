"""Exact boundedness classification of piecewise functions.

    >>> from logspace.core.functions import PiecewiseFn
    >>> ess_sup_classify(PiecewiseFn.constant(1.0))
    Bounded(sup=1.0)

"""
import math
from collections import namedtuple

from ..exc import PreconditionError


class Bounded(namedtuple('Bounded', ('sup',))):

    __slots__ = ()

    bounded = True

    def to_dict(self):
        return {'verdict': 'bounded', 'sup': self.sup}


class Unbounded(namedtuple('Unbounded', ('segment',))):

    """``segment`` is the first segment on which ``|f|`` is unbounded."""

    __slots__ = ()

    bounded = False

    def to_dict(self):
        return {
            'verdict': 'unbounded',
            'witness': [self.segment.lo, self.segment.hi],
            'form': self.segment.form.describe(),
        }


def ess_sup_classify(f):
    """Classify ``|f|`` as bounded (with its exact sup) or unbounded.

    Each segment's form reports its exact bounds over the open segment;
    nothing is sampled. Forms that can't be bounded analytically raise
    :class:`~logspace.exc.ClassificationError`.

    """
    sup = 0.0
    for segment in f.segments:
        _, segment_sup = segment.form.bounds(segment.lo, segment.hi)
        if math.isinf(segment_sup):
            return Unbounded(segment)
        sup = max(sup, segment_sup)
    return Bounded(sup)


def invert_density(h):
    """``1 / h`` for a positive ``h``; an involution up to rounding."""
    if not h.positive:
        raise PreconditionError('Only positive densities can be inverted')
    return h.reciprocal()
