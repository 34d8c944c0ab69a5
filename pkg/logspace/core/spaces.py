"""Finite measure spaces.

A :class:`MeasureSpace` is either a continuum (an interval carrying a
positive piecewise density) or a finite atomic space. Atomic spaces
reuse the continuum machinery: atom ``i`` is the unit segment
``[i, i + 1)`` and functions on the space are step functions, but
integrals against them are exact weighted sums.

    >>> space = MeasureSpace.atomic([0.2, 0.3, 0.5])
    >>> space.mass
    1.0
    >>> space.labels
    ('atom1', 'atom2', 'atom3')

"""
import math
from functools import cached_property

import numpy as np

from ..exc import DomainError, InfiniteMassError, PreconditionError
from .functions import PiecewiseFn
from .integrands import Integrand
from .quadrature import integrate


class MeasureSpace:

    def __init__(self, density, atomic=False, labels=None):
        if not density.positive:
            raise PreconditionError('Densities must be positive: {0!r}'.format(density))
        self.__density = density
        self.__atomic = bool(atomic)
        if atomic:
            n = len(density.segments)
            if labels is None:
                labels = ['atom{0}'.format(i + 1) for i in range(n)]
            if len(labels) != n:
                raise DomainError('Expected {n} atom labels; got {m}'.format(n=n, m=len(labels)))
            self.__labels = tuple(str(label) for label in labels)
        else:
            self.__labels = ()

    @classmethod
    def continuum(cls, density):
        return cls(density)

    @classmethod
    def lebesgue(cls, domain=(0.0, 1.0)):
        return cls(PiecewiseFn.constant(1.0, domain))

    @classmethod
    def atomic(cls, weights, labels=None):
        weights = [float(w) for w in weights]
        if not weights:
            raise DomainError('An atomic space needs at least one atom')
        if not all(w > 0 for w in weights):
            raise PreconditionError('Atom weights must be positive: {0}'.format(weights))
        return cls(PiecewiseFn.steps(weights, positive=True), atomic=True, labels=labels)

    @property
    def is_atomic(self):
        return self.__atomic

    @property
    def density(self):
        return self.__density

    @property
    def domain(self):
        return self.__density.domain

    @property
    def labels(self):
        return self.__labels

    @property
    def weights(self):
        if not self.__atomic:
            raise PreconditionError('Only atomic spaces have atom weights')
        return tuple(s.form.constant_value for s in self.__density.segments)

    @property
    def atom_points(self):
        """One evaluation point per atom (the middle of its segment)."""
        return np.arange(len(self.__density.segments)) + 0.5

    @cached_property
    def mass_result(self):
        result = integrate(Integrand(), self)
        if not result.finite:
            raise InfiniteMassError('Density {0!r} has infinite mass'.format(self.__density))
        return result

    @property
    def mass(self):
        if self.__atomic:
            return math.fsum(self.weights)
        return self.mass_result.value

    @property
    def mass_err(self):
        return 0.0 if self.__atomic else self.mass_result.err

    def measure(self, lo, hi):
        """``mu([lo, hi])`` as a :class:`~logspace.core.quadrature.Finite`."""
        return integrate(Integrand(), self, (lo, hi))

    def density_ratio(self, other):
        """``d(other)/d(self)``, the function ``h`` with ``other = h * self``."""
        self.check_comparable(other)
        return other.density / self.__density

    def with_density_ratio(self, h):
        """The space ``nu`` with ``d(nu)/d(self) == h``."""
        if not h.positive:
            raise PreconditionError('Density ratios must be positive')
        return MeasureSpace(self.__density * h, atomic=self.__atomic, labels=self.__labels or None)

    def check_comparable(self, other):
        if self.__atomic != other.is_atomic or self.domain != other.domain:
            raise DomainError('Spaces are not defined on the same set: {0!r} vs {1!r}'.format(
                self, other))

    def __eq__(self, other):
        if not isinstance(other, MeasureSpace):
            return NotImplemented
        return (
            self.__atomic == other.is_atomic and
            self.__labels == other.labels and
            self.__density == other.density)

    def __hash__(self):
        return hash((self.__atomic, self.__density))

    def __repr__(self):
        if self.__atomic:
            return 'Atomic({0})'.format(', '.join('{0:g}'.format(w) for w in self.weights))
        return 'Continuum({0!r})'.format(self.__density)
