"""The weighted space ``L_log^(nu)(mu)``.

Functions with ``integral log(1 + h|f|) dmu < inf`` where
``h = d(nu)/d(mu)``, with that integral as the F-norm. ``f -> h**-1 f``
maps ``L_log(mu)`` isometrically onto it, and it's closed under
products exactly when ``h**-1`` is log-integrable.

"""
import logging
from collections import namedtuple
from functools import cached_property

from .core.classify import invert_density
from .core.integrands import Integrand
from .core.quadrature import integrate
from .exc import DomainError, InfiniteMassError, PreconditionError
from .fnorm import (
    ZERO_NORM,
    Inequality,
    as_norm,
    at_most,
    axiom_suite,
    is_zero,
    lognorm,
    residual,
    sum_norms,
)


log = logging.getLogger(__name__)


class WeightedSpace:

    """``L_log`` of ``base`` with functions weighted by ``weight``."""

    def __init__(self, base, weight):
        if not weight.positive:
            raise PreconditionError('The weight must be positive')
        if tuple(weight.domain) != tuple(base.domain):
            raise DomainError('Weight domain {0} differs from {1}'.format(
                weight.domain, base.domain))
        result = integrate(Integrand.of(weight), base)
        if not result.finite:
            raise InfiniteMassError('nu = h * mu is not a finite measure')
        self.base = base
        self.weight = weight

    @classmethod
    def from_spaces(cls, mu, nu):
        return cls(mu, mu.density_ratio(nu))

    @cached_property
    def nu(self):
        return self.base.with_density_ratio(self.weight)

    @cached_property
    def inverse_weight(self):
        return invert_density(self.weight)

    def __repr__(self):
        return 'WeightedSpace({0!r}, h={1!r})'.format(self.base, self.weight)


def weighted_norm(space, f):
    """``integral log(1 + h |f|) dmu``."""
    if is_zero(f):
        return ZERO_NORM
    return as_norm(integrate(Integrand.log1p(space.weight, f), space.base))


def weighted_axiom_suite(space, sampler, trials):
    return axiom_suite(
        space.base, sampler, trials, norm=lambda f: weighted_norm(space, f))


def check_52_isometry(space, f, reverse=False):
    """Residual of the isometry ``f -> h**-1 f`` at ``f``.

    Compares ``||h**-1 f||^(nu)`` with ``||f||_log``; with ``reverse``,
    ``||f||^(nu)`` with ``||h f||_log`` instead.

    """
    if reverse:
        return residual(weighted_norm(space, f), lognorm(space.weight * f, space.base))
    return residual(weighted_norm(space, space.inverse_weight * f), lognorm(f, space.base))


class Closedness(namedtuple('Closedness', ('holds', 'norm'))):

    """Whether the space is an algebra, witnessed by ``||h**-1||_log``."""

    __slots__ = ()

    def __bool__(self):
        return self.holds

    @property
    def isomorphism_meaningful(self):
        return self.holds

    def to_dict(self):
        return {
            'holds': self.holds,
            'isomorphism_meaningful': self.isomorphism_meaningful,
            'inverse_weight_norm': self.norm.to_dict(),
        }


def check_algebra_closed(space):
    norm = lognorm(space.inverse_weight, space.base)
    return Closedness(norm.finite, norm)


def product_bound_check(space, f, g):
    """``||f g||^(nu) <= ||h f||_log + ||h g||_log + ||h**-1||_log``."""
    lhs = weighted_norm(space, f * g)
    terms = (
        lognorm(space.weight * f, space.base),
        lognorm(space.weight * g, space.base),
        lognorm(space.inverse_weight, space.base),
    )
    return Inequality(lhs, sum_norms(*terms), at_most(lhs, *terms))


class Counterexample(namedtuple('Counterexample', ('f', 'norm_f', 'norm_f2'))):

    """``f = h**-1`` is in the space but ``f**2`` isn't."""

    __slots__ = ()

    def to_dict(self):
        return {
            'f': repr(self.f),
            'norm_f': self.norm_f.to_dict(),
            'norm_f2': self.norm_f2.to_dict(),
        }


def build_counterexample(space):
    """Witness that a space that isn't closed really isn't an algebra.

    Raises :class:`~logspace.exc.PreconditionError` for closed spaces.

    """
    if check_algebra_closed(space):
        raise PreconditionError('{0!r} is an algebra; there is no counterexample'.format(space))
    f = space.inverse_weight
    norm_f = weighted_norm(space, f)
    norm_f2 = weighted_norm(space, f * f)
    log.info('Counterexample for %r: ||f|| = %r, ||f^2|| = %r', space, norm_f, norm_f2)
    return Counterexample(f, norm_f, norm_f2)
