"""Measure-preserving maps and the isometry they induce.

A :class:`TransportMap` ``t`` carries ``mu`` onto ``nu``, i.e.
``mu(A) == nu(t(A))``. Between continua it's the monotone rearrangement
``t = F_nu^-1 o F_mu``; between atomic spaces it's a permutation of atoms
of equal weight::

    >>> from logspace.core.spaces import MeasureSpace
    >>> mu = MeasureSpace.atomic([0.2, 0.3, 0.5])
    >>> nu = MeasureSpace.atomic([0.5, 0.2, 0.3])
    >>> transport = build_transport(mu, nu)
    >>> transport.sigma
    (1, 2, 0)
    >>> from logspace.core.functions import PiecewiseFn
    >>> apply_J(transport, PiecewiseFn.steps([1, 2, 3])).to_dict()['segments'][0]['c']
    3.0

``J f = f o t^-1`` is an isometry from ``L_log(mu)`` onto ``L_log(nu)``.

"""
import logging
import math

import numpy as np

from .core.forms import ONE, Asymptote, Const
from .core.functions import Interval, PiecewiseFn
from .core.integrands import Integrand
from .core.quadrature import Finite, integrate, substitution_exponent
from .core.settings import checks_settings, eq_tol
from .core.spaces import MeasureSpace
from .exc import (
    DomainError,
    InfiniteMassError,
    NoAutomorphismError,
    NotIsometricError,
    PreconditionError,
)


log = logging.getLogger(__name__)


# 20-point Gauss-Legendre on [0, 1]
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(20)
_U = 0.5 * (_NODES + 1.0)
_W = 0.5 * _WEIGHTS

# Cells are graded geometrically toward points where the density blows up
_GRADING_LEVELS = 60

# Offsets below this fraction of the domain width are evaluated relative
# to their base point instead of in absolute coordinates
_LOCAL_FRACTION = 1e-6

_TINIEST_OFFSET = 1e-300


class CumulativeTable:

    """``F(x) = mu([lo, x])`` for a continuum space, with its inverse.

    ``F`` is tabulated at cell edges by :func:`~logspace.core.quadrature.integrate`;
    inside a cell it's completed with 20-point Gauss-Legendre, using the
    same power substitution as the integrator in cells that touch a
    singular point of the density. The inverse is bisection.

    """

    def __init__(self, space, cells=None, iterations=None):
        if space.is_atomic:
            raise PreconditionError('Cumulative tables are for continuum spaces')
        self.space = space
        self.density = density = space.density
        self.iterations = iterations or checks_settings.get('bisection_iterations')
        cells = cells or checks_settings.get('cdf_cells')
        domain = space.domain
        self.domain = domain
        self.local_span = _LOCAL_FRACTION * domain.width

        knots = density.knots
        self.singular = {}
        edges = set(np.linspace(domain.lo, domain.hi, cells + 1)) | set(knots)
        cell_width = domain.width / cells
        for i, point in enumerate(knots):
            for side in (1, -1):
                if (side > 0 and i == len(knots) - 1) or (side < 0 and i == 0):
                    continue
                asymptote = density.asymptote(point, side)
                if asymptote is not None and asymptote.bounded:
                    continue
                self.singular[(float(point), side)] = substitution_exponent(asymptote)
                neighbour = knots[i + side]
                step = min(cell_width, abs(neighbour - point))
                for k in range(1, _GRADING_LEVELS + 1):
                    edge = point + side * step * 2.0 ** -k
                    if edge != point:
                        edges.add(edge)
        self.edges = edges = np.array(sorted(float(e) for e in edges))

        lo, hi = edges[:-1], edges[1:]
        self._base = lo.copy()
        self._side = np.ones(len(lo))
        self._exponent = np.ones(len(lo))
        for i, (a, b) in enumerate(zip(lo, hi)):
            if (a, 1) in self.singular:
                self._exponent[i] = self.singular[(a, 1)]
            elif (b, -1) in self.singular:
                self._base[i], self._side[i] = b, -1.0
                self._exponent[i] = self.singular[(b, -1)]
        self._segment = density.segment_index(0.5 * (lo + hi))

        masses, err = [], 0.0
        for a, b in zip(lo, hi):
            result = integrate(Integrand(), space, (a, b))
            if not result.finite:
                raise InfiniteMassError('Infinite mass on [{0}, {1}]'.format(a, b))
            masses.append(result.value)
            err += result.err
        self.cumulative = np.concatenate([[0.0], np.cumsum(masses)])
        self.total = float(self.cumulative[-1])
        self.err = err
        log.debug('CDF table for %r: %d cells, mass %r', space, len(lo), self.total)

    def _cell(self, x):
        index = np.searchsorted(self.edges, x, side='right') - 1
        return np.clip(index, 0, len(self.edges) - 2)

    def _partial(self, index, x):
        """``F(x)`` for ``x`` inside cell ``index``."""
        base, side, m = self._base[index], self._side[index], self._exponent[index]
        span = np.maximum(side * (x - base), 0.0)
        partial = np.zeros(len(x))
        segments = self._segment[index]
        for s in np.unique(segments):
            rows = segments == s
            form = self.density.segments[s].form
            m_rows = m[rows][:, None]
            nodes = span[rows][:, None] * _U ** m_rows
            jacobian = m_rows * _U ** (m_rows - 1) * _W
            with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
                values = np.exp(form.local_log_abs(
                    base[rows][:, None], side[rows][:, None], nodes))
                partial[rows] = span[rows] * np.sum(values * jacobian, axis=1)
        partial = np.where(span > 0, partial, 0.0)
        return np.where(
            side > 0, self.cumulative[index] + partial, self.cumulative[index + 1] - partial)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.clip(np.atleast_1d(x), self.domain.lo, self.domain.hi)
        out = self._partial(self._cell(x), x)
        return float(out[0]) if scalar else out

    def quantile(self, q):
        """``F^-1(q)`` by bisection inside the cell holding ``q``."""
        q = np.asarray(q, dtype=float)
        scalar = q.ndim == 0
        q = np.clip(np.atleast_1d(q), 0.0, self.total)
        index = np.clip(
            np.searchsorted(self.cumulative, q, side='right') - 1, 0, len(self.edges) - 2)
        lo, hi = self.edges[index], self.edges[index + 1]
        for _ in range(self.iterations):
            mid = 0.5 * (lo + hi)
            below = self._partial(index, mid) < q
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        x = 0.5 * (lo + hi)
        x = np.where(q <= 0, self.domain.lo, np.where(q >= self.total, self.domain.hi, x))
        return float(x[0]) if scalar else x

    # Offsets from a base point

    def span_beside(self, point, side):
        """How far from ``point`` offsets are kept relative to it."""
        knots = self.density.knots
        if side > 0:
            ahead = knots[knots > point]
        else:
            ahead = knots[knots < point]
        if not len(ahead):
            return 0.0
        nearest = np.min(np.abs(ahead - point))
        return min(self.local_span, 0.5 * float(nearest))

    def local_mass(self, point, side, t):
        """``mu`` of the interval between ``point`` and ``point + side * t``."""
        t = np.asarray(t, dtype=float)
        asymptote = self.density.asymptote(point, side)
        m = 1.0 if asymptote is not None and asymptote.bounded else \
            substitution_exponent(asymptote)
        log_density = self.density.local_at(point, side)
        nodes = t[..., None] * _U ** m
        jacobian = m * _U ** (m - 1) * _W
        with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
            values = np.exp(log_density(point, side, nodes))
            mass = t * np.sum(values * jacobian, axis=-1)
        return np.where(t > 0, mass, 0.0)

    def local_offset(self, point, side, mass):
        """The offset ``s`` with ``local_mass(point, side, s) == mass``.

        Bisects on ``log(s)``, so tiny offsets keep full relative
        precision. Masses beyond the local span fall back to
        :meth:`quantile`.

        """
        mass = np.asarray(mass, dtype=float)
        span = self.span_beside(point, side)
        out = np.zeros(mass.shape)
        if span <= 0:
            return out
        reach = float(self.local_mass(point, side, span))
        near = (mass > 0) & (mass <= reach)
        if near.any():
            target = mass[near]
            log_lo = np.full(target.shape, math.log(_TINIEST_OFFSET))
            log_hi = np.full(target.shape, math.log(span))
            for _ in range(self.iterations):
                mid = 0.5 * (log_lo + log_hi)
                below = self.local_mass(point, side, np.exp(mid)) < target
                log_lo = np.where(below, mid, log_lo)
                log_hi = np.where(below, log_hi, mid)
            out[near] = np.exp(0.5 * (log_lo + log_hi))
        far = mass > reach
        if far.any():
            x = self.quantile(self(point) + side * mass[far])
            out[far] = np.abs(x - point)
        return out


# Maps


class TransportMap:

    """A measure-preserving map from ``source`` onto ``target``."""

    kind = None

    def __init__(self, source, target):
        self.source = source
        self.target = target

    def __call__(self, x):
        raise NotImplementedError

    def inverse(self, y):
        raise NotImplementedError

    def apply(self, f):
        """``J f = f o t^-1``, a function on the target space."""
        raise NotImplementedError

    def pushforward(self, space):
        """The image measure ``space o t^-1`` on the target's domain."""
        raise NotImplementedError

    def preservation_residual(self, region):
        """``|mu(A) - nu(t(A))|`` with its error estimate."""
        raise NotImplementedError

    def to_dict(self):
        return {'kind': self.kind}

    def __repr__(self):
        return '{0}({1!r} -> {2!r})'.format(type(self).__name__, self.source, self.target)


class Identity(TransportMap):

    kind = 'identity'

    def __init__(self, space):
        super().__init__(space, space)

    def __call__(self, x):
        return x

    inverse = __call__

    def apply(self, f):
        return f

    def pushforward(self, space):
        return space

    def preservation_residual(self, region):
        return Finite(0.0, 0.0)


class Permutation(TransportMap):

    """Atom ``i`` of the source goes to atom ``sigma[i]`` of the target."""

    kind = 'permutation'

    def __init__(self, source, target, sigma):
        super().__init__(source, target)
        self.sigma = tuple(int(j) for j in sigma)
        self.sigma_inverse = tuple(int(i) for i in np.argsort(self.sigma))

    def _move(self, x, table):
        x = np.asarray(x, dtype=float)
        atom = np.clip(np.floor(x), 0, len(table) - 1).astype(int)
        return np.asarray(table)[atom] + (x - atom)

    def __call__(self, x):
        return self._move(x, self.sigma)

    def inverse(self, y):
        return self._move(y, self.sigma_inverse)

    def apply(self, f):
        points = self.source.atom_points
        values = [f.evaluate(points[i]) for i in self.sigma_inverse]
        return PiecewiseFn.steps(values)

    def pushforward(self, space):
        if len(space.weights) != len(self.sigma):
            raise DomainError('Expected {0} atoms; got {1}'.format(
                len(self.sigma), len(space.weights)))
        weights = [0.0] * len(self.sigma)
        for i, w in enumerate(space.weights):
            weights[self.sigma[i]] = w
        return MeasureSpace.atomic(weights, labels=self.target.labels)

    def preservation_residual(self, region):
        """``region`` is a collection of source atom indices."""
        atoms = sorted(set(int(i) for i in region))
        before = math.fsum(self.source.weights[i] for i in atoms)
        after = math.fsum(self.target.weights[self.sigma[i]] for i in atoms)
        return Finite(abs(before - after), 0.0)

    def to_dict(self):
        source, target = self.source.labels, self.target.labels
        return {
            'kind': self.kind,
            'sigma': list(self.sigma),
            'table': {source[i]: target[j] for i, j in enumerate(self.sigma)},
        }


class Monotone(TransportMap):

    """The increasing rearrangement ``t = F_nu^-1 o F_mu``.

    Masses are matched after normalizing by the totals, so the domain
    ends map exactly onto each other.

    """

    kind = 'monotone'

    def __init__(self, source, target):
        super().__init__(source, target)
        self.source_cdf = CumulativeTable(source)
        self.target_cdf = CumulativeTable(target)
        self.ratio = self.source_cdf.total / self.target_cdf.total

    def __call__(self, x):
        return self.target_cdf.quantile(self.source_cdf(x) / self.ratio)

    def inverse(self, y):
        return self.source_cdf.quantile(self.target_cdf(y) * self.ratio)

    def local_inverse(self, y, x, side, t):
        """Offsets ``s`` with ``t^-1(y + side * t) == x + side * s``; ``x = t^-1(y)``."""
        mass = self.target_cdf.local_mass(y, side, t) * self.ratio
        return self.source_cdf.local_offset(x, side, mass)

    def apply(self, f):
        return TransportedFn(f, self)

    def pushforward(self, space):
        if space == self.source:
            return self.target
        return _grid_pushforward(space, self)

    def preservation_residual(self, region):
        lo, hi = region
        before = self.source.measure(lo, hi)
        after = self.target.measure(float(self(lo)), float(self(hi)))
        return Finite(abs(before.value - after.value), before.err + after.err)


def _grid_pushforward(space, transport):
    """``space o t^-1`` as cell averages on a grid over the target domain."""
    space.check_comparable(transport.source)
    domain = transport.target.domain
    cells = checks_settings.get('grid_points')
    edges = set(np.linspace(domain.lo, domain.hi, cells + 1))
    edges.update(float(k) for k in transport.target.density.knots)
    edges.update(float(transport(k)) for k in space.density.breakpoints)
    edges = np.array(sorted(edges))
    cdf = CumulativeTable(space)
    preimages = transport.inverse(edges)
    preimages[0], preimages[-1] = space.domain.lo, space.domain.hi
    masses = np.diff(cdf(preimages))
    tiny = np.finfo(float).tiny
    pieces = [
        (a, b, Const(max(mass / (b - a), tiny)))
        for a, b, mass in zip(edges[:-1], edges[1:], masses)
    ]
    log.debug('Pushed %r forward onto %d grid cells', space, len(pieces))
    return MeasureSpace(PiecewiseFn.from_pieces(pieces, positive=True))


class TransportedFn:

    """``J f``: the function ``y -> f(t^-1(y))`` for a monotone ``t``.

    Implements the integrand factor protocol. Its knots are the images
    of the knots of ``f`` and of both densities, where ``t^-1`` may kink.
    Near a knot, values are computed from offsets relative to the knot
    and its preimage, so singularities of ``f`` are resolved as finely as
    the integrator asks.

    """

    def __init__(self, f, transport):
        if tuple(f.domain) != tuple(transport.source.domain):
            raise DomainError('{0!r} is not defined on {1}'.format(f, transport.source.domain))
        self.f = f
        self.transport = transport
        self.domain = Interval(*transport.target.domain)
        source_knots = set(float(k) for k in f.knots)
        source_knots.update(float(k) for k in transport.source.density.knots)
        self._preimages = {self.domain.lo: transport.source.domain.lo,
                           self.domain.hi: transport.source.domain.hi}
        for k in source_knots:
            if transport.source.domain.lo < k < transport.source.domain.hi:
                self._preimages[float(transport(k))] = k
        for k in transport.target.density.breakpoints:
            self._preimages.setdefault(float(k), float(transport.inverse(k)))
        self.knots = np.array(sorted(self._preimages))

    @property
    def is_zero(self):
        return self.f.is_zero

    def preimage(self, y):
        y = float(y)
        if y in self._preimages:
            return self._preimages[y]
        return float(self.transport.inverse(y))

    def __call__(self, y):
        return self.f(self.transport.inverse(y))

    def log_abs(self, y):
        return self.f.log_abs(self.transport.inverse(y))

    def local(self, lo, hi):
        evaluate_f = self.f.local(self.preimage(lo), self.preimage(hi))
        target_cdf = self.transport.target_cdf

        def log_abs(base, side, t):
            t = np.asarray(t, dtype=float)
            out = np.empty(t.shape)
            near = t <= target_cdf.span_beside(base, side)
            if near.any():
                x = self.preimage(base)
                s = self.transport.local_inverse(base, x, side, t[near])
                out[near] = evaluate_f(x, side, s)
            if (~near).any():
                out[~near] = self.log_abs(base + side * t[~near])
            return out

        return log_abs

    def asymptote(self, point, side):
        """Behaviour of ``f`` at the preimage, with ``t^-1`` folded in.

        Near a point where the densities behave like ``s**a`` (source)
        and ``s**b`` (target), ``t^-1`` moves offsets like
        ``s**((b + 1) / (a + 1))``, which rescales a power of ``f``.

        """
        x = self.preimage(point)
        inner = self.f.asymptote(x, side)
        if inner is None or inner.is_zero or inner == ONE or inner.rate < 0:
            return inner
        a = self.transport.source.density.asymptote(x, side)
        b = self.transport.target.density.asymptote(point, side)
        if inner.rate > 0 or not all(
                d is not None and d.rate == 0 and d.logs == 0 for d in (a, b)):
            return None
        scale = (b.power + 1.0) / (a.power + 1.0)
        return Asymptote(0.0, inner.power * scale, inner.logs)

    def __repr__(self):
        return 'J({0!r})'.format(self.f)


# Construction


def match_weights(a, b, tol=None):
    """``sigma`` pairing equal weights of ``a`` and ``b``, or ``None``.

    Weights are matched in sorted order, elementwise within ``tol``
    (``CHECKS.atom_tol`` by default).

    """
    if len(a) != len(b):
        return None
    tol = checks_settings.get('atom_tol') if tol is None else tol
    order_a = np.argsort(a, kind='stable')
    order_b = np.argsort(b, kind='stable')
    if np.any(np.abs(np.asarray(a)[order_a] - np.asarray(b)[order_b]) > tol):
        return None
    sigma = [0] * len(a)
    for i, j in zip(order_a, order_b):
        sigma[int(i)] = int(j)
    return tuple(sigma)


def build_transport(mu, nu):
    """A measure-preserving map from ``mu`` onto ``nu``.

    Raises :class:`~logspace.exc.NotIsometricError` when the total
    masses differ and :class:`~logspace.exc.NoAutomorphismError` when
    atomic weight multisets differ.

    """
    if mu.is_atomic != nu.is_atomic:
        raise NotIsometricError(
            'Atomic and continuum spaces are never isomorphic', criterion='structure')
    difference = abs(mu.mass - nu.mass)
    if difference > eq_tol() + mu.mass_err + nu.mass_err:
        raise NotIsometricError(
            'Total masses differ: {0!r} vs {1!r}'.format(mu.mass, nu.mass),
            criterion='total mass')
    if mu == nu:
        return Identity(mu)
    if mu.is_atomic:
        sigma = match_weights(mu.weights, nu.weights)
        if sigma is None:
            raise NoAutomorphismError('Atom weights differ: {0} vs {1}'.format(
                sorted(mu.weights), sorted(nu.weights)))
        return Permutation(mu, nu, sigma)
    mu.check_comparable(nu)
    transport = Monotone(mu, nu)
    log.debug('Built %r', transport)
    return transport


def apply_J(transport, f):
    """``J f``: ``f o t^-1`` as a function on the target space."""
    return transport.apply(f)


def pushforward(space, transport):
    """The image measure of ``space`` under ``transport``."""
    return transport.pushforward(space)
