"""Seeded random functions, densities and atom weights.

Everything drawn stays inside the integrable part of the segment
catalog: constants, affine pieces and powers anchored at their
segment's left end with exponents in ``[-0.9, 3]``. Coefficients are
log-uniform in ``[1e-3, 1e3]``.

    >>> sampler = FunctionSampler(seed=42)
    >>> f = sampler.function()
    >>> 1 <= len(f.segments) <= 5
    True
    >>> FunctionSampler(seed=42).function() == f
    True

"""
import numpy as np

from .core.forms import Affine, Const, Power
from .core.functions import PiecewiseFn


# Breakpoints are drawn on a dyadic grid so they're exact binary floats
_GRID = 1024


class FunctionSampler:

    def __init__(self, seed=0, domain=(0.0, 1.0), max_segments=5,
                 coefficient_range=(1e-3, 1e3), exponent_range=(-0.9, 3.0)):
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.domain = tuple(float(d) for d in domain)
        self.max_segments = max_segments
        self.log_coefficients = tuple(np.log10(coefficient_range))
        self.exponent_range = exponent_range

    def breakpoints(self):
        lo, hi = self.domain
        n = int(self.rng.integers(1, self.max_segments + 1))
        cuts = np.round(self.rng.uniform(0, 1, n - 1) * _GRID) / _GRID
        cuts = sorted({lo + (hi - lo) * c for c in cuts if 0 < c < 1})
        return [lo] + cuts + [hi]

    def coefficient(self):
        return float(10 ** self.rng.uniform(*self.log_coefficients))

    def exponent(self):
        return float(self.rng.uniform(*self.exponent_range))

    def scalar(self):
        """A scalar with ``|alpha| <= 1``."""
        return float(self.rng.uniform(-1.0, 1.0))

    def sign(self):
        return 1.0 if self.rng.random() < 0.5 else -1.0

    def form(self, lo, hi, positive=False):
        kind = self.rng.choice(('const', 'affine', 'power'))
        sign = 1.0 if positive else self.sign()
        if kind == 'const':
            return Const(sign * self.coefficient())
        if kind == 'affine':
            start, end = sign * self.coefficient(), sign * self.coefficient()
            slope = (end - start) / (hi - lo)
            return Affine(slope, start - slope * lo)
        return Power(sign * self.coefficient(), self.exponent(), lo)

    def function(self):
        edges = self.breakpoints()
        return PiecewiseFn.from_pieces(
            [(a, b, self.form(a, b)) for a, b in zip(edges, edges[1:])])

    def density(self):
        """A positive function; its total mass is whatever it comes out as."""
        edges = self.breakpoints()
        return PiecewiseFn.from_pieces(
            [(a, b, self.form(a, b, positive=True)) for a, b in zip(edges, edges[1:])],
            positive=True)

    def bounded_function(self):
        """Like :meth:`function` but without negative exponents."""
        low, high = self.exponent_range
        saved, self.exponent_range = self.exponent_range, (max(low, 0.0), high)
        try:
            return self.function()
        finally:
            self.exponent_range = saved

    def atomic_weights(self, max_atoms=8):
        """Weights from a coarse grid, so equal weights are common."""
        n = int(self.rng.integers(1, max_atoms + 1))
        return [float(w) for w in self.rng.integers(1, 10, n) / 10]

    def atomic_pair(self, max_atoms=8):
        """Two weight lists that are permutations of each other half the time."""
        a = self.atomic_weights(max_atoms)
        if self.rng.random() < 0.5:
            return a, [float(w) for w in self.rng.permutation(a)]
        b = self.atomic_weights(max_atoms)
        return a, b


class ZeroSampler(FunctionSampler):

    """Degenerate sampler that only ever draws the zero function."""

    def function(self):
        return PiecewiseFn.constant(0.0, self.domain)

    bounded_function = function
