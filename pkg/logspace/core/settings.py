from collections import namedtuple

from ..settings import PrefixedSettings


QUADRATURE_DEFAULTS = {
    'abs_tol': 1e-10,
    'rel_tol': 1e-9,
    'panel_limit': 400,
    'tail_levels': 60,
    'tail_window': 10,
    'tail_decay': 1.05,
    'fault': 0.0,
}


CHECKS_DEFAULTS = {
    # Absolute tolerance for "= 1" and "=" between reals
    'eq_tol': 1e-8,
    # Elementwise tolerance when matching atom weights
    'atom_tol': 1e-10,
    # Largest accepted | ||f|| - ||J f|| | for a measure-preserving map
    'isometry_tol': 1e-6,
    'bisection_iterations': 60,
    'cdf_cells': 256,
    'grid_points': 4096,
    'root_scan': 256,
    'oracle_max_atoms': 10,
    'riemann_panels': 2 ** 20,
    # Draws per family for `logspace suite` without --count
    'suite_count': 200,
    # Random intervals checked per transport draw
    'suite_intervals': 10,
}


quadrature_settings = PrefixedSettings('QUADRATURE', QUADRATURE_DEFAULTS)
checks_settings = PrefixedSettings('CHECKS', CHECKS_DEFAULTS)


class Tolerances(namedtuple('Tolerances', tuple(QUADRATURE_DEFAULTS))):

    """Snapshot of the quadrature settings for one integration."""

    __slots__ = ()

    @classmethod
    def current(cls):
        return cls(**{name: quadrature_settings.get(name) for name in cls._fields})


def eq_tol():
    return checks_settings.get('eq_tol')
