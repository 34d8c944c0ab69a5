"""Scenario commands.

Each ``cmd_*`` function takes a parsed
:class:`~logspace.scenario.Scenario` and returns a
:class:`~logspace.report.Report`. Tolerance overrides from the scenario
are applied for the duration of the command.

"""
import functools
import logging

import numpy as np

from .components import (
    check_coincide,
    check_isometric_decomposed,
    classify_pair,
    component_equivalences,
)
from .core.classify import ess_sup_classify, invert_density
from .core.functions import PiecewiseFn
from .core.settings import checks_settings, eq_tol
from .exc import NotIsometricError, PreconditionError, ScenarioError
from .fnorm import lognorm, lognorm_nu, pnorm
from .isometry import check_c1, check_equivalences, isometry_residual
from .report import Report
from .settings import override_settings
from .transport import Permutation, build_transport
from .weighted import WeightedSpace, check_algebra_closed, weighted_norm


log = logging.getLogger(__name__)


NORM_KINDS = ('log', 'log_nu', 'weighted', 'p')

BUILTIN_FUNCTIONS = ('zero', 'one', 'h', 'h_inv', 'h_inv_squared')


def with_tolerances(command):
    """Run ``command`` under the scenario's tolerance overrides."""
    @functools.wraps(command)
    def wrapper(scenario, *args, **kwargs):
        with override_settings(**scenario.tolerances):
            return command(scenario, *args, **kwargs)
    return wrapper


def resolve_function(scenario, function_id):
    """A builtin function or one of the scenario's test functions."""
    domain = scenario.mu.domain
    if function_id == 'zero':
        return PiecewiseFn.constant(0.0, domain)
    if function_id == 'one':
        return PiecewiseFn.constant(1.0, domain)
    if function_id == 'h':
        return scenario.h
    if function_id in ('h_inv', 'h_inv_squared'):
        h_inv = invert_density(scenario.h)
        return h_inv if function_id == 'h_inv' else h_inv * h_inv
    try:
        return scenario.test_functions[function_id]
    except KeyError:
        known = sorted(BUILTIN_FUNCTIONS + tuple(scenario.test_functions))
        raise ScenarioError(
            'Unknown function {0!r}; expected one of {1}'.format(function_id, ', '.join(known)),
            path='test_functions')


@with_tolerances
def cmd_norm(scenario, function_id='one', kind='log', p=None):
    if kind not in NORM_KINDS:
        raise PreconditionError('kind must be one of {0}; got {1!r}'.format(NORM_KINDS, kind))
    f = resolve_function(scenario, function_id)
    results = {'function': function_id, 'kind': kind}
    if kind == 'log':
        norm = lognorm(f, scenario.mu)
    elif kind == 'log_nu':
        norm = lognorm_nu(f, scenario.mu, scenario.h)
    elif kind == 'weighted':
        space = WeightedSpace(scenario.mu, scenario.h)
        norm = weighted_norm(space, f)
        results['algebra'] = check_algebra_closed(space)
    else:
        if p is None:
            raise PreconditionError('kind p needs --p')
        norm = pnorm(f, scenario.mu, p)
        results['p'] = p
    results['norm'] = norm
    results['finite'] = norm.finite
    return Report(scenario.name, 'norm', results, seed=scenario.seed)


@with_tolerances
def cmd_check(scenario, mode=None):
    """The equivalent forms of C1 side by side, plus C2.

    Decomposed scenarios also get the per-component isometry verdict in
    ``mode`` (the scenario's mode by default).

    """
    h = scenario.h
    equivalences = check_equivalences(scenario.mu, scenario.nu)
    results = {
        'c1': check_c1(h, scenario.mu),
        'c2': check_coincide(h),
        'equivalences': equivalences,
    }
    passed = equivalences.bundle_agrees
    if equivalences.discrepancy:
        log.info('%s: normalized balance disagrees with C1', scenario.name)
    if scenario.decomposition is not None:
        per_component = component_equivalences(*scenario.decomposition)
        results['components'] = per_component
        results['isometric'] = check_isometric_decomposed(
            *scenario.decomposition, mode=mode or scenario.mode)
        passed = passed and all(e.bundle_agrees for e in per_component.values())
    return Report(scenario.name, 'check', results, seed=scenario.seed, passed=passed)


@with_tolerances
def cmd_classify(scenario, mode=None):
    mode = mode or scenario.mode
    if scenario.decomposition is not None:
        report = classify_pair(*scenario.decomposition, mode=mode)
        results = {'classification': report, 'decomposed': True}
    else:
        report = classify_pair(scenario.mu, scenario.nu, mode=mode)
        results = {
            'classification': report,
            'decomposed': False,
            'h': ess_sup_classify(scenario.h),
        }
    return Report(scenario.name, 'classify', results, seed=scenario.seed)


def _random_regions(transport, rng, n):
    if isinstance(transport, Permutation) or transport.source.is_atomic:
        size = len(transport.source.weights)
        regions = []
        for _ in range(n):
            mask = rng.random(size) < 0.5
            regions.append(tuple(int(i) for i in np.flatnonzero(mask)) or (0,))
        return regions
    lo, hi = transport.source.domain
    return [tuple(sorted(rng.uniform(lo, hi, 2))) for _ in range(n)]


def _samples(transport, count):
    if transport.source.is_atomic:
        points = transport.source.atom_points
        return [(float(x), float(transport(x))) for x in points]
    lo, hi = transport.source.domain
    xs = np.linspace(lo, hi, count)
    return list(zip(xs.tolist(), np.asarray(transport(xs), dtype=float).tolist()))


@with_tolerances
def cmd_transport(scenario, count=11, intervals=10, seed=None):
    """Build the measure-preserving map and measure how well it preserves things.

    Samples of ``t`` go to the report's CSV rows. A pair that isn't
    isometric gives a failing report naming the failing criterion.

    """
    seed = scenario.seed if seed is None else seed
    try:
        transport = build_transport(scenario.mu, scenario.nu)
    except NotIsometricError as exc:
        results = {'isometric': False, 'criterion': exc.criterion, 'message': str(exc)}
        return Report(scenario.name, 'transport', results, seed=seed, passed=False)

    rng = np.random.default_rng(seed)
    tol = eq_tol()
    preservation = []
    for region in _random_regions(transport, rng, intervals):
        residual = transport.preservation_residual(region)
        preservation.append({
            'region': region,
            'residual': residual,
            'holds': residual.value <= tol + residual.err,
        })

    ids = sorted(scenario.test_functions) or ['one', 'h']
    isometry_tol = checks_settings.get('isometry_tol')
    isometry = {}
    for function_id in ids:
        residual = isometry_residual(transport, resolve_function(scenario, function_id))
        isometry[function_id] = {
            'residual': residual,
            'holds': residual.value <= isometry_tol + residual.err,
        }

    samples = _samples(transport, count)
    results = {
        'isometric': True,
        'map': transport,
        'samples': [list(row) for row in samples],
        'preservation': preservation,
        'isometry': isometry,
    }
    passed = all(p['holds'] for p in preservation) and all(
        i['holds'] for i in isometry.values())
    return Report(
        scenario.name, 'transport', results, seed=seed, passed=passed, samples=samples)
