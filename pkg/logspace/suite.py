"""Batch property runs over random draws.

:func:`run_suite` runs every property family ``count`` times with
samplers seeded from ``(seed, family)``, so a run is reproducible from
its seed alone. Families:

    - ``axioms``: F-norm axioms of the plain and the weighted norm
    - ``bundle``: the equivalent forms of C1 agree on random pairs
    - ``atomic``: the classifier agrees with exhaustive atom matching
    - ``oracle``: the integrator against closed forms and the midpoint rule
    - ``lp``: ``f -> h**(-1/p) f`` is an ``L_p`` isometry
    - ``weighted``: ``f -> h**-1 f`` is an isometry onto the weighted space
    - ``transport``: the increasing rearrangement between random pairs of
      equal mass preserves random intervals and log norms
    - ``closedness``: the algebra criterion on known densities, the
      product bound in closed spaces and counterexamples in the others

"""
import logging
import math

import numpy as np

from .components import DecomposedSpace, check_isometric_decomposed
from .core.forms import Affine, Const, ExpInv, Power
from .core.functions import PiecewiseFn
from .core.integrands import Integrand
from .core.quadrature import integrate
from .core.settings import checks_settings, eq_tol
from .core.spaces import MeasureSpace
from .exc import IncomparableError, NotIsometricError
from .fnorm import axiom_suite, lognorm
from .isometry import check_equivalences, isometry_residual, lp_isometry_check
from .oracle import closed_form_integral, exhaustive_match, riemann
from .report import Report
from .sampling import FunctionSampler
from .transport import build_transport
from .weighted import (
    WeightedSpace,
    build_counterexample,
    check_52_isometry,
    check_algebra_closed,
    product_bound_check,
    weighted_axiom_suite,
    weighted_norm,
)


log = logging.getLogger(__name__)


# New families go last; a family's index seeds its sampler
FAMILIES = (
    'axioms', 'bundle', 'atomic', 'oracle', 'lp', 'weighted', 'transport', 'closedness')

# Failure witnesses kept per family
MAX_WITNESSES = 10

ORACLE_TOL = 1e-8
RIEMANN_TOL = 1e-5
LP_TOL = 1e-10
WEIGHTED_TOL = 1e-8


class FamilyResult:

    def __init__(self, name):
        self.name = name
        self.trials = 0
        self.failed = 0
        self.witnesses = []

    def record(self, holds, witness=None):
        self.trials += 1
        if not holds:
            self.failed += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness)

    def merge(self, trials, failures):
        self.trials += trials
        self.failed += len(failures)
        room = MAX_WITNESSES - len(self.witnesses)
        self.witnesses.extend(failures[:max(room, 0)])

    @property
    def passed(self):
        return not self.failed

    def to_dict(self):
        return {
            'trials': self.trials,
            'failed': self.failed,
            'passed': self.passed,
            'witnesses': self.witnesses,
        }


def _sampler(seed, family):
    return FunctionSampler(seed=[seed, FAMILIES.index(family)])


def _lebesgue():
    return MeasureSpace.lebesgue()


def _fn(*pieces):
    return PiecewiseFn.from_pieces(pieces)


def _density(*pieces):
    return PiecewiseFn.from_pieces(pieces, positive=True)


def _equal_mass(mu, density):
    """``density`` rescaled so it carries the mass of ``mu``."""
    mass = MeasureSpace.continuum(density).mass
    return density * PiecewiseFn.constant(mu.mass / mass, density.domain)


def oracle_catalog():
    """``(closed-form args, integrand, interval)`` pairs checked against each other."""
    return [
        (('log1p_c_over_x', {'c': 1.0}, (0.0, 1.0)),
         Integrand.log1p(_fn((0.0, 1.0, Power(1.0, -1.0, 0.0)))), None),
        (('log1p_c_over_x', {'c': 0.25}, (0.0, 1.0)),
         Integrand.log1p(_fn((0.0, 1.0, Power(0.25, -1.0, 0.0)))), None),
        (('log1p_cx', {'c': 1.0}, (0.0, 1.0)),
         Integrand.log1p(_fn((0.0, 1.0, Affine(1.0, 0.0)))), None),
        (('log1p_cx', {'c': 2.0}, (0.0, 1.0)),
         Integrand.log1p(_fn((0.0, 1.0, Affine(2.0, 0.0)))), None),
        (('power', {'p': -0.5}, (0.0, 1.0)),
         Integrand.of(_fn((0.0, 1.0, Power(1.0, -0.5, 0.0)))), None),
        (('power', {'p': 2.5, 'c': 3.0}, (0.0, 1.0)),
         Integrand.of(_fn((0.0, 1.0, Power(3.0, 2.5, 0.0)))), None),
        (('power', {'p': -0.5}, (0.0, 0.04)),
         Integrand.of(_fn((0.0, 1.0, Power(1.0, -0.5, 0.0)))), (0.0, 0.04)),
        (('x_log_c', {'c': 3.0}, (0.0, 1.0)),
         Integrand.of(_fn((0.0, 1.0, Affine(math.log(3.0), 0.0)))), None),
        (('affine', {'a': -25 / 32, 'b': 33 / 32}, (0.04, 1.0)),
         Integrand.of(_fn((0.0, 1.0, Affine(-25 / 32, 33 / 32)))), (0.04, 1.0)),
    ]


def _run_axioms(result, seed, count):
    space = _lebesgue()
    sampler = _sampler(seed, 'axioms')
    weighted = WeightedSpace(space, sampler.density())
    for norm, report in (
            ('plain', axiom_suite(space, sampler, count)),
            ('weighted', weighted_axiom_suite(weighted, sampler, count))):
        result.merge(report.trials, [dict(failure, norm=norm) for failure in report.failures])


def _run_bundle(result, seed, count):
    sampler = _sampler(seed, 'bundle')
    for trial in range(count):
        mu = MeasureSpace.continuum(sampler.density())
        nu = MeasureSpace.continuum(sampler.density())
        if trial % 2:
            # Equal masses, so C1 holds
            nu = MeasureSpace.continuum(_equal_mass(mu, nu.density))
        equivalences = check_equivalences(mu, nu)
        result.record(equivalences.bundle_agrees, {
            'trial': trial, 'equivalences': equivalences.to_dict()})


def _run_atomic(result, seed, count):
    sampler = _sampler(seed, 'atomic')
    for trial in range(count):
        a, b = sampler.atomic_pair()
        match = exhaustive_match(a, b)
        found = bool(match.value)
        try:
            verdict = check_isometric_decomposed(
                DecomposedSpace.single(MeasureSpace.atomic(a)),
                DecomposedSpace.single(MeasureSpace.atomic(b))).holds
        except IncomparableError:
            verdict = False
        result.record(found == verdict, {
            'trial': trial, 'a': a, 'b': b, 'exhaustive': found,
            'searched': match.method.searched, 'classifier': verdict})


def _run_oracle(result, seed, count):
    space = _lebesgue()
    for args, integrand, interval in oracle_catalog():
        expected = closed_form_integral(*args).value
        actual = integrate(integrand, space, interval)
        holds = actual.finite and abs(actual.value - expected) <= ORACLE_TOL
        result.record(holds, {'form': args[0], 'expected': expected, 'actual': actual})
    sampler = _sampler(seed, 'oracle')
    for trial in range(count):
        f = sampler.bounded_function()
        integrand = Integrand.log1p(f)
        expected = riemann(integrand, space).value
        actual = lognorm(f, space)
        holds = actual.finite and abs(actual.value - expected) <= RIEMANN_TOL * max(
            1.0, abs(expected))
        result.record(holds, {'trial': trial, 'riemann': expected, 'actual': actual})


def _run_lp(result, seed, count):
    sampler = _sampler(seed, 'lp')
    mu = _lebesgue()
    for trial in range(count):
        nu = mu.with_density_ratio(sampler.density())
        f = sampler.bounded_function()
        for p in (1, 2, 3):
            residual = lp_isometry_check(mu, nu, p, f)
            result.record(residual.value <= LP_TOL + residual.err, {
                'trial': trial, 'p': p, 'residual': residual.to_dict()})


def _run_weighted(result, seed, count):
    sampler = _sampler(seed, 'weighted')
    mu = _lebesgue()
    for trial in range(count):
        space = WeightedSpace(mu, sampler.density())
        f = sampler.function()
        residual = check_52_isometry(space, f, reverse=True)
        result.record(residual.value <= WEIGHTED_TOL + residual.err, {
            'trial': trial, 'residual': residual.to_dict()})


def _run_transport(result, seed, count):
    sampler = _sampler(seed, 'transport')
    mu = _lebesgue()
    intervals = checks_settings.get('suite_intervals')
    tol = checks_settings.get('isometry_tol')
    for trial in range(count):
        nu = MeasureSpace.continuum(_equal_mass(mu, sampler.density()))
        try:
            transport = build_transport(mu, nu)
        except NotIsometricError as exc:
            result.record(False, {'trial': trial, 'error': str(exc)})
            continue
        regions = np.sort(sampler.rng.uniform(*mu.domain, size=(intervals, 2)), axis=1)
        for lo, hi in regions:
            region = (float(lo), float(hi))
            preserved = transport.preservation_residual(region)
            result.record(preserved.value <= eq_tol() + preserved.err, {
                'trial': trial, 'region': region, 'residual': preserved})
        residual = isometry_residual(transport, sampler.bounded_function())
        result.record(residual.value <= tol + residual.err, {
            'trial': trial, 'residual': residual.to_dict()})


def closedness_catalog():
    """``(weight, closed)`` pairs: closed exactly when ``log(1 + 1/h)`` integrates."""
    return [
        (_density((0.0, 1.0, Const(1.0))), True),
        (_density((0.0, 1.0, Affine(2.0, 0.0))), True),
        (_density((0.0, 1.0, Power(1.0, 2.0, 0.0))), True),
        (_density((0.0, 1.0, Power(1.0, -0.5, 0.0))), True),
        (_density((0.0, 0.04, Power(1.0, -0.5, 0.0)),
                  (0.04, 1.0, Affine(-25 / 32, 33 / 32))), True),
        (_density((0.0, 1.0, ExpInv(-1.0))), False),
        (_density((0.0, 1.0, ExpInv(-2.0, 3.0))), False),
        (_density((0.0, 0.5, ExpInv(-1.0)), (0.5, 1.0, Const(1.0))), False),
    ]


def _check_counterexample(result, space, witness):
    example = build_counterexample(space)
    holds = example.norm_f.finite and not example.norm_f2.finite
    result.record(holds, dict(witness, counterexample=example.to_dict()))


def _run_closedness(result, seed, count):
    mu = _lebesgue()
    for index, (weight, expected) in enumerate(closedness_catalog()):
        space = WeightedSpace(mu, weight)
        closed = check_algebra_closed(space)
        witness = {'catalog': index, 'expected': expected, 'closed': closed.to_dict()}
        result.record(closed.holds == expected, witness)
        if not closed:
            _check_counterexample(result, space, witness)
    sampler = _sampler(seed, 'closedness')
    for trial in range(count):
        space = WeightedSpace(mu, sampler.density())
        witness = {'trial': trial}
        if not check_algebra_closed(space):
            _check_counterexample(result, space, witness)
            continue
        f, g = sampler.bounded_function(), sampler.bounded_function()
        bound = product_bound_check(space, f, g)
        # In an algebra, factors in the space have a product in the space
        factors_in = weighted_norm(space, f).finite and weighted_norm(space, g).finite
        holds = bound.holds and (bound.lhs.finite or not factors_in)
        result.record(holds, dict(witness, bound=bound.to_dict()))


RUNNERS = {
    'axioms': _run_axioms,
    'bundle': _run_bundle,
    'atomic': _run_atomic,
    'oracle': _run_oracle,
    'lp': _run_lp,
    'weighted': _run_weighted,
    'transport': _run_transport,
    'closedness': _run_closedness,
}


def run_suite(seed=0, count=None, families=FAMILIES):
    """Run property families and report; ``count=0`` is an empty pass.

    ``count`` defaults to the ``CHECKS.suite_count`` setting.

    """
    if count is None:
        count = checks_settings.get('suite_count')
    results = {}
    for name in families:
        result = FamilyResult(name)
        if count > 0:
            RUNNERS[name](result, seed, count)
        log.info('Suite family %s: %d trials, %d failed', name, result.trials, result.failed)
        results[name] = result
    passed = all(r.passed for r in results.values())
    return Report('suite', 'suite', {
        'count': count,
        'families': results,
        'passed': passed,
    }, seed=seed, passed=passed)


def cmd_suite(seed=0, count=None):
    return run_suite(seed, count)
