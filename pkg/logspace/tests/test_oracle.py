import math
from doctest import DocTestSuite

import numpy as np

from logspace import oracle
from logspace.core.forms import Power
from logspace.core.integrands import Integrand
from logspace.core.quadrature import integrate
from logspace.core.spaces import MeasureSpace
from logspace.exc import OracleRefusedError, PreconditionError, UnsupportedFormError
from logspace.oracle import Exhaustive, closed_form_integral, exhaustive_match, riemann
from logspace.settings import override_settings
from logspace.test import LogspaceTestCase
from logspace.test.base import density_2x, fn, lebesgue, singular_h
from logspace.types import Null, Some


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(oracle))
    return tests


class TestClosedForm(LogspaceTestCase):

    def test_log_of_a_pole(self):
        result = closed_form_integral('log1p_c_over_x', {'c': 1}, (0, 1))
        self.assertAlmostEqual(result.value, 2 * math.log(2.0), delta=1e-15)
        self.assertEqual(result.to_dict()['formula'], 'log1p_c_over_x')

    def test_log_of_a_line(self):
        result = closed_form_integral('log1p_cx', {'c': 1}, (0, 1))
        self.assertAlmostEqual(result.value, 2 * math.log(2.0) - 1, delta=1e-15)

    def test_affine(self):
        result = closed_form_integral('affine', {'a': -25 / 32, 'b': 33 / 32}, (0.04, 1))
        self.assertAlmostEqual(result.value, 0.6, delta=1e-14)

    def test_agrees_with_the_integrator(self):
        expected = closed_form_integral('log1p_c_over_x', {'c': 2}, (0, 1)).value
        f = fn((0.0, 1.0, Power(2.0, -1.0)))
        self.assertFinite(integrate(Integrand.log1p(f), lebesgue()), expected, 1e-9)

    def test_unknown_form(self):
        self.assertRaises(UnsupportedFormError, closed_form_integral, 'sinc', {}, (0, 1))

    def test_unknown_parameter(self):
        self.assertRaises(PreconditionError, closed_form_integral, 'power', {'q': 1}, (0, 1))

    def test_improper_power(self):
        self.assertRaises(PreconditionError, closed_form_integral, 'power', {'p': -1}, (0, 1))

    def test_empty_interval(self):
        self.assertRaises(PreconditionError, closed_form_integral, 'affine', {}, (1, 0))


@override_settings(CHECKS={'riemann_panels': 4096})
class TestRiemann(LogspaceTestCase):

    def test_midpoint_rule_is_exact_for_lines(self):
        result = riemann(lambda x: x, lebesgue())
        self.assertAlmostEqual(result.value, 0.5, delta=1e-12)
        self.assertEqual(result.to_dict(), {'method': 'riemann', 'n': 4096, 'value': result.value})

    def test_agrees_with_the_integrator(self):
        space = MeasureSpace.continuum(density_2x())
        expected = integrate(Integrand.log1p(density_2x()), space)
        result = riemann(lambda x: np.log1p(2 * x), space, n=2 ** 14)
        self.assertAlmostEqual(result.value, expected.value, delta=1e-7)

    def test_singular_density(self):
        result = riemann(lambda x: 1.0, MeasureSpace.continuum(singular_h()), n=2 ** 16)
        self.assertAlmostEqual(result.value, 1.0, delta=1e-2)

    def test_too_few_panels(self):
        self.assertRaises(PreconditionError, riemann, lambda x: x, lebesgue(), n=100)

    def test_atomic_spaces_are_refused(self):
        self.assertRaises(PreconditionError, riemann, lambda x: x, MeasureSpace.atomic([1.0]))

    def test_skipped_left_end(self):
        result = riemann(lambda x: x ** -0.5, lebesgue(), n=2 ** 16, delta=1e-4, tail=0.02)
        self.assertAlmostEqual(result.value, 2.0, delta=1e-4)


class TestExhaustiveMatch(LogspaceTestCase):

    def test_match(self):
        result = exhaustive_match([0.2, 0.3, 0.5], [0.5, 0.2, 0.3])
        self.assertEqual(result.value, Some((1, 2, 0)))
        self.assertEqual(result.method, Exhaustive(4))
        self.assertEqual(result.to_dict(), {
            'method': 'exhaustive', 'searched': 4, 'value': [1, 2, 0]})

    def test_identity_wins_ties(self):
        result = exhaustive_match([0.5, 0.5], [0.5, 0.5])
        self.assertEqual(result.value, Some((0, 1)))
        self.assertEqual(result.method.searched, 1)

    def test_no_match_searches_every_permutation(self):
        result = exhaustive_match([0.2, 0.3, 0.5], [0.3, 0.3, 0.4])
        self.assertIs(result.value, Null)
        self.assertEqual(result.method.searched, 6)
        self.assertIsNone(result.to_dict()['value'])

    def test_different_lengths_search_nothing(self):
        result = exhaustive_match([1.0], [0.5, 0.5])
        self.assertIs(result.value, Null)
        self.assertEqual(result.method.searched, 0)

    def test_refuses_large_inputs(self):
        weights = [1 / 11] * 11
        self.assertRaises(OracleRefusedError, exhaustive_match, weights, weights)

    def test_limit_is_a_setting(self):
        with override_settings(CHECKS={'oracle_max_atoms': 2}):
            self.assertRaises(
                OracleRefusedError, exhaustive_match, [0.2, 0.3, 0.5], [0.5, 0.2, 0.3])
