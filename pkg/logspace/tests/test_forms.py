import math
from doctest import DocTestSuite
from unittest import TestCase

import numpy as np

from logspace.core import evaluate, forms, functions
from logspace.core.forms import (
    ONE,
    ZERO,
    Affine,
    Asymptote,
    Const,
    ExpInv,
    Power,
    Product,
    Reciprocal,
    abs_power,
    add,
    multiply,
)
from logspace.core.functions import Interval, PiecewiseFn
from logspace.exc import DomainError, PreconditionError
from logspace.test import LogspaceTestCase
from logspace.test.base import fn, singular_h


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(forms))
    tests.addTests(DocTestSuite(functions))
    return tests


class TestAsymptote(TestCase):

    def test_power_singularities_are_integrable_above_minus_one(self):
        self.assertTrue(Asymptote(0.0, -0.5, 0.0).integrable)
        self.assertTrue(Asymptote(0.0, -0.99, 0.0).integrable)
        self.assertFalse(Asymptote(0.0, -1.0, 0.0).integrable)
        self.assertFalse(Asymptote(0.0, -2.0, 0.0).integrable)

    def test_log_factor_decides_the_borderline_power(self):
        self.assertTrue(Asymptote(0.0, -1.0, -2.0).integrable)
        self.assertFalse(Asymptote(0.0, -1.0, -1.0).integrable)

    def test_essential_singularities(self):
        self.assertFalse(Asymptote(1.0, 0.0, 0.0).integrable)
        self.assertTrue(Asymptote(-1.0, -5.0, 0.0).integrable)
        self.assertTrue(Asymptote(-1.0, -5.0, 0.0).bounded)

    def test_boundedness(self):
        self.assertTrue(ONE.bounded)
        self.assertTrue(ZERO.bounded)
        self.assertTrue(Asymptote(0.0, 0.5, 0.0).bounded)
        self.assertFalse(Asymptote(0.0, 0.0, 1.0).bounded)
        self.assertTrue(Asymptote(0.0, 0.0, -1.0).bounded)

    def test_log1p_of_a_power_singularity_is_logarithmic(self):
        self.assertEqual(Asymptote(0.0, -0.5, 0.0).log1p(), Asymptote(0.0, 0.0, 1.0))

    def test_log1p_of_an_essential_singularity_is_a_simple_pole(self):
        self.assertEqual(Asymptote(2.0, 0.0, 0.0).log1p(), Asymptote(0.0, -1.0, 0.0))

    def test_zero_absorbs_products(self):
        self.assertIs(ZERO.times(Asymptote(3.0, -2.0, 0.0)), ZERO)

    def test_negative_power_of_zero_is_refused(self):
        self.assertRaises(PreconditionError, ZERO.raised, -1)


class TestPrimitiveForms(TestCase):

    def test_affine_roots_are_strictly_inside(self):
        self.assertEqual(Affine(2.0, 0.0).roots(1.0, 0.0, 1.0), [0.5])
        self.assertEqual(Affine(2.0, 0.0).roots(0.0, 0.0, 1.0), [])
        self.assertEqual(Affine(0.0, 3.0).roots(3.0, 0.0, 1.0), [])

    def test_power_roots(self):
        self.assertEqual(Power(1.0, -0.5).roots(2.0, 0.0, 1.0), [0.25])
        self.assertEqual(Power(1.0, -0.5).roots(1.0, 0.0, 0.04), [])

    def test_affine_with_a_zero_endpoint_is_positive(self):
        self.assertTrue(Affine(2.0, 0.0).is_positive(0.0, 1.0))
        self.assertFalse(Affine(-1.0, 0.5).is_positive(0.0, 1.0))

    def test_anchored_forms_are_positive_only_right_of_their_anchor(self):
        self.assertTrue(Power(1.0, -0.5, 0.0).is_positive(0.0, 1.0))
        self.assertFalse(Power(1.0, -0.5, 0.5).is_positive(0.0, 1.0))
        self.assertTrue(ExpInv(-1.0).is_positive(0.0, 1.0))
        self.assertFalse(ExpInv(-1.0, -1.0).is_positive(0.0, 1.0))

    def test_power_bounds_at_its_anchor(self):
        self.assertEqual(Power(1.0, -0.5).bounds(0.0, 0.04), (5.0, math.inf))
        self.assertEqual(Power(1.0, 2.0).bounds(0.0, 0.5), (0.0, 0.25))

    def test_expinv_bounds(self):
        low, high = ExpInv(-1.0).bounds(0.0, 1.0)
        self.assertEqual(low, 0.0)
        self.assertAlmostEqual(high, math.exp(-1.0))
        self.assertEqual(ExpInv(1.0).bounds(0.0, 1.0)[1], math.inf)

    def test_asymptotes_at_the_anchor(self):
        self.assertEqual(Power(1.0, -0.5).asymptote(0.0), Asymptote(0.0, -0.5, 0.0))
        self.assertEqual(Power(1.0, -0.5).asymptote(0.5), ONE)
        self.assertEqual(ExpInv(-1.0).asymptote(0.0), Asymptote(-1.0, 0.0, 0.0))
        self.assertEqual(Affine(1.0, 0.0).asymptote(0.0), Asymptote(0.0, 1.0, 0.0))
        self.assertEqual(Const(0.0).asymptote(0.3), ZERO)

    def test_reciprocals_stay_in_the_catalog(self):
        self.assertEqual(Power(2.0, 0.5).reciprocal(), Power(0.5, -0.5, 0.0))
        self.assertEqual(ExpInv(-1.0).reciprocal(), ExpInv(1.0, 1.0, 0.0))
        self.assertEqual(Const(4.0).reciprocal(), Const(0.25))
        self.assertEqual(Affine(1.0, 0.0).reciprocal(), Reciprocal(Affine(1.0, 0.0)))

    def test_reciprocal_of_zero_is_refused(self):
        self.assertRaises(PreconditionError, Const(0.0).reciprocal)
        self.assertRaises(PreconditionError, Power(0.0, 1.0).reciprocal)

    def test_expinv_evaluates_in_the_log_domain(self):
        x = np.array([1e-3])
        self.assertEqual(ExpInv(-1.0).log_abs(x)[0], -1000.0)
        self.assertEqual(ExpInv(-1.0).value(x)[0], 0.0)

    def test_to_dict_omits_anchor_at_segment_start(self):
        self.assertEqual(
            Power(1.0, -0.5, 0.0).to_dict(0.0), {'form': 'power', 'c': 1.0, 'p': -0.5})
        self.assertEqual(
            Power(1.0, -0.5, 0.0).to_dict(0.5),
            {'form': 'power', 'c': 1.0, 'p': -0.5, 'anchor': 0.0})
        self.assertEqual(ExpInv(-1.0, 2.0).to_dict(0.0), {'form': 'expinv', 'c': -1.0, 'a': 2.0})


class TestCombinators(TestCase):

    def test_constants_fold(self):
        self.assertEqual(multiply(Const(2.0), Const(3.0)), Const(6.0))
        self.assertEqual(add(Const(2.0), Const(3.0)), Const(5.0))

    def test_multiplying_by_one_is_the_identity(self):
        self.assertEqual(multiply(Const(1.0), ExpInv(-1.0)), ExpInv(-1.0))

    def test_multiplying_by_zero_is_zero(self):
        self.assertEqual(multiply(Const(0.0), Power(1.0, -0.5)), Const(0.0))

    def test_scaling_stays_in_the_catalog(self):
        self.assertEqual(multiply(Const(2.0), Power(1.0, -0.5)), Power(2.0, -0.5, 0.0))
        self.assertEqual(multiply(Affine(1.0, 1.0), Const(3.0)), Affine(3.0, 3.0))

    def test_a_form_times_its_reciprocal_is_one(self):
        x = Affine(1.0, 0.0)
        self.assertEqual(multiply(x, x.reciprocal()), Const(1.0))

    def test_unfoldable_products_are_exact_composites(self):
        x = Affine(1.0, 0.0)
        product = multiply(x, x)
        self.assertIsInstance(product, Product)
        np.testing.assert_allclose(product.value(np.array([0.5, 2.0])), [0.25, 4.0])

    def test_powers_with_the_same_exponent_add(self):
        self.assertEqual(add(Power(1.0, 2.0), Power(2.0, 2.0)), Power(3.0, 2.0, 0.0))

    def test_absolute_powers(self):
        self.assertEqual(abs_power(Const(-3.0), 2), Const(9.0))
        self.assertEqual(abs_power(Power(-2.0, 1.0), 2), Power(4.0, 2.0, 0.0))
        self.assertEqual(abs_power(ExpInv(-1.0), -1), ExpInv(1.0, 1.0, 0.0))
        self.assertEqual(abs_power(Power(1.0, 0.5), -1, positive=True), Power(1.0, -0.5, 0.0))


class TestPiecewiseFn(LogspaceTestCase):

    def test_segments_must_be_contiguous(self):
        self.assertRaises(
            DomainError, PiecewiseFn.from_pieces,
            [(0.0, 0.5, Const(1.0)), (0.6, 1.0, Const(1.0))])

    def test_segments_must_have_positive_width(self):
        self.assertRaises(DomainError, PiecewiseFn.from_pieces, [(0.5, 0.5, Const(1.0))])

    def test_empty_functions_are_refused(self):
        self.assertRaises(DomainError, PiecewiseFn, [])

    def test_positivity_is_checked_per_segment(self):
        self.assertRaises(
            PreconditionError, fn, (0.0, 0.5, Const(1.0)), (0.5, 1.0, Const(-1.0)),
            positive=True)

    def test_knots_belong_to_the_segment_on_their_right(self):
        h = singular_h()
        self.assertEqual(h.evaluate(0.04), 1.0)
        self.assertEqual(h.evaluate(1.0), 0.25)
        self.assertEqual(evaluate(h, 0.04), h.evaluate(0.04))

    def test_evaluation_outside_the_domain_is_an_error(self):
        self.assertRaises(DomainError, singular_h().evaluate, 1.5)

    def test_vectorized_evaluation(self):
        np.testing.assert_allclose(singular_h()([0.015625, 0.5]), [8.0, 0.640625])

    def test_steps_are_unit_segments(self):
        f = PiecewiseFn.steps([1, 2, 3])
        self.assertEqual(f.domain, Interval(0.0, 3.0))
        self.assertTrue(f.positive)
        self.assertEqual(f.evaluate(1.5), 2.0)

    def test_refinement_keeps_values(self):
        h = singular_h()
        refined = h.refine([0.01, 0.5])
        self.assertEqual(refined.breakpoints, (0.01, 0.04, 0.5))
        x = np.linspace(0.001, 1.0, 17)
        np.testing.assert_array_equal(refined(x), h(x))

    def test_restrict(self):
        restricted = singular_h().restrict(0.02, 0.5)
        self.assertEqual(restricted.domain, Interval(0.02, 0.5))
        self.assertEqual(restricted.evaluate(0.04), 1.0)
        self.assertRaises(DomainError, singular_h().restrict, 0.5, 2.0)

    def test_arithmetic_merges_breakpoints(self):
        f = fn((0.0, 0.5, Const(1.0)), (0.5, 1.0, Const(2.0)))
        g = fn((0.0, 0.25, Const(3.0)), (0.25, 1.0, Affine(1.0, 0.0)))
        product = f * g
        self.assertEqual(product.breakpoints, (0.25, 0.5))
        self.assertEqual(product.evaluate(0.75), 1.5)
        self.assertEqual((f + g).evaluate(0.1), 4.0)
        self.assertEqual((f - g).evaluate(0.1), -2.0)

    def test_arithmetic_needs_the_same_domain(self):
        self.assertRaises(
            DomainError, lambda: PiecewiseFn.constant(1.0) * PiecewiseFn.constant(1.0, (0, 2)))

    def test_reciprocal_needs_a_positive_function(self):
        self.assertRaises(PreconditionError, fn((0.0, 1.0, Affine(1.0, -0.5))).reciprocal)

    def test_reciprocal_of_the_example_density(self):
        inverse = singular_h().reciprocal()
        self.assertTrue(inverse.positive)
        self.assertAlmostEqual(inverse.evaluate(0.01), 0.1)
        self.assertAlmostEqual(inverse.evaluate(1.0), 4.0)

    def test_zero_function(self):
        self.assertTrue(PiecewiseFn.constant(0.0).is_zero)
        self.assertFalse(singular_h().is_zero)

    def test_unbounded_points(self):
        self.assertEqual(singular_h().unbounded_points(), (0.0,))
        self.assertEqual(PiecewiseFn.constant(1.0).unbounded_points(), ())

    def test_asymptote_past_the_domain_is_regular(self):
        self.assertEqual(singular_h().asymptote(1.0, 1), ONE)
        self.assertEqual(singular_h().asymptote(0.0, 1), Asymptote(0.0, -0.5, 0.0))

    def test_to_dict(self):
        self.assertEqual(singular_h().to_dict(), {
            'positive': True,
            'segments': [
                {'interval': [0.0, 0.04], 'form': 'power', 'c': 1.0, 'p': -0.5},
                {'interval': [0.04, 1.0], 'form': 'affine',
                 'slope': -25 / 32, 'intercept': 33 / 32},
            ],
        })
