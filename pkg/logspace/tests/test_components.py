from logspace.components import (
    ATOM,
    Component,
    DecomposedSpace,
    check_47,
    check_coincide,
    check_isometric_decomposed,
    classify_pair,
    component_equivalences,
)
from logspace.core.forms import Const
from logspace.core.functions import PiecewiseFn
from logspace.core.spaces import MeasureSpace
from logspace.exc import DomainError, IncomparableError, PreconditionError
from logspace.test import LogspaceTestCase
from logspace.test.base import asymmetric_h, density_2x, expinv_h, fn, lebesgue, singular_h
from logspace.transport import Identity, build_transport


def half(lo, hi, c=1.0):
    return MeasureSpace.continuum(fn((lo, hi, Const(c)), positive=True))


class TestCoincidence(LogspaceTestCase):

    def test_bounded_both_ways(self):
        self.assertTrue(check_coincide(asymmetric_h()))
        self.assertTrue(check_coincide(PiecewiseFn.constant(0.5)))

    def test_unbounded_density(self):
        result = check_coincide(singular_h())
        self.assertFalse(result)
        self.assertFalse(result.h.bounded)
        self.assertTrue(result.h_inverse.bounded)

    def test_vanishing_density(self):
        result = check_coincide(expinv_h())
        self.assertTrue(result.h.bounded)
        self.assertFalse(result.to_dict()['holds'])


class TestDecomposedSpace(LogspaceTestCase):

    def test_single_continuum(self):
        space = DecomposedSpace.single(lebesgue())
        self.assertEqual(len(space), 1)
        self.assertEqual(space.homogeneous[0].label, 'Omega')

    def test_single_atomic_space_splits_into_atoms(self):
        space = DecomposedSpace.single(MeasureSpace.atomic([0.2, 0.8], labels=['a', 'b']))
        self.assertEqual([c.label for c in space.atoms], ['a', 'b'])
        self.assertAlmostEqual(space.mass, 1.0)

    def test_empty(self):
        self.assertRaises(DomainError, DecomposedSpace, [])

    def test_labels_must_be_unique(self):
        with self.assertRaises(DomainError):
            DecomposedSpace([
                Component('A', half(0.0, 0.5), weight_label=0),
                Component('A', half(0.5, 1.0), weight_label=1),
            ])

    def test_weight_labels_must_increase(self):
        with self.assertRaises(DomainError):
            DecomposedSpace([
                Component('A', half(0.0, 0.5), weight_label=1),
                Component('B', half(0.5, 1.0), weight_label=1),
            ])

    def test_component_kinds(self):
        self.assertRaises(DomainError, Component, 'A', lebesgue(), 'cluster')
        self.assertRaises(DomainError, Component, 'A', lebesgue(), ATOM)
        self.assertRaises(DomainError, Component, 'A', MeasureSpace.atomic([0.5, 0.5]), ATOM)
        self.assertRaises(DomainError, Component, 'A', MeasureSpace.atomic([1.0]))


class TestDecomposedIsometry(LogspaceTestCase):

    def setUp(self):
        self.mu = DecomposedSpace([
            Component('first', half(0.0, 0.5), weight_label=0),
            Component('second', half(0.5, 1.0), weight_label=1),
        ])
        self.nu = DecomposedSpace([
            Component('first', half(0.0, 0.5), weight_label=0),
            Component('second', half(0.5, 1.0, 0.5), weight_label=1),
        ])

    def test_all_components_must_pass_by_default(self):
        verdict = check_isometric_decomposed(self.mu, self.nu)
        self.assertFalse(verdict)
        self.assertEqual([c.holds for c in verdict.components], [True, False])
        self.assertTrue(verdict.modes_disagree)

    def test_some_mode(self):
        verdict = check_isometric_decomposed(self.mu, self.nu, mode='some')
        self.assertTrue(verdict)
        self.assertEqual(verdict.to_dict()['mode'], 'some')

    def test_unknown_mode(self):
        self.assertRaises(
            PreconditionError, check_isometric_decomposed, self.mu, self.nu, 'most')

    def test_classification_depends_on_the_mode(self):
        self.assertEqual(classify_pair(self.mu, self.nu).case_48, 'III')
        self.assertEqual(classify_pair(self.mu, self.nu, mode='some').case_48, 'I')

    def test_structures_must_agree(self):
        self.assertRaises(
            IncomparableError, classify_pair, self.mu, DecomposedSpace.single(lebesgue()))

    def test_component_equivalences(self):
        results = component_equivalences(self.mu, self.nu)
        self.assertEqual(sorted(results), ['first', 'second'])
        self.assertTrue(results['first'].ii)
        self.assertFalse(results['second'].ii)


class TestClassifyPair(LogspaceTestCase):

    def classify(self, h):
        mu = lebesgue()
        return classify_pair(mu, mu.with_density_ratio(h))

    def test_equal_measures(self):
        report = self.classify(PiecewiseFn.constant(1.0))
        self.assertEqual(report.case_48, 'I')
        self.assertEqual(report.to_dict()['case'], 'I')

    def test_example_density(self):
        report = self.classify(singular_h())
        self.assertTrue(report.isometric)
        self.assertFalse(report.coincident)
        self.assertEqual(report.case_48, 'II')

    def test_constant_multiple(self):
        self.assertEqual(self.classify(PiecewiseFn.constant(0.5)).case_48, 'III')

    def test_essentially_vanishing_density(self):
        self.assertEqual(self.classify(expinv_h()).case_48, 'IV')

    def test_atomic_permutation(self):
        report = classify_pair(
            MeasureSpace.atomic([0.2, 0.3, 0.5]), MeasureSpace.atomic([0.5, 0.2, 0.3]))
        self.assertEqual(report.case_48, 'I')

    def test_atomic_mismatch(self):
        report = classify_pair(MeasureSpace.atomic([0.5, 0.5]), MeasureSpace.atomic([0.3, 0.7]))
        self.assertEqual(report.case_48, 'III')

    def test_atoms_and_continua_are_not_comparable(self):
        self.assertRaises(DomainError, classify_pair, MeasureSpace.atomic([1.0]), lebesgue())


class TestComposition(LogspaceTestCase):

    def setUp(self):
        self.mu = lebesgue()
        self.nu = MeasureSpace.continuum(density_2x())

    def test_measure_preserving_map(self):
        result = check_47(self.mu, self.nu, build_transport(self.mu, self.nu))
        self.assertTrue(result.isometric)
        self.assertTrue(result.isomorphic)

    def test_identity_is_isometric_but_not_isomorphic(self):
        result = check_47(self.mu, self.nu, Identity(self.mu))
        self.assertTrue(result.isometric)
        self.assertFalse(result.isomorphic)
        self.assertFalse(result.to_dict()['c2']['holds'])
