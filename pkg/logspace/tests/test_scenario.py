import json
import os
import tempfile
from doctest import DocTestSuite

from logspace import scenario as scenario_module
from logspace.core.forms import Power
from logspace.exc import ScenarioError
from logspace.scenario import catalog, dumps, load, loads, parse
from logspace.test import LogspaceTestCase
from logspace.test.base import singular_h


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(scenario_module))
    return tests


def document(**fields):
    doc = {
        'version': 1,
        'name': 'test',
        'space': {'kind': 'lebesgue'},
        'h': {'constant': 1},
    }
    doc.update(fields)
    return {k: v for k, v in doc.items() if v is not None}


class ScenarioTestCase(LogspaceTestCase):

    def assertScenarioError(self, doc, path, message=None):
        with self.assertRaises(ScenarioError) as context:
            parse(doc)
        self.assertEqual(context.exception.path, path)
        if message is not None:
            self.assertIn(message, str(context.exception))


class TestCatalog(ScenarioTestCase):

    def test_names(self):
        self.assertEqual(catalog(), [
            'asymmetric_balance',
            'atomic_mismatch',
            'atomic_trio',
            'case_iv_expinv',
            'counterexample_expinv',
            'density_2x',
            'half_density',
            'identity',
            'paper_example',
            'two_components',
        ])

    def test_every_scenario_loads_and_prints_canonically(self):
        for name in catalog():
            scenario = load(name)
            self.assertEqual(scenario.name, name)
            self.assertEqual(loads(dumps(scenario)), scenario, name)
            self.assertEqual(dumps(loads(dumps(scenario))), dumps(scenario), name)

    def test_unknown_name(self):
        with self.assertRaises(ScenarioError) as context:
            load('no_such_scenario')
        self.assertIn('Cannot read scenario no_such_scenario', str(context.exception))

    def test_load_from_a_path(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'half.json')
            with open(path, 'w') as fp:
                json.dump(document(name='half', h={'constant': '1/2'}), fp)
            self.assertAlmostEqual(load(path).nu.mass, 0.5, delta=1e-12)


class TestParse(ScenarioTestCase):

    def test_example_density(self):
        scenario = load('paper_example')
        self.assertEqual(scenario.h, singular_h())
        self.assertEqual(sorted(scenario.test_functions), ['inv_sqrt', 'x'])
        self.assertEqual(scenario.mode, 'all')
        self.assertIsNone(scenario.decomposition)

    def test_rationals(self):
        scenario = parse(document(h={'segments': [
            {'interval': [0, '1/3'], 'form': 'const', 'c': '3/2'},
            {'interval': ['1/3', 1], 'form': 'const', 'c': '3/4'},
        ]}))
        self.assertEqual(scenario.h.knots[1], 1 / 3)
        self.assertAlmostEqual(scenario.nu.mass, 1.0, delta=1e-12)

    def test_nu_density(self):
        scenario = load('density_2x')
        self.assertEqual(scenario.nu.density(0.5), 1.0)
        self.assertEqual(scenario.h(0.25), 0.5)

    def test_atomic(self):
        scenario = load('atomic_trio')
        self.assertEqual(scenario.nu.weights, (0.5, 0.2, 0.3))
        self.assertEqual(scenario.nu.labels, ('a', 'b', 'c'))

    def test_power_anchor_defaults_to_the_segment_start(self):
        scenario = parse(document(h={'segments': [
            {'interval': [0, 0.5], 'form': 'const', 'c': 1},
            {'interval': [0.5, 1], 'form': 'power', 'c': 0.5, 'p': -0.5},
        ]}))
        self.assertEqual(scenario.h.segments[1].form, Power(0.5, -0.5, 0.5))

    def test_reciprocal(self):
        scenario = parse(document(h={'segments': [
            {'interval': [0, 1], 'form': 'reciprocal', 'of': {'form': 'const', 'c': 2}},
        ]}))
        self.assertEqual(scenario.h(0.5), 0.5)

    def test_decomposition(self):
        scenario = load('two_components')
        mu, nu = scenario.decomposition
        self.assertEqual([c.label for c in mu], ['first', 'second'])
        self.assertAlmostEqual(nu.components[0].mass, 0.5, delta=1e-12)
        self.assertAlmostEqual(nu.components[1].mass, 0.25, delta=1e-12)

    def test_tolerances(self):
        scenario = parse(document(options={
            'mode': 'some',
            'seed': 4,
            'tolerances': {'CHECKS': {'eq_tol': '1/1000', 'cdf_cells': 64}},
        }))
        self.assertEqual(scenario.mode, 'some')
        self.assertEqual(scenario.seed, 4)
        self.assertEqual(scenario.tolerances, {'CHECKS': {'eq_tol': 0.001, 'cdf_cells': 64}})
        self.assertEqual(scenario.to_dict()['options']['tolerances']['CHECKS']['cdf_cells'], 64)


class TestErrors(ScenarioTestCase):

    def test_unsupported_version(self):
        self.assertScenarioError(
            document(version=2), 'version', 'Unsupported version 2; expected 1')

    def test_missing_fields(self):
        self.assertScenarioError(document(name=None), None, 'Missing fields: name')

    def test_unknown_fields(self):
        self.assertScenarioError(document(extra=1), None, 'Unknown fields: extra')

    def test_h_and_nu_density_are_exclusive(self):
        self.assertScenarioError(
            document(nu_density={'constant': 1}), None, 'Exactly one of h and nu_density')
        self.assertScenarioError(document(h=None), None, 'Exactly one of h and nu_density')

    def test_h_must_be_positive(self):
        self.assertScenarioError(document(h={'constant': 0}), 'h.constant', 'Must be positive')

    def test_unknown_form(self):
        doc = document(h={'segments': [{'interval': [0, 1], 'form': 'sine', 'c': 1}]})
        self.assertScenarioError(doc, 'h.segments[0].form', "got 'sine'")

    def test_bad_number(self):
        doc = document(h={'segments': [{'interval': [0, 1], 'form': 'const', 'c': '1/0'}]})
        self.assertScenarioError(doc, 'h.segments[0].c', 'Not a number or rational')

    def test_gap_between_segments(self):
        doc = document(h={'segments': [
            {'interval': [0, 0.5], 'form': 'const', 'c': 1},
            {'interval': [0.6, 1], 'form': 'const', 'c': 1},
        ]})
        self.assertScenarioError(doc, 'h')

    def test_domain_must_match_the_space(self):
        doc = document(h={'segments': [{'interval': [0, 2], 'form': 'const', 'c': 1}]})
        self.assertScenarioError(doc, 'h', 'differs from the space domain')

    def test_decomposition_must_tile_the_domain(self):
        doc = document(decomposition=[
            {'label': 'A', 'kind': 'homogeneous', 'interval': [0, 0.5], 'weight_label': 0},
            {'label': 'B', 'kind': 'homogeneous', 'interval': [0.6, 1], 'weight_label': 1},
        ])
        self.assertScenarioError(doc, 'decomposition[1].interval', 'must tile the domain')

    def test_unknown_tolerance(self):
        doc = document(options={'tolerances': {'CHECKS': {'speed': 1}}})
        self.assertScenarioError(doc, 'options.tolerances.CHECKS', 'Unknown fields: speed')

    def test_integer_tolerance(self):
        doc = document(options={'tolerances': {'CHECKS': {'cdf_cells': 0.5}}})
        self.assertScenarioError(doc, 'options.tolerances.CHECKS.cdf_cells', 'integer')

    def test_unknown_mode(self):
        self.assertScenarioError(document(options={'mode': 'most'}), 'options.mode')

    def test_invalid_json(self):
        with self.assertRaises(ScenarioError) as context:
            loads('{"version": 1,\n "name": }')
        self.assertIn('line 2', str(context.exception))

    def test_duplicate_keys(self):
        with self.assertRaises(ScenarioError) as context:
            loads('{"version": 1, "version": 1}')
        self.assertIn('Duplicate fields: version', str(context.exception))

    def test_non_finite_numbers(self):
        self.assertRaises(ScenarioError, loads, '{"version": NaN}')
