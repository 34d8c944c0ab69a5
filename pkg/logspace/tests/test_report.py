import json
import math
import os
import tempfile
from doctest import DocTestSuite

import numpy as np

from logspace import report as report_module
from logspace.core.quadrature import AnalyticRule, Finite
from logspace.fnorm import Infinite
from logspace.report import Report, jsonable
from logspace.settings import override_settings
from logspace.test import LogspaceTestCase


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(report_module))
    return tests


class TestJsonable(LogspaceTestCase):

    def test_plain_values(self):
        self.assertEqual(jsonable({'a': (1, 2.5), 1: [True, None]}), {
            'a': [1, 2.5],
            '1': [True, None],
        })

    def test_numpy_values(self):
        value = jsonable([np.float64(0.5), np.int64(3), np.bool_(False), np.arange(2)])
        self.assertEqual(value, [0.5, 3, False, [0, 1]])
        self.assertIs(type(value[1]), int)

    def test_non_finite_floats_become_strings(self):
        self.assertEqual(jsonable([math.inf, -math.inf, math.nan]), ['inf', '-inf', 'nan'])

    def test_objects_with_to_dict(self):
        self.assertEqual(jsonable(Finite(1.0, 1e-12)), {
            'verdict': 'finite', 'value': 1.0, 'err': 1e-12})


class TestReport(LogspaceTestCase):

    def test_exit_code(self):
        self.assertEqual(Report('x', 'check', {}).exit_code, 0)
        self.assertEqual(Report('x', 'check', {}, passed=False).exit_code, 1)

    def test_provenance_records_the_tolerances_in_effect(self):
        with override_settings(CHECKS={'eq_tol': 1e-4}):
            report = Report('x', 'check', {}, seed=3)
        provenance = report.to_dict()['provenance']
        self.assertEqual(provenance['seed'], 3)
        self.assertEqual(provenance['tolerances']['CHECKS']['eq_tol'], 1e-4)
        self.assertEqual(provenance['tolerances']['QUADRATURE']['panel_limit'], 400)

    def test_output_is_deterministic(self):
        results = {'b': Infinite(AnalyticRule('pole')), 'a': [1.0, math.inf]}
        one = Report('x', 'norm', results, seed=0).to_json()
        two = Report('x', 'norm', dict(reversed(list(results.items()))), seed=0).to_json()
        self.assertEqual(one, two)
        self.assertEqual(json.loads(one)['results']['a'], [1.0, 'inf'])

    def test_write_json_and_csv(self):
        report = Report('x', 'transport', {}, samples=[(0.0, 0.0), (0.25, np.float64(0.5))])
        with tempfile.TemporaryDirectory() as directory:
            json_path = os.path.join(directory, 'report.json')
            csv_path = os.path.join(directory, 'samples.csv')
            report.write_json(json_path)
            report.write_csv(csv_path)
            with open(json_path) as fp:
                self.assertEqual(json.load(fp)['command'], 'transport')
            with open(csv_path) as fp:
                self.assertEqual(fp.read(), 'x,value\n0.0,0.0\n0.25,0.5\n')

    def test_csv_without_samples_has_only_a_header(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'samples.csv')
            Report('x', 'check', {}).write_csv(path)
            with open(path) as fp:
                self.assertEqual(fp.read(), 'x,value\n')
