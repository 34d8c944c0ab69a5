import contextlib
import io
import json
import os
import tempfile
from unittest import TestCase

from logspace.__main__ import FAILED, PASSED, USAGE, main


class MainTestCase(TestCase):

    def run_main(self, *argv):
        """Run the CLI; return ``(exit status, stdout, stderr)``."""
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            with self.assertRaises(SystemExit) as context:
                main(list(argv))
        return context.exception.code, out.getvalue(), err.getvalue()


class TestCommands(MainTestCase):

    def test_check_passes(self):
        status, out, _ = self.run_main('check', '--scenario', 'identity')
        self.assertEqual(status, PASSED)
        report = json.loads(out)
        self.assertEqual(report['command'], 'check')
        self.assertEqual(report['provenance']['seed'], 0)

    def test_classify(self):
        status, out, _ = self.run_main('classify', '--scenario', 'paper_example')
        self.assertEqual(status, PASSED)
        self.assertEqual(json.loads(out)['results']['classification']['case'], 'II')

    def test_norm(self):
        status, out, _ = self.run_main(
            'norm', '--scenario', 'paper_example', '--function', 'inv_sqrt', '--kind', 'p',
            '--p', '1')
        self.assertEqual(status, PASSED)
        self.assertAlmostEqual(json.loads(out)['results']['norm']['value'], 2.0, delta=1e-8)

    def test_transport_failure_exits_with_one(self):
        status, out, _ = self.run_main('transport', '--scenario', 'half_density')
        self.assertEqual(status, FAILED)
        self.assertEqual(json.loads(out)['results']['criterion'], 'total mass')

    def test_check_mode(self):
        _, out, _ = self.run_main('check', '--scenario', 'two_components')
        self.assertFalse(json.loads(out)['results']['isometric']['holds'])
        status, out, _ = self.run_main('check', '--scenario', 'two_components', '--mode', 'some')
        self.assertEqual(status, PASSED)
        isometric = json.loads(out)['results']['isometric']
        self.assertEqual((isometric['holds'], isometric['mode']), (True, 'some'))

    def test_seed_override(self):
        _, out, _ = self.run_main('check', '--scenario', 'identity', '--seed', '5')
        self.assertEqual(json.loads(out)['provenance']['seed'], 5)

    def test_output_files(self):
        with tempfile.TemporaryDirectory() as directory:
            json_path = os.path.join(directory, 'report.json')
            csv_path = os.path.join(directory, 'samples.csv')
            status, out, err = self.run_main(
                'transport', '--scenario', 'atomic_trio', '--json', json_path,
                '--emit-csv', csv_path)
            self.assertEqual(status, PASSED)
            self.assertEqual(out, '')
            self.assertIn('atomic_trio transport: pass', err)
            with open(json_path) as fp:
                self.assertTrue(json.load(fp)['results']['isometric'])
            with open(csv_path) as fp:
                self.assertEqual(fp.read(), 'x,value\n0.5,1.5\n1.5,2.5\n2.5,0.5\n')


class TestUsageErrors(MainTestCase):

    def test_no_command(self):
        status, out, _ = self.run_main()
        self.assertEqual(status, USAGE)
        self.assertIn('usage: logspace', out)

    def test_unknown_scenario(self):
        status, _, err = self.run_main('check', '--scenario', 'no_such_scenario')
        self.assertEqual(status, USAGE)
        self.assertIn('Cannot read scenario', err)

    def test_unknown_function(self):
        status, _, err = self.run_main('norm', '--scenario', 'identity', '--function', 'y')
        self.assertEqual(status, USAGE)
        self.assertIn("Unknown function 'y'", err)

    def test_p_norm_without_p(self):
        status, _, err = self.run_main('norm', '--scenario', 'identity', '--kind', 'p')
        self.assertEqual(status, USAGE)
        self.assertIn('--p', err)

    def test_unknown_kind(self):
        status, _, _ = self.run_main('norm', '--scenario', 'identity', '--kind', 'sup')
        self.assertEqual(status, USAGE)


class TestSuiteCommand(MainTestCase):

    def test_zero_draws_pass(self):
        status, out, _ = self.run_main('suite', '--count', '0')
        self.assertEqual(status, PASSED)
        self.assertTrue(json.loads(out)['results']['passed'])

    def test_negative_count(self):
        status, _, _ = self.run_main('suite', '--count', '-1')
        self.assertEqual(status, USAGE)

    def test_injected_fault_fails(self):
        status, out, _ = self.run_main('suite', '--count', '1', '--inject-fault')
        self.assertEqual(status, FAILED)
        families = json.loads(out)['results']['families']
        self.assertFalse(families['oracle']['passed'])
