import os
import tempfile
from doctest import DocTestSuite
from unittest import TestCase

from logspace import settings as settings_module
from logspace.core.settings import Tolerances, eq_tol, quadrature_settings
from logspace.settings import (
    NO_DEFAULT,
    PrefixedSettings,
    get_setting,
    get_settings,
    init_settings,
    override_settings,
)


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(settings_module))
    return tests


SETTINGS = {
    'ARC': {
        'a': 'a',
        'b': [0, 1],
        'c': [{'c': 'c'}],
        'd': 'd',
    },
}


class TestGetSetting(TestCase):

    def get_setting(self, key, default=NO_DEFAULT):
        return get_setting(key, default=default, settings=SETTINGS)

    def test_can_traverse_into_dict(self):
        self.assertEqual(self.get_setting('ARC.a'), 'a')

    def test_can_traverse_into_dict_then_list(self):
        self.assertEqual(self.get_setting('ARC.b.0'), 0)

    def test_can_traverse_into_list_then_dict(self):
        self.assertEqual(self.get_setting('ARC.c.0.c'), 'c')

    def test_returns_default_for_non_existent_root(self):
        default = object()
        self.assertIs(self.get_setting('NOPE', default), default)

    def test_returns_default_for_non_existent_nested_setting(self):
        default = object()
        self.assertIs(self.get_setting('ARC.nope', default), default)

    def test_raises_when_not_found_and_no_default(self):
        self.assertRaises(KeyError, self.get_setting, 'NOPE')


class TestGetPrefixedSettings(TestCase):

    def setUp(self):
        super().setUp()
        defaults = {
            'abs_tol': 1e-10,
            'parent': {
                'child': 'child',
            },
            'overridden': 'default',
        }
        project = {
            'QUADRATURE': {
                'extra': 'extra',
                'overridden': 'overridden',
            },
        }
        self.settings = PrefixedSettings('QUADRATURE', defaults, settings=project)

    def test_get_from_defaults(self):
        self.assertEqual(self.settings.get('abs_tol'), 1e-10)

    def test_get_nested_from_defaults(self):
        self.assertEqual(self.settings.get('parent.child'), 'child')

    def test_get_from_project_settings(self):
        self.assertEqual(self.settings.get('extra'), 'extra')

    def test_get_setting_overridden_in_project_settings(self):
        self.assertEqual(self.settings.get('overridden'), 'overridden')

    def test_defaults_trump_passed_default(self):
        self.assertEqual(self.settings.get('abs_tol', 1.0), 1e-10)

    def test_passed_default_does_not_trump_project_setting(self):
        self.assertEqual(self.settings.get('extra', 'default'), 'extra')

    def test_get_default_for_nonexistent(self):
        self.assertEqual(self.settings.get('pants', 'jeans'), 'jeans')

    def test_item_access_raises_for_nonexistent(self):
        self.assertRaises(KeyError, lambda: self.settings['pants'])


class TestOverrideSettings(TestCase):

    def test_context_manager_merges_into_section(self):
        with override_settings(QUADRATURE={'abs_tol': 1e-12}):
            self.assertEqual(quadrature_settings.get('abs_tol'), 1e-12)
            self.assertEqual(quadrature_settings.get('rel_tol'), 1e-9)
        self.assertEqual(quadrature_settings.get('abs_tol'), 1e-10)

    def test_override_is_undone_when_an_exception_escapes(self):
        with self.assertRaises(RuntimeError):
            with override_settings(CHECKS={'eq_tol': 0.5}):
                raise RuntimeError
        self.assertEqual(eq_tol(), 1e-8)

    def test_function_decorator(self):
        @override_settings(CHECKS={'eq_tol': 0.25})
        def current():
            return eq_tol()

        self.assertEqual(current(), 0.25)
        self.assertEqual(eq_tol(), 1e-8)

    def test_tolerances_snapshot_reads_overrides(self):
        with override_settings(QUADRATURE={'panel_limit': 10}):
            self.assertEqual(Tolerances.current().panel_limit, 10)
        self.assertEqual(Tolerances.current().panel_limit, 400)


@override_settings(CHECKS={'atom_tol': 0.125})
class TestOverrideSettingsOnTestCase(TestCase):

    def test_override_applies_inside_test(self):
        self.assertEqual(get_setting('CHECKS.atom_tol'), 0.125)


class TestInitSettings(TestCase):

    def test_missing_file_gives_defaults(self):
        self.addCleanup(init_settings, configure_logging=False)
        settings = init_settings('/nonexistent/local.cfg', configure_logging=False)
        self.assertIs(settings, get_settings())
        self.assertIn('LOGGING', settings)
        self.assertIn('LOGSPACE_PACKAGE_DIR', settings)
        self.assertEqual(quadrature_settings.get('abs_tol'), 1e-10)

    def test_section_after_a_hash(self):
        with tempfile.TemporaryDirectory() as directory:
            file_name = os.path.join(directory, 'local.cfg')
            with open(file_name, 'w') as fp:
                fp.write('[other]\nCHECKS.atom_tol = 0.5\n\n[mine]\nCHECKS.atom_tol = 0.25\n')
            self.addCleanup(init_settings, configure_logging=False)
            init_settings(file_name + '#mine', configure_logging=False)
        self.assertEqual(get_setting('CHECKS.atom_tol'), 0.25)
