import io
from doctest import DocTestSuite
from unittest import TestCase

from logspace import colorize
from logspace.colorize import GREEN, ColorPrinter, Colorizer


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(colorize))
    return tests


class TTY(io.StringIO):

    def isatty(self):
        return True


class TestColorizer(TestCase):

    def test_unknown_color_name(self):
        self.assertRaises(KeyError, Colorizer().colorize, 'x', color='plaid')

    def test_custom_end(self):
        self.assertEqual(Colorizer().colorize('x', color=GREEN, end=''), '\x1b[92mx')

    def test_extra_names_stay_on_their_instance(self):
        custom = Colorizer({'note': GREEN})
        self.assertEqual(custom.note('x'), '\x1b[92mx\x1b[0m')
        self.assertFalse(hasattr(Colorizer(), 'note'))


class TestColorPrinter(TestCase):

    def test_plain_when_not_a_tty(self):
        out = io.StringIO()
        ColorPrinter().verdict(True, 'c1', file=out)
        self.assertEqual(out.getvalue(), 'c1: pass\n')

    def test_colored_on_a_tty(self):
        out = TTY()
        ColorPrinter().verdict(False, 'c2', file=out)
        self.assertEqual(out.getvalue(), '\x1b[91mc2: FAIL\x1b[0m\n')

    def test_color_switches_are_dropped_from_plain_output(self):
        out = io.StringIO()
        ColorPrinter()('one', GREEN, 'two', file=out)
        self.assertEqual(out.getvalue(), 'one two\n')
