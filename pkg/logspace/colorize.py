"""Colorize verdict lines for the terminal.

Typical usage looks like this::

    >>> from logspace.colorize import colorizer, printer
    >>> colorizer.fail('c1: False')
    '\\x1b[91mc1: False\\x1b[0m'
    >>> colorizer.verdict(True, 'c1')
    '\\x1b[92mc1: pass\\x1b[0m'
    >>> printer.verdict(False, 'c2')
    c2: FAIL

The printer only colorizes when its output is a TTY, so piping a
command's summary to a file gives plain text.

"""
import sys
from collections import namedtuple


class Color(namedtuple('Color', ('name', 'code'))):

    __slots__ = ()

    def __str__(self):
        return self.code


NONE = Color('none', '')
RESET = Color('reset', '\033[0m')
RED = Color('red', '\033[91m')
GREEN = Color('green', '\033[92m')
YELLOW = Color('yellow', '\033[93m')

COLOR_MAP = {
    'none': NONE,
    'reset': RESET,
    'pass': GREEN,
    'fail': RED,
    'warning': YELLOW,
    'error': RED,
}


class _Base:

    """Every color map name is also a method: ``colorizer.fail(...)``.

        >>> colorizer.warning('slow')
        '\\x1b[93mslow\\x1b[0m'
        >>> hasattr(colorizer, 'pants')
        False

    """

    color_map = COLOR_MAP

    def __getattr__(self, name):
        if name.startswith('_') or name not in self.color_map:
            raise AttributeError(name)

        def method(*args, **kwargs):
            kwargs['color'] = name
            return self(*args, **kwargs)

        method.__name__ = name
        return method

    def verdict(self, holds, label, **kwargs):
        """``label: pass`` in the pass color or ``label: FAIL`` in the fail color."""
        kwargs['color'] = 'pass' if holds else 'fail'
        return self('{0}: {1}'.format(label, 'pass' if holds else 'FAIL'), **kwargs)


class Colorizer(_Base):

    """Colorize strings.

        >>> colorizer = Colorizer({'pass': YELLOW})
        >>> colorizer.colorize('plain')
        'plain\\x1b[0m'
        >>> colorizer.colorize(RED, 'red', GREEN, 'green')
        '\\x1b[91mred \\x1b[92mgreen\\x1b[0m'
        >>> colorizer.verdict(True, 'iv')
        '\\x1b[93miv: pass\\x1b[0m'

    """

    def __init__(self, color_map=None):
        self.color_map = dict(COLOR_MAP, **(color_map or {}))

    def colorize(self, *args, color=NONE, sep=' ', end=None):
        """Join ``args`` into one colorized string.

        ``color`` is a name from the color map or a :class:`Color`;
        :class:`Color` instances in ``args`` switch color mid-string.

        """
        if not isinstance(color, Color):
            color = self.color_map[color]
        parts = [color.code]
        words = []
        for arg in args:
            if isinstance(arg, Color):
                if words:
                    parts.append(sep.join(words) + sep)
                parts.append(arg.code)
                words = []
            else:
                words.append(str(arg))
        parts.append(sep.join(words))
        parts.append(self.color_map['reset'].code if end is None else end)
        return ''.join(parts)

    __call__ = colorize


class ColorPrinter(_Base):

    """Print in color when the output is a TTY.

        >>> printer = ColorPrinter()
        >>> printer.error('no such scenario')
        no such scenario
        >>> printer('plain', 'words')
        plain words

    """

    def __init__(self, color_map=None):
        self.colorizer = Colorizer(color_map)
        self.color_map = self.colorizer.color_map

    def print(self, *args, color=NONE, file=None, **kwargs):
        file = sys.stdout if file is None else file
        if getattr(file, 'isatty', lambda: False)():
            print(self.colorizer(*args, color=color), file=file, **kwargs)
        else:
            print(*(a for a in args if not isinstance(a, Color)), file=file, **kwargs)

    __call__ = print


colorizer = Colorizer()
printer = ColorPrinter()
