"""Optional results that can't be confused with ``None``.

Searches that may come up empty return an :class:`Option`:
:class:`Some` wraps a found value and :const:`Null` says nothing was
found. The truth value of an option says whether something was found,
independent of the wrapped value, so even an empty permutation is
unambiguous::

    >>> found = Some((1, 2, 0))
    >>> bool(found), found.unwrap()
    (True, (1, 2, 0))
    >>> bool(Some(())), bool(Null)
    (True, False)
    >>> Null.unwrap(default=())
    ()
    >>> str(found), str(Null)
    ('Some((1, 2, 0))', 'Null')

"""


class Option:

    def __init__(self, value):
        self.value = value

    def __bool__(self):
        return isinstance(self, Some)

    def unwrap(self, default=None):
        """Return the value if :class:`Some`; else ``default``.

        Unwrapping :const:`Null` without a default is a ``TypeError``.

        """
        if self:
            return self.value
        if default is None:
            raise TypeError('Cannot unwrap Null')
        return default

    def __eq__(self, other):
        if not isinstance(other, Option):
            return NotImplemented
        return type(self) is type(other) and self.value == other.value

    def __hash__(self):
        return hash((type(self).__name__, self.value))

    def __str__(self):
        return 'Some({0.value!r})'.format(self) if self else 'Null'

    __repr__ = __str__


Some = type('Some', (Option,), {})
Null = type('Null', (Option,), {})(None)
