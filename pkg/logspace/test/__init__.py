from .base import LogspaceTestCase  # noqa
