#!/usr/bin/env python
import sys
import unittest

from logspace.settings import init_settings


init_settings()
test_runner = unittest.TextTestRunner(verbosity=1)

suite = unittest.defaultTestLoader.discover('logspace', top_level_dir='.')
result = test_runner.run(suite)
if not result.wasSuccessful():
    sys.exit(len(result.failures) + len(result.errors))
