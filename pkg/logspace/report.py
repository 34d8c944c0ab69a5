"""Machine-readable command reports.

Reports serialize deterministically (sorted keys, fixed float repr,
non-finite floats as strings) so identical inputs give byte-identical
output::

    >>> report = Report('identity', 'check', {'c1': True, 'ratio': 1.0}, seed=0)
    >>> print(report.to_json(tolerances=False))  # doctest: +ELLIPSIS
    {
      "command": "check",
      "provenance": {
        "seed": 0,
        "version": "..."
      },
      "results": {
        "c1": true,
        "ratio": 1.0
      },
      "scenario": "identity"
    }

"""
import csv
import json
import math

import numpy as np

from . import __version__
from .core.settings import (
    CHECKS_DEFAULTS,
    QUADRATURE_DEFAULTS,
    checks_settings,
    quadrature_settings,
)


def jsonable(value):
    """Convert ``value`` to plain JSON types.

    Objects with ``to_dict`` are converted through it; tuples become
    lists; numpy scalars become Python numbers; ``inf`` and ``nan``
    become the strings "inf", "-inf" and "nan".

    """
    if hasattr(value, 'to_dict'):
        return jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return value
    return value


def current_tolerances():
    return {
        'QUADRATURE': {name: quadrature_settings.get(name) for name in QUADRATURE_DEFAULTS},
        'CHECKS': {name: checks_settings.get(name) for name in CHECKS_DEFAULTS},
    }


class Report:

    """The outcome of one command.

    ``passed`` decides the exit status: 0 when it holds, 1 otherwise.
    ``samples`` are ``(x, value)`` rows for :meth:`write_csv`.

    """

    def __init__(self, scenario, command, results, seed=None, passed=True, samples=None):
        self.scenario = scenario
        self.command = command
        self.results = results
        self.seed = seed
        self.passed = passed
        self.samples = samples
        self.tolerances = current_tolerances()

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def to_dict(self, tolerances=True):
        provenance = {'version': __version__, 'seed': self.seed}
        if tolerances:
            provenance['tolerances'] = self.tolerances
        return jsonable({
            'scenario': self.scenario,
            'command': self.command,
            'results': self.results,
            'provenance': provenance,
        })

    def to_json(self, tolerances=True):
        return json.dumps(
            self.to_dict(tolerances), indent=2, sort_keys=True, allow_nan=False)

    def write_json(self, path):
        with open(path, 'w') as fp:
            fp.write(self.to_json())
            fp.write('\n')

    def write_csv(self, path):
        with open(path, 'w', newline='') as fp:
            writer = csv.writer(fp, lineterminator='\n')
            writer.writerow(['x', 'value'])
            for x, value in self.samples or ():
                writer.writerow([repr(float(x)), repr(float(value))])

    def __repr__(self):
        return 'Report({0.scenario!r}, {0.command!r}, passed={0.passed})'.format(self)
