"""Decomposed spaces and the four-way classification of pairs.

A :class:`DecomposedSpace` is a finite disjoint union of components:
single atoms and homogeneous continua. Homogeneous components carry an
opaque ``weight_label``; labels must increase along the decomposition
and only components with the same label are comparable.

For two measures on the same space the classifier answers two
questions:

    - isometric: are ``L_log(mu)`` and ``L_log(nu)`` isometric? (C1 on
      every homogeneous component, equal atom weight sequences)
    - coincident: are they the same set of functions? (C2: ``h`` and
      ``1/h`` both bounded)

and files the pair under one of four cases::

    I    isometric, coincident
    II   isometric, not coincident
    III  not isometric, coincident
    IV   not isometric, not coincident

"""
import logging
from collections import namedtuple

from .core.classify import ess_sup_classify, invert_density
from .core.settings import checks_settings
from .core.spaces import MeasureSpace
from .exc import DomainError, IncomparableError, PreconditionError
from .isometry import check_c1, check_equivalences
from .transport import pushforward


log = logging.getLogger(__name__)


ATOM = 'atom'
HOMOGENEOUS = 'homogeneous'

MODES = ('all', 'some')


class Component(namedtuple('Component', ('label', 'space', 'kind', 'weight_label'))):

    __slots__ = ()

    def __new__(cls, label, space, kind=HOMOGENEOUS, weight_label=None):
        if kind not in (ATOM, HOMOGENEOUS):
            raise DomainError('Unknown component kind: {0!r}'.format(kind))
        if kind == ATOM and not (space.is_atomic and len(space.weights) == 1):
            raise DomainError('Atom component {0!r} must be a single atom'.format(label))
        if kind == HOMOGENEOUS and space.is_atomic:
            raise DomainError('Homogeneous component {0!r} must be a continuum'.format(label))
        return super().__new__(cls, label, space, kind, weight_label)

    @property
    def mass(self):
        return self.space.mass


class DecomposedSpace:

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise DomainError('A decomposition needs at least one component')
        labels = [c.label for c in components]
        if len(set(labels)) != len(labels):
            raise DomainError('Component labels must be unique: {0}'.format(labels))
        weights = [c.weight_label for c in components if c.kind == HOMOGENEOUS]
        try:
            ordered = all(a < b for a, b in zip(weights, weights[1:]))
        except TypeError:
            ordered = False
        if not ordered:
            raise DomainError(
                'Homogeneous weight labels must increase: {0}'.format(weights))
        for component in components:
            if not component.mass > 0:
                raise PreconditionError(
                    'Component {0!r} has no mass'.format(component.label))
        self.components = components

    @classmethod
    def single(cls, space, label='Omega'):
        if space.is_atomic:
            return cls(
                Component(name, MeasureSpace.atomic([w], labels=[name]), ATOM)
                for name, w in zip(space.labels, space.weights))
        return cls([Component(label, space, HOMOGENEOUS, 0)])

    @property
    def atoms(self):
        return tuple(c for c in self.components if c.kind == ATOM)

    @property
    def homogeneous(self):
        return tuple(c for c in self.components if c.kind == HOMOGENEOUS)

    @property
    def mass(self):
        return sum(c.mass for c in self.components)

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __repr__(self):
        return 'DecomposedSpace({0})'.format(', '.join(
            '{0.label}:{0.kind}'.format(c) for c in self.components))


def _check_structure(mu, nu):
    if len(mu.atoms) != len(nu.atoms):
        raise IncomparableError('Different numbers of atoms: {0} vs {1}'.format(
            len(mu.atoms), len(nu.atoms)))
    left = [(c.weight_label, tuple(c.space.domain)) for c in mu.homogeneous]
    right = [(c.weight_label, tuple(c.space.domain)) for c in nu.homogeneous]
    if left != right:
        raise IncomparableError(
            'Homogeneous components differ: {0} vs {1}'.format(left, right))


# Coincidence


class Coincidence(namedtuple('Coincidence', ('holds', 'h', 'h_inverse'))):

    """``h`` and ``1/h`` with their boundedness verdicts."""

    __slots__ = ()

    def __bool__(self):
        return self.holds

    def to_dict(self):
        return {
            'holds': self.holds,
            'h': self.h.to_dict(),
            'h_inverse': self.h_inverse.to_dict(),
        }


def check_coincide(h):
    """Condition C2: ``h`` and ``1/h`` are both essentially bounded."""
    h_class = ess_sup_classify(h)
    inverse_class = ess_sup_classify(invert_density(h))
    return Coincidence(h_class.bounded and inverse_class.bounded, h_class, inverse_class)


def check_41bis(m, nu):
    """Both ``d(nu)/dm`` and ``dm/d(nu)`` are bounded."""
    return check_coincide(m.density_ratio(nu))


# Isometry of decompositions


class ComponentCheck(namedtuple('ComponentCheck', (
        'label', 'kind', 'holds', 'ratio', 'masses'))):

    __slots__ = ()

    def to_dict(self):
        return {
            'label': self.label,
            'kind': self.kind,
            'c1': self.holds,
            'ratio': self.ratio,
            'masses': list(self.masses),
        }


class DecomposedVerdict(namedtuple('DecomposedVerdict', ('holds', 'mode', 'components'))):

    __slots__ = ()

    def __bool__(self):
        return self.holds

    @property
    def modes_disagree(self):
        verdicts = [c.holds for c in self.components]
        return all(verdicts) != any(verdicts)

    def to_dict(self):
        return {
            'holds': self.holds,
            'mode': self.mode,
            'modes_disagree': self.modes_disagree,
            'components': [c.to_dict() for c in self.components],
        }


def _atom_checks(mu, nu):
    """Pair atoms in sorted weight order; each atom passes if its partner matches."""
    tol = checks_settings.get('atom_tol')
    left = sorted(mu.atoms, key=lambda c: c.mass)
    right = sorted(nu.atoms, key=lambda c: c.mass)
    checks = []
    for a, b in zip(left, right):
        ratio = b.mass / a.mass
        checks.append(ComponentCheck(
            a.label, ATOM, abs(a.mass - b.mass) <= tol, ratio, (a.mass, b.mass)))
    return checks


def check_isometric_decomposed(mu, nu, mode='all'):
    """Per-component isometry of two decompositions of the same space.

    Homogeneous components must satisfy C1 and the atom weight sequences
    must match. ``mode='some'`` only asks for one passing component.

    """
    if mode not in MODES:
        raise PreconditionError('mode must be one of {0}; got {1!r}'.format(MODES, mode))
    _check_structure(mu, nu)
    checks = []
    for a, b in zip(mu.homogeneous, nu.homogeneous):
        c1 = check_c1(a.space.density_ratio(b.space), a.space)
        checks.append(ComponentCheck(
            a.label, HOMOGENEOUS, c1.holds, c1.ratio, (a.mass, b.mass)))
    checks.extend(_atom_checks(mu, nu))
    verdicts = [c.holds for c in checks]
    holds = all(verdicts) if mode == 'all' else any(verdicts)
    verdict = DecomposedVerdict(holds, mode, tuple(checks))
    if verdict.modes_disagree:
        log.info('Component verdicts differ; mode %r decides: %s', mode, holds)
    return verdict


def component_equivalences(mu, nu):
    """:func:`~logspace.isometry.check_equivalences` on each homogeneous component."""
    _check_structure(mu, nu)
    return {
        a.label: check_equivalences(a.space, b.space)
        for a, b in zip(mu.homogeneous, nu.homogeneous)
    }


# Composition with a measure-preserving map


class Check47(namedtuple('Check47', ('isometric', 'isomorphic', 'c1', 'c2'))):

    __slots__ = ()

    def to_dict(self):
        return {
            'isometric': self.isometric,
            'isomorphic': self.isomorphic,
            'c1': self.c1.to_dict(),
            'c2': self.c2.to_dict(),
        }


def check_47(mu, nu, transport):
    """Isometry and isomorphism of ``L_log(mu)`` and ``L_log(nu)`` through ``transport``.

    With ``m`` the image of ``mu`` under ``transport``: isometric iff
    C1(dm/dmu); isomorphic iff additionally C2(d(nu)/dm).

    """
    m = pushforward(mu, transport)
    c1 = check_c1(mu.density_ratio(m), mu)
    c2 = check_41bis(m, nu)
    return Check47(c1.holds, c1.holds and c2.holds, c1, c2)


# Classification


CASES = {
    (True, True): 'I',
    (True, False): 'II',
    (False, True): 'III',
    (False, False): 'IV',
}


class ClassificationReport(namedtuple('ClassificationReport', (
        'per_component', 'c2', 'isometric', 'coincident', 'case_48', 'mode'))):

    __slots__ = ()

    def to_dict(self):
        return {
            'per_component': [c.to_dict() for c in self.per_component],
            'c2': self.c2,
            'isometric': self.isometric,
            'coincident': self.coincident,
            'case': self.case_48,
            'mode': self.mode,
        }


def _as_decomposition(space):
    if isinstance(space, DecomposedSpace):
        return space
    return DecomposedSpace.single(space)


def classify_pair(mu, nu, mode='all'):
    """File ``(mu, nu)`` under case I-IV.

    ``mu`` and ``nu`` are :class:`~logspace.core.spaces.MeasureSpace` or
    :class:`DecomposedSpace` instances over the same underlying space.

    """
    if not isinstance(mu, DecomposedSpace) and not isinstance(nu, DecomposedSpace):
        mu.check_comparable(nu)
    mu_d, nu_d = _as_decomposition(mu), _as_decomposition(nu)
    isometric = check_isometric_decomposed(mu_d, nu_d, mode)
    coincident = all(
        check_coincide(a.space.density_ratio(b.space)).holds
        for a, b in zip(mu_d.homogeneous, nu_d.homogeneous))
    case = CASES[(isometric.holds, coincident)]
    log.debug('Classified %r vs %r: case %s', mu, nu, case)
    return ClassificationReport(
        per_component=isometric.components,
        c2=coincident,
        isometric=isometric.holds,
        coincident=coincident,
        case_48=case,
        mode=mode,
    )
