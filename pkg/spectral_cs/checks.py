import collections
import logging

import numpy as np

from spectral_cs.errors import SpectralError
from spectral_cs.model import JacobiCoefficients, PHASE_TOL
from spectral_cs.operator import fundamental_solutions, propagate_transfer, solve_recurrence
from spectral_cs.transforms import (DS_TOL, canonical_to_jacobi, ds_residuals,
                                    jacobi_to_canonical, sin_identity_residual)
from spectral_cs.weyl import (ASYMPTOTIC_HEIGHT, evaluate_grid, finite_measure_asymptotics,
                              herglotz_check)

try:
    from importlib.metadata import entry_points
except ImportError:
    entry_points = None


logger = logging.getLogger(__name__)

#: entry point group scanned for third party checks
ENTRY_POINT_GROUP = 'spectral_cs.checks'

Subject = collections.namedtuple('Subject', ['coefficients', 'phase', 'source'])


def make_subject(obj):
    """ Both representations of ``obj`` where they exist.

        A phase that is not Jacobi-normalized has no coefficients.
    """
    if isinstance(obj, JacobiCoefficients):
        return Subject(obj, jacobi_to_canonical(obj), 'jacobi')
    coefficients = canonical_to_jacobi(obj) if obj.is_jacobi() and obj.steps > 1 else None
    return Subject(coefficients, obj, 'canonical')


class Base(object):
    """ Base class for ``spectral_cs verify`` checks.

        Use the class docstring to provide the check description
        as it appears in ``spectral_cs verify --help``.
    """

    name = 'c'
    """ name used to select the check """

    #: representations of the subject the check needs
    requires = ('coefficients',)

    #: informational checks are reported but never fail ``verify``
    informational = False

    @classmethod
    def customize_parser(self, parser):
        """ hook to extend argparse parser with custom arguments """
        pass

    def __init__(self, args):
        """ create the check using argparse ``args`` """
        self.threshold = 0

    def applies_to(self, subject):
        return all(getattr(subject, field) is not None for field in self.requires)

    def __call__(self, subject):
        """ check a subject, return not None (the violation) if it fails """
        raise NotImplementedError('Checks must implement this method')

    def check_name(self):
        """ return the name used in reports, default is ``name`` + ``threshold`` """
        return '%s%s' % (self.name, self.threshold)


class Wronskian(Base):
    """ a_n (c_n s_{n+1} - c_{n+1} s_n) = -1 relative to the products involved """

    name = 'wronskian'

    @classmethod
    def customize_parser(self, parser):
        parser.add_argument('--wronskian-tol', type=float, default=1e-12,
                help='Largest accepted relative Wronskian residual')

    def __init__(self, args):
        self.threshold = args.wronskian_tol

    def __call__(self, subject):
        a = subject.coefficients.a
        sol = fundamental_solutions(subject.coefficients)
        c, s = sol.c, sol.s
        scale = np.maximum(1.0, np.abs(a) * (np.abs(c[:-1] * s[1:]) + np.abs(c[1:] * s[:-1])))
        worst = float(np.max(np.abs(a * sol.wronskians() + 1.0) / scale))
        if worst > self.threshold:
            return worst


class Transfer(Base):
    """ Transfer matrix products reproduce the three-term recurrence """

    name = 'transfer'

    #: spectral points the two propagations are compared at
    points = (0.5 + 0.5j, -1 + 2j, 3 - 1j, 2j, 0.0)

    @classmethod
    def customize_parser(self, parser):
        parser.add_argument('--transfer-tol', type=float, default=1e-12,
                help='Largest accepted relative difference of the propagations')

    def __init__(self, args):
        self.threshold = args.transfer_tol

    def __call__(self, subject):
        worst = 0.0
        for z in self.points:
            direct = solve_recurrence(subject.coefficients, z, 1.0, 0.5)
            product = propagate_transfer(subject.coefficients, z, 1.0, 0.5)
            scale = max(1.0, np.abs(direct).max())
            worst = max(worst, float(np.abs(direct - product).max() / scale))
        if worst > self.threshold:
            return worst


class Roundtrip(Base):
    """ Transforming to the other representation and back is the identity """

    name = 'roundtrip'

    @classmethod
    def customize_parser(self, parser):
        parser.add_argument('--roundtrip-tol', type=float, default=1e-10,
                help='Largest accepted componentwise roundtrip error')

    def __init__(self, args):
        self.threshold = args.roundtrip_tol

    def __call__(self, subject):
        if subject.source == 'jacobi':
            coeffs = subject.coefficients
            back = canonical_to_jacobi(jacobi_to_canonical(coeffs))
            worst = max(np.abs(back.a - coeffs.a).max(), np.abs(back.b - coeffs.b).max())
        else:
            phase = subject.phase
            back = jacobi_to_canonical(canonical_to_jacobi(phase))
            worst = max(np.abs(back.L - phase.L).max(), np.abs(back.phi - phase.phi).max())
        if worst > self.threshold:
            return float(worst)


class SinIdentity(Base):
    """ R_n R_{n+1} sin(phi_{n+1} - phi_n) = -1/a_n """

    name = 'sin-identity'
    requires = ('coefficients', 'phase')

    @classmethod
    def customize_parser(self, parser):
        parser.add_argument('--sin-tol', type=float, default=1e-10,
                help='Largest accepted sin-identity residual')

    def __init__(self, args):
        self.threshold = args.sin_tol

    def __call__(self, subject):
        worst = sin_identity_residual(subject.coefficients, subject.phase)
        if worst > self.threshold:
            return worst


class MEquality(Base):
    """ The Jacobi and canonical m-functions agree on the default grid """

    name = 'm-equality'
    requires = ('coefficients', 'phase')

    @classmethod
    def customize_parser(self, parser):
        parser.add_argument('--m-tol', type=float, default=1e-8,
                help='Largest accepted difference of the two m-functions')
        parser.add_argument('--m-truncation', type=int, default=None,
                help='Truncation length N (default: the stored length)')

    def __init__(self, args):
        self.threshold = args.m_tol
        self.truncation = args.m_truncation

    def __call__(self, subject):
        jacobi = evaluate_grid(subject.coefficients, N=self.truncation, source='jacobi')
        canonical = evaluate_grid(subject.phase, N=self.truncation, source='canonical')
        worst = float(np.abs(jacobi.m - canonical.m).max())
        if worst > self.threshold:
            return worst


class Herglotz(Base):
    """ Im m > 0 on the default grid """

    name = 'herglotz'
    requires = ('phase',)

    def __init__(self, args):
        self.threshold = 0

    def check_name(self):
        return self.name

    def __call__(self, subject):
        report = herglotz_check(evaluate_grid(subject.phase, source='canonical'))
        if not report.passed:
            return report.min_imag


class Asymptotics(Base):
    """ Re m(iy) and y Im m(iy) match the first singular interval at large y """

    name = 'asymptotics'
    requires = ('phase',)

    @classmethod
    def customize_parser(self, parser):
        parser.add_argument('--asymptotic-tol', type=float, default=1e-3,
                help='Largest accepted error of the constant term and the mass')
        parser.add_argument('--height', type=float, default=ASYMPTOTIC_HEIGHT,
                help='Evaluation height y')

    def __init__(self, args):
        self.threshold = args.asymptotic_tol
        self.height = args.height

    def applies_to(self, subject):
        return subject.phase is not None and abs(np.sin(subject.phase.phi[0])) > PHASE_TOL

    def __call__(self, subject):
        est = finite_measure_asymptotics(subject.phase, self.height)
        worst = max(abs(est.a_est - est.a_predicted), abs(est.mass_est - est.mass_predicted))
        if worst > self.threshold:
            return worst


class JacobiPhase(Base):
    """ The phase is pi/2 exactly on (0, 1) """

    name = 'jacobi-phase'
    requires = ('phase',)

    def __init__(self, args):
        self.threshold = PHASE_TOL

    def check_name(self):
        return self.name

    def __call__(self, subject):
        phase = subject.phase
        worst = max(abs(phase.phi[0] - np.pi / 2), abs(phase.L[0] - 1.0))
        if worst > self.threshold:
            return float(worst)


class DiscreteSchrodinger(Base):
    """ Reports whether the phase is a discrete Schrodinger phase """

    name = 'discrete-schrodinger'
    requires = ('coefficients', 'phase')
    informational = True

    @classmethod
    def customize_parser(self, parser):
        parser.add_argument('--ds-tol', type=float, default=DS_TOL,
                help='Largest accepted |R_n R_{n+1} sin(phi_{n+1} - phi_n) - 1|')

    def __init__(self, args):
        self.threshold = args.ds_tol

    def __call__(self, subject):
        worst = float(np.abs(ds_residuals(subject.phase)).max())
        if worst > self.threshold:
            return worst


#: checks shipped with the package, in reporting order
BUILTIN = [Wronskian, Transfer, Roundtrip, SinIdentity, MEquality, Herglotz, Asymptotics,
           JacobiPhase, DiscreteSchrodinger]


def available_checks():
    """ name -> check class, built-in checks first, then entry point plugins """
    checks = collections.OrderedDict((check.name, check) for check in BUILTIN)
    if entry_points is None:
        return checks
    try:
        plugins = entry_points(group=ENTRY_POINT_GROUP)
    except TypeError:
        plugins = entry_points().get(ENTRY_POINT_GROUP, [])
    for plugin in plugins:
        try:
            check = plugin.load()
        except Exception as e:
            logger.warning('cannot load check plugin %s: %s', plugin.name, e)
            continue
        checks.setdefault(check.name, check)
    return checks


def run_checks(chain, subject):
    """ (check, result) pairs for every applicable check in ``chain``.

        A check raising a ``SpectralError`` fails with the message as its result.
    """
    results = []
    for check in chain:
        if not check.applies_to(subject):
            logger.info('check %s does not apply to this input', check.name)
            continue
        try:
            result = check(subject)
        except SpectralError as e:
            result = str(e)
        if result is not None:
            log = logger.info if check.informational else logger.warning
            log('check %s: %s', check.check_name(), result)
        results.append((check, result))
    return results
