"""
Weyl-Titchmarsh m-functions of truncated Jacobi operators and step-phase
canonical systems.

Both evaluators accept a complex scalar or an array of spectral points in
the upper half plane.  For the free discrete Schrodinger operator
m(z) = (-z + sqrt(z^2 - 4)) / 2:

    >>> coeffs = JacobiCoefficients.free(100)
    >>> abs(m_jacobi(coeffs, 1j) - free_m(1j)) < 1e-12
    True
    >>> phase = jacobi_to_canonical(coeffs)
    >>> abs(m_canonical(phase, 1j) - m_jacobi(coeffs, 1j)) < 1e-10
    True
"""
import logging
import math

import numpy as np

from spectral_cs import utils
from spectral_cs.canonical import retreat_singular
from spectral_cs.errors import DomainError, InapplicableError, RangeError, TruncationError
from spectral_cs.model import (AsymptoticEstimate, HerglotzReport, JacobiCoefficients,
                               MGrid, PHASE_TOL)
from spectral_cs.transforms import canonical_to_jacobi, jacobi_to_canonical


logger = logging.getLogger(__name__)

#: default real parts of the evaluation grid
DEFAULT_GRID_X = np.linspace(-4.0, 4.0, 17)
#: default imaginary parts of the evaluation grid
DEFAULT_GRID_Y = (0.5, 1.0, 2.0, 4.0)
#: evaluation height for the large-y asymptotics
ASYMPTOTIC_HEIGHT = 1e4
#: smallest height accepted by ``finite_measure_asymptotics``
MIN_ASYMPTOTIC_HEIGHT = 1e2

SOURCES = ('jacobi', 'canonical')


def _upper(z):
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise DomainError('m-functions are evaluated for Im z > 0, got %r'
                          % complex(z.flat[np.argmin(z.imag)]))
    return z


def _result(z_in, values):
    if np.ndim(z_in) == 0:
        return complex(values)
    return values


def default_grid():
    """ z = x + iy with x in -4, -3.5, ..., 4 and y in 0.5, 1, 2, 4 """
    return np.array([complex(x, y) for y in DEFAULT_GRID_Y for x in DEFAULT_GRID_X])


def free_m(z):
    """ Closed form m-function of the free operator (a = -1, b = 0) """
    z = _upper(z)
    root = np.sqrt(z * z - 4.0)
    plus, minus = (-z + root) / 2, (-z - root) / 2
    return _result(z, np.where(plus.imag > 0, plus, minus))


def _truncated(coeffs, N):
    N = coeffs.N if N is None else N
    if N > coeffs.N:
        logger.info('extending %d stored coefficient pairs to N=%d by repeating the last pair',
                    coeffs.N, N)
    return coeffs.extended(N)


def m_jacobi(coeffs, z, N=None):
    """ m(z) = y_1 / y_0 for the solution with y_{N+1} = 0.

        The ratios q_n = y_n / y_{n-1} satisfy
        q_n = a_{n-1} / (z - b_n - a_n q_{n+1}) with q_{N+1} = 0, which is
        the downward recurrence without overflow.
    """
    z_in = z
    z = _upper(z)
    coeffs = _truncated(coeffs, N)
    a, b = coeffs.a, coeffs.b
    q = np.zeros_like(z)
    with np.errstate(divide='ignore', invalid='ignore'):
        for n in range(coeffs.N, 0, -1):
            q = a[n - 1] / ((z - b[n - 1]) - a[n] * q)
    if not np.all(np.isfinite(q)):
        raise TruncationError('y_0 vanished at N=%d; increase N' % coeffs.N)
    return _result(z_in, q)


def m_jacobi_lower(coeffs, z, N=None):
    """ m(z) for Im z < 0 by reflection, m(conj z) = conj m(z) """
    z_in = z
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag >= 0):
        raise DomainError('reflection is for Im z < 0')
    return _result(z_in, np.conj(m_jacobi(coeffs, np.conj(z), N)))


def _extended_phase(phase, N):
    """ ``phase`` with at least N + 1 steps.

        A Jacobi-normalized phase is extended through its coefficients, so
        the tail repeats the last (a_N, b_N) pair as ``m_jacobi`` does.  Any
        other phase repeats its last step length and angle increment.
    """
    if N + 1 <= phase.steps:
        return phase
    if phase.is_jacobi() and phase.steps > 1:
        coeffs = canonical_to_jacobi(phase)
        logger.info('extending a %d-step Jacobi phase to %d steps by repeating the last '
                    'coefficient pair', phase.steps, N + 1)
        return jacobi_to_canonical(coeffs.extended(N))
    logger.info('extending a %d-step phase to %d steps by repeating the last step',
                phase.steps, N + 1)
    return phase.extended(N + 1)


def m_canonical(phase, z, N=None):
    """ m(z) = u^2(0) / u^1(0) for the truncated canonical system.

        The solution ends at L_N in the kernel of P_{phi_{N+1}} and is carried
        back to 0 across the singular intervals N..1.  ``N`` defaults to
        K - 1 for a K-step phase; longer truncations follow ``_extended_phase``.
        No Jacobi normalization is required.
    """
    z_in = z
    z = _upper(z)
    N = max(1, phase.steps - 1) if N is None else N
    if N < 1:
        raise RangeError('truncation length must be at least 1, got %d' % N)
    phase = _extended_phase(phase, N)
    lengths, phi = phase.lengths, phase.phi
    ones = np.ones_like(z)
    u = np.array([math.sin(phi[N]) * ones, -math.cos(phi[N]) * ones])
    for k in range(N - 1, -1, -1):
        u = retreat_singular(u, lengths[k], phi[k], z)
        u = u / np.maximum(np.abs(u[0]), np.abs(u[1]))
    if np.any(u[0] == 0):
        raise TruncationError('u^1(0) vanished at N=%d; increase N' % N)
    return _result(z_in, u[1] / u[0])


def _evaluator(subject, source, N):
    if source == 'jacobi':
        coeffs = subject if isinstance(subject, JacobiCoefficients) else canonical_to_jacobi(subject)
        return lambda z: m_jacobi(coeffs, z, N), coeffs.N if N is None else N
    if source == 'canonical':
        if isinstance(subject, JacobiCoefficients):
            longer = N is not None and N > subject.N
            phase = jacobi_to_canonical(_truncated(subject, N) if longer else subject)
        else:
            phase = subject if N is None else _extended_phase(subject, N)
        return lambda z: m_canonical(phase, z, N), max(1, phase.steps - 1) if N is None else N
    raise DomainError('unknown m-function source %r, expected one of %s' % (source, SOURCES))


def evaluate_grid(subject, points=None, N=None, source=None, threads=None):
    """ Evaluate m over ``points`` (default: ``default_grid()``) into an ``MGrid``.

        ``subject`` is a ``JacobiCoefficients`` or a ``StepPhase``; ``source``
        picks the evaluator and defaults to the one matching the subject.
        The points are split into chunks evaluated by ``utils.parallel_map``;
        the result keeps the order of ``points``.
    """
    points = default_grid() if points is None else _upper(points).ravel()
    if not len(points):
        raise DomainError('no spectral points to evaluate')
    if source is None:
        source = 'jacobi' if isinstance(subject, JacobiCoefficients) else 'canonical'
    evaluate, used_N = _evaluator(subject, source, N)
    threads = utils.thread_count(threads)
    chunks = [chunk for chunk in np.array_split(points, threads) if len(chunk)]
    values = np.concatenate(list(utils.parallel_map(evaluate, chunks, threads)))
    logger.debug('evaluated %d points with source=%s N=%d', len(points), source, used_N)
    return MGrid(zip(points, values), N=used_N, source=source)


def herglotz_check(grid):
    """ Check Im m > 0 at every point of ``grid`` """
    if not len(grid):
        raise DomainError('empty grid')
    imag = grid.m.imag
    worst = int(np.argmin(imag))
    violations = [complex(z) for z, m in grid if m.imag <= 0]
    report = HerglotzReport(not violations, float(imag[worst]), complex(grid.z[worst]), violations)
    if violations:
        logger.warning('Herglotz property fails at %d of %d points, worst Im m = %r at z = %r',
                       len(violations), len(grid), report.min_imag, report.argmin_z)
    return report


def finite_measure_asymptotics(phase, y=ASYMPTOTIC_HEIGHT, N=None):
    """ Constant term and total mass of the measure from m(iy) at large y.

        If the phase is phi on an initial singular interval (0, l) with
        sin phi != 0, then Re m(iy) -> -cot phi and y Im m(iy) -> 1/(l sin^2 phi).
        The sign of the constant term follows from m = u^2(0) / u^1(0) with
        J = [[0, -1], [1, 0]].
    """
    if y < MIN_ASYMPTOTIC_HEIGHT:
        raise DomainError('asymptotics need y >= %g, got %r' % (MIN_ASYMPTOTIC_HEIGHT, y))
    phi, l = phase.phi[0], phase.L[0]
    if abs(math.sin(phi)) <= PHASE_TOL:
        raise InapplicableError('the initial interval has phi = 0 mod pi; '
                                'the m-function has a z term there')
    m = m_canonical(phase, 1j * y, N)
    return AsymptoticEstimate(a_est=m.real, mass_est=y * m.imag, y_used=float(y),
                              a_predicted=-math.cos(phi) / math.sin(phi),
                              mass_predicted=1.0 / (l * math.sin(phi) ** 2))
