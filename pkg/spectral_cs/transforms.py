"""
Jacobi operators as canonical systems and back.

Writing c_n + i s_n = R_n exp(i phi_n), a Jacobi operator is the canonical
system with the step phase phi_n on [L_{n-1}, L_n), L_n = R_1^2 + ... + R_n^2.
The phase starts with pi/2 on (0, 1) and increases by less than pi at every
breakpoint; conversely every such phase comes from a Jacobi operator.

    >>> phase = jacobi_to_canonical(JacobiCoefficients.free(3))
    >>> phase.L.tolist(), (phase.phi / math.pi).round(12).tolist()
    ([1.0, 2.0, 3.0, 4.0], [0.5, 1.0, 1.5, 2.0])
    >>> canonical_to_jacobi(phase).a.tolist()
    [-1.0, -1.0, -1.0, -1.0]
"""
import logging
import math

import numpy as np

from spectral_cs.errors import (DomainError, InvariantError, NotDiscreteSchrodingerError,
                                NumericalError, RangeError)
from spectral_cs.model import (FundamentalSolutions, JacobiCoefficients,
                               PHASE_TOL, PolarSolutionData, StepPhase)
from spectral_cs.operator import fundamental_solutions, recover_coefficients


logger = logging.getLogger(__name__)

#: absolute tolerance on R_n R_{n+1} sin(phi_{n+1} - phi_n) - 1
DS_TOL = 1e-9


def polar_data(sol):
    """ R_n and atan2(s_n, c_n) for n = 1..N+1 """
    c, s = sol.c[1:], sol.s[1:]
    return PolarSolutionData(np.hypot(c, s), np.arctan2(s, c))


def jacobi_to_canonical(coeffs):
    """ The step phase of the canonical system sharing the m-function of ``coeffs``.

        An operator with N coefficient pairs gives N + 1 steps.  Each
        increment is atan2(c_n s_{n+1} - c_{n+1} s_n, c_n c_{n+1} + s_n s_{n+1})
        with the cross term taken from the Wronskian identity, -1 / a_n, so
        it lies in (0, pi) for every valid operator.  ``NumericalError`` is
        raised when a step falls below double precision of the running angle
        or breakpoint.
    """
    sol = fundamental_solutions(coeffs)
    c, s = sol.c[1:], sol.s[1:]
    with np.errstate(over='ignore'):
        lengths = c * c + s * s
        L = np.cumsum(lengths)
    if not np.isfinite(L[-1]):
        raise NumericalError('L_n overflows within N=%d steps' % coeffs.N)
    polar = polar_data(sol)
    increments = np.arctan2(-1.0 / coeffs.a[1:], c[:-1] * c[1:] + s[:-1] * s[1:])
    phi = np.mod(polar.raw_phi[0], np.pi) + np.concatenate([[0.0], np.cumsum(increments)])
    stalled = np.flatnonzero((np.diff(phi) <= 0) | (np.diff(L) <= 0))
    if len(stalled):
        n = int(stalled[0]) + 1
        raise NumericalError('step %d of the phase is below double precision '
                             '(increment %.3g at phi_%d = %.17g, R_%d^2 = %.3g)'
                             % (n + 1, increments[n - 1], n, phi[n - 1], n + 1, lengths[n]))
    logger.debug('phase of N=%d: smallest increment %.3g, L_K = %.3g',
                 coeffs.N, increments.min() if len(increments) else math.pi, L[-1])
    return StepPhase(L, phi)


def canonical_to_jacobi(phase, bound=None):
    """ The Jacobi coefficients of a Jacobi-normalized phase.

        A K-step phase determines a_0..a_{K-1} and b_1..b_{K-1}.  ``bound``
        defaults to max(|a_n|, |b_n|).
    """
    phase.validate_jacobi()
    if phase.steps < 2:
        raise InvariantError('shape', 'at least two steps are needed to recover b_1')
    R = phase.R
    c = np.concatenate([[1.0], R * np.cos(phase.phi)])
    s = np.concatenate([[0.0], R * np.sin(phase.phi)])
    # the first step is pi/2 on (0, 1) up to PHASE_TOL
    c[1], s[1] = 0.0, 1.0
    return recover_coefficients(FundamentalSolutions(c, s), bound)


def sin_identity_residual(coeffs, phase):
    """ max_n |R_n R_{n+1} sin(phi_{n+1} - phi_n) + 1/a_n| over the common range """
    R, dphi = phase.R, np.diff(phase.phi)
    n = min(len(dphi), coeffs.N)
    if n == 0:
        return 0.0
    lhs = R[:n] * R[1:n + 1] * np.sin(dphi[:n])
    return float(np.max(np.abs(lhs + 1.0 / coeffs.a[1:n + 1])))


def ds_residuals(phase):
    """ R_n R_{n+1} sin(phi_{n+1} - phi_n) - 1 for n = 1..K-1 """
    R = phase.R
    return R[:-1] * R[1:] * np.sin(np.diff(phase.phi)) - 1.0


def ds_constraint_residual(phase, n):
    """ R_n R_{n+1} sin(phi_{n+1} - phi_n) - 1, zero when step n is discrete Schrodinger.

        >>> phase = StepPhase([1, 3], [math.pi / 2, 3 * math.pi / 4])
        >>> abs(ds_constraint_residual(phase, 1)) < 1e-15
        True
    """
    if not 1 <= n <= phase.steps - 1:
        raise RangeError('residual index %d is outside 1..%d' % (n, phase.steps - 1))
    return float(ds_residuals(phase)[n - 1])


def ds_to_schrodinger(phase, tol=DS_TOL):
    """ The potential b_1..b_{K-1} of a discrete Schrodinger phase.

        b_{n+1} = R_n R_{n+2} sin(phi_{n+2} - phi_n) with R_0 = 1, phi_0 = 0.
        Raises ``NotDiscreteSchrodingerError`` with the worst residual when
        some step violates R_n R_{n+1} sin(phi_{n+1} - phi_n) = 1 by more
        than ``tol``.
    """
    phase.validate_jacobi()
    if phase.steps < 2:
        raise InvariantError('shape', 'at least two steps are needed to recover b_1')
    residuals = ds_residuals(phase)
    worst = int(np.argmax(np.abs(residuals)))
    logger.debug('discrete Schrodinger residual %.3g at n=%d', residuals[worst], worst + 1)
    if abs(residuals[worst]) > tol:
        raise NotDiscreteSchrodingerError(float(residuals[worst]), worst + 1)
    R = np.concatenate([[1.0], phase.R])
    phi = np.concatenate([[0.0], phase.phi])
    return R[:-2] * R[2:] * np.sin(phi[2:] - phi[:-2])


def is_discrete_schrodinger(phase, tol=DS_TOL):
    if not phase.is_jacobi() or phase.steps < 2:
        return False
    return bool(np.all(np.abs(ds_residuals(phase)) <= tol))


def ds_second_step_length(phi2):
    """ L_2 = 1 + csc^2(phi_2 - pi/2) for a discrete Schrodinger phase.

        >>> ds_second_step_length(math.pi)
        2.0
    """
    x = phi2 - math.pi / 2
    if not PHASE_TOL < x < math.pi - PHASE_TOL:
        raise DomainError('phi_2 = %r is outside (pi/2, 3pi/2)' % phi2)
    return 1.0 + 1.0 / math.sin(x) ** 2


def ds_phase_from_angles(phi):
    """ The discrete Schrodinger phase with the given angles.

        The step lengths follow from R_1 = 1 and
        R_{n+1} = 1 / (R_n sin(phi_{n+1} - phi_n)).
    """
    phi = np.asarray(phi, dtype=float)
    if len(phi) == 0 or abs(phi[0] - math.pi / 2) > PHASE_TOL:
        raise InvariantError('jacobi-normalization', 'a discrete Schrodinger phase starts at pi/2')
    increments = np.diff(phi)
    bad = np.flatnonzero((increments <= PHASE_TOL) | (increments >= math.pi - PHASE_TOL))
    if len(bad):
        raise InvariantError('increasing-steps',
            'phi_%d - phi_%d is not in (0, pi)' % (bad[0] + 2, bad[0] + 1))
    R = np.ones(len(phi))
    for n, step in enumerate(increments):
        R[n + 1] = 1.0 / (R[n] * math.sin(step))
    return StepPhase(np.cumsum(R ** 2), phi)
