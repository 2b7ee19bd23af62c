"""
Trace-normed canonical systems J u' = z H u with step-function phases.

On a singular interval H = P_phi is a projection and J P_phi is nilpotent
(P_phi J P_phi = 0), so the solution across an interval of weight w is the
terminating series (I - z w J P_phi) u.

    >>> np.allclose(propagate_singular([0, 1], 1.0, math.pi / 2, 1j), [1j, 1])
    True
"""
import logging
import math

import numpy as np

from spectral_cs.errors import DomainError, InvariantError, RangeError
from spectral_cs.model import DiscreteCanonicalState, PHASE_TOL, projection


logger = logging.getLogger(__name__)

#: the symplectic matrix [[0, -1], [1, 0]]
J = np.array([[0.0, -1.0], [1.0, 0.0]])

__all__ = ['J', 'projection', 'normalize_angles', 'propagate_singular',
           'retreat_singular', 'propagate_phase', 'h_integral']


def normalize_angles(raw, tol=PHASE_TOL):
    """ Lift angles defined modulo pi to the unique increasing representative.

        The first angle is reduced into [0, pi) and every increment into
        (0, pi).  An increment within ``tol`` of 0 or pi is a tie and raises
        ``InvariantError('increasing-steps')``.

        >>> (normalize_angles([math.pi / 2, -math.pi, 3 * math.pi / 2]) / math.pi).round(12).tolist()
        [0.5, 1.0, 1.5]
    """
    raw = np.asarray(raw, dtype=float)
    if raw.ndim != 1 or len(raw) == 0:
        raise InvariantError('shape', 'expected a nonempty flat sequence of angles')
    increments = np.mod(np.diff(raw), np.pi)
    ties = np.flatnonzero((increments <= tol) | (increments >= np.pi - tol))
    if len(ties):
        n = ties[0] + 1
        raise InvariantError('increasing-steps',
            'angles phi_%d and phi_%d differ by a multiple of pi' % (n, n + 1))
    first = np.mod(raw[0], np.pi)
    return np.concatenate([[first], first + np.cumsum(increments)])


def _jp_apply(u, phi):
    c, s = math.cos(phi), math.sin(phi)
    cc, cs, ss = c * c, c * s, s * s
    return np.array([-cs * u[0] - ss * u[1], cc * u[0] + cs * u[1]])


def propagate_singular(u_at_a, weight, phi, z):
    """ (I - z w J P_phi) u(a), the exact solution across a singular interval.

        ``u_at_a`` may carry a trailing axis of solutions, one per entry of
        an array ``z``.
    """
    if weight < 0:
        raise DomainError('interval weight must be nonnegative, got %r' % weight)
    u = np.asarray(u_at_a, dtype=complex)
    return u - (z * weight) * _jp_apply(u, phi)


def retreat_singular(u_at_b, weight, phi, z):
    """ Inverse of ``propagate_singular``: u(a) from u(b) """
    if weight < 0:
        raise DomainError('interval weight must be nonnegative, got %r' % weight)
    u = np.asarray(u_at_b, dtype=complex)
    return u + (z * weight) * _jp_apply(u, phi)


def propagate_phase(phase, u0, z, upto=None):
    """ Apply the singular-interval factors of the first ``upto`` steps.

        The result u_0..u_upto satisfies J(u_{n+1} - u_n) = z H_{n+1} u_n with
        H_{n+1} = (L_{n+1} - L_n) P_{phi_{n+1}}.
    """
    upto = phase.steps if upto is None else upto
    if not 0 <= upto <= phase.steps:
        raise RangeError('the phase has %d steps, cannot propagate across %d'
                         % (phase.steps, upto))
    lengths = phase.lengths
    u = [np.asarray(u0, dtype=complex)]
    for n in range(upto):
        u.append(propagate_singular(u[-1], lengths[n], phase.phi[n], z))
    return DiscreteCanonicalState(u, z)


def h_integral(phase, state):
    """ sum_{n=1}^{k} u_n^* H_n u_n over the stored states """
    k = len(state) - 1
    if k > phase.steps:
        raise RangeError('state has %d steps, phase only %d' % (k, phase.steps))
    lengths = phase.lengths
    total = 0.0
    for n in range(1, k + 1):
        v = state.u[n]
        total += lengths[n - 1] * np.real(np.vdot(v, projection(phase.phi[n - 1]).dot(v)))
    return float(total)
