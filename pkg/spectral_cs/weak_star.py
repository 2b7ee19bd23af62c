"""
Weak-* pairings of step Hamiltonians and the non-density certificate.

Hamiltonians converge weak-* when the pairings of f^* H f against compactly
supported test functions f converge, which is equivalent to locally uniform
convergence of the m-functions.  A discrete Schrodinger phase is constant
on [1, 2), so a Jacobi phase with two different values on [1, 2) stays a
positive pairing distance away from every discrete Schrodinger phase.

    >>> cert = nondensity_certificate(counterexample_phase(), resolution=1000)
    >>> abs(cert.infima['weighted'] - 0.125) < 1e-3, abs(cert.infima['unnormalized'] - 0.25) < 2e-3
    (True, True)
"""
import logging
import math

import numpy as np

from spectral_cs import utils
from spectral_cs.errors import DomainError, InapplicableError, InvariantError, NumericalError, RangeError
from spectral_cs.model import NonDensityCertificate, StepPhase, TestFunction, TraceNormedHamiltonian
from spectral_cs.transforms import ds_second_step_length


logger = logging.getLogger(__name__)

CONVENTIONS = ('weighted', 'unnormalized')

#: distance of the swept angles from the ends of (pi/2, 3pi/2)
SWEEP_EPSILON = 1e-6
#: default number of swept angles
DEFAULT_RESOLUTION = 10000
#: resolutions below this are accepted with a warning
MIN_RESOLUTION = 1000
#: the window on which every discrete Schrodinger phase is constant
DS_WINDOW = (1.0, 2.0)
#: sweep values within this of the minimum count as ties for the argmin
ARGMIN_TIE_TOL = 1e-12


def _hamiltonian(H):
    return TraceNormedHamiltonian(H) if isinstance(H, StepPhase) else H


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise DomainError('unknown pairing convention %r, expected one of %s'
                          % (convention, CONVENTIONS))


def pairing(H, f, convention='weighted'):
    """ The integral of f^* H f, evaluated exactly on the common refinement.

        Under the ``unnormalized`` convention every piece of ``f`` contributes
        its integral divided by the piece length.

        >>> H = StepPhase([1.0], [math.pi / 2])
        >>> pairing(H, TestFunction.indicator(0, 1, (0, 1)))
        1.0
    """
    _check_convention(convention)
    phase = _hamiltonian(H).phase
    end = phase.L[-1]
    starts, stops = phase.starts, phase.L
    cos, sin = np.cos(phase.phi), np.sin(phase.phi)
    total = 0.0
    for piece in f.pieces:
        if piece.t1 > end:
            raise RangeError('test function reaches %r beyond the Hamiltonian support (0, %r)'
                             % (piece.t1, end))
        overlap = np.clip(np.minimum(stops, piece.t1) - np.maximum(starts, piece.t0), 0.0, None)
        value = float(np.sum(overlap * (piece.f1 * cos + piece.f2 * sin) ** 2))
        if convention == 'unnormalized':
            value /= piece.t1 - piece.t0
        total += value
    return total


def weak_star_discrepancy(H1, H2, F, convention='weighted'):
    """ max over f in F of |pairing(H1, f) - pairing(H2, f)| """
    F = list(F)
    if not F:
        raise InvariantError('test-set', 'the test set is empty')
    return max(abs(pairing(H1, f, convention) - pairing(H2, f, convention)) for f in F)


def counterexample_phase():
    """ pi/2 on (0, 1), 3pi/4 on [1, 3/2) and pi on [3/2, 2) """
    return StepPhase([1.0, 1.5, 2.0], [math.pi / 2, 3 * math.pi / 4, math.pi])


def ds_phase_for(psi):
    """ The first two steps of any discrete Schrodinger phase with phi_2 = psi """
    return StepPhase([1.0, ds_second_step_length(psi)], [math.pi / 2, psi])


def certificate_test_set(phase_j, window=DS_WINDOW):
    """ (chi_I, 0) for every constancy interval I of ``phase_j`` inside ``window`` """
    lo, hi = window
    if phase_j.L[-1] < hi:
        raise InapplicableError('the phase ends at %r and does not cover [%r, %r)'
                                % (float(phase_j.L[-1]), lo, hi))
    test_set = []
    for start, stop in zip(phase_j.starts, phase_j.L):
        t0, t1 = max(start, lo), min(stop, hi)
        if t1 > t0:
            test_set.append(TestFunction.indicator(t0, t1))
    if len(test_set) < 2:
        raise InapplicableError('the phase is constant on [%r, %r); no discrete Schrodinger '
                                'phase is separated from it by these test functions' % (lo, hi))
    return test_set


def _sweep_chunk(phase_j, test_set):
    def sweep(psi_chunk):
        out = np.zeros((len(CONVENTIONS), len(psi_chunk)))
        for j, psi in enumerate(psi_chunk):
            ds = ds_phase_for(psi)
            for i, convention in enumerate(CONVENTIONS):
                out[i, j] = weak_star_discrepancy(phase_j, ds, test_set, convention)
        return out
    return sweep


def sweep_angles(resolution):
    if resolution < 2:
        raise DomainError('the sweep needs at least 2 angles, got %d' % resolution)
    return np.linspace(math.pi / 2 + SWEEP_EPSILON, 3 * math.pi / 2 - SWEEP_EPSILON, resolution)


def nondensity_certificate(phase_j, resolution=DEFAULT_RESOLUTION, convention='weighted',
                           threads=None):
    """ Sweep phi_2 = psi of the discrete Schrodinger family against ``phase_j``.

        Every discrete Schrodinger phase equals psi on [1, 1 + csc^2(psi - pi/2)),
        which contains [1, 2), so one angle describes the family on the
        supports of the test functions.  Both pairing conventions are swept;
        ``convention`` selects the one reported as ``infimum``.  The argmin is
        the smallest angle among ties, values within ``ARGMIN_TIE_TOL``
        of the minimum counting as ties.  Raises ``NumericalError`` if the
        infimum is not positive.
    """
    _check_convention(convention)
    test_set = certificate_test_set(phase_j)
    if resolution < MIN_RESOLUTION:
        logger.warning('sweep resolution %d is below %d; the infimum is coarse',
                       resolution, MIN_RESOLUTION)
    psi = sweep_angles(resolution)
    threads = utils.thread_count(threads)
    chunks = [chunk for chunk in np.array_split(psi, threads) if len(chunk)]
    table = np.concatenate(list(utils.parallel_map(_sweep_chunk(phase_j, test_set), chunks,
                                                   threads)), axis=1)
    discrepancies = dict(zip(CONVENTIONS, table))
    infima = dict((name, float(values.min())) for name, values in discrepancies.items())
    values = discrepancies[convention]
    best = int(np.flatnonzero(values <= values.min() + ARGMIN_TIE_TOL)[0])
    cert = NonDensityCertificate(phase_j, test_set, infima[convention], psi[best], resolution,
                                 convention, infima, psi, discrepancies)
    logger.info('non-density sweep over %d angles: infimum %r (%s) at psi = %r; %s',
                resolution, cert.infimum, convention, cert.argmin_psi,
                ', '.join('%s %r' % item for item in sorted(infima.items())))
    if not cert.separated:
        raise NumericalError('separation failure: the sweep infimum is %r' % cert.infimum)
    return cert
