#!/usr/bin/env python
'''Jacobi operators, trace-normed canonical systems and their m-functions.

A half-line Jacobi operator with off-diagonal coefficients a_n < 0 (a_0 = -1)
and diagonal coefficients b_n acts through the three-term recurrence

    a_{n-1} y_{n-1} + a_n y_{n+1} + b_n y_n = z y_n.

Every such operator is a canonical system J u' = z H u in disguise: the
Hamiltonian is the projection onto (cos phi(t), sin phi(t)) for a step phase
phi that is pi/2 on (0, 1) and jumps by less than pi at every breakpoint.
``spectral_cs`` computes the transformation in both directions, evaluates the
Weyl-Titchmarsh m-functions of both pictures, recognises the discrete
Schrodinger operators (a_n = -1) among the phases and certifies that some
Jacobi phase stays away from all of them.

Coefficients are ``JacobiCoefficients``; ``a`` holds a_0..a_N and ``b`` holds
b_1..b_N.  The free discrete Schrodinger operator has a = -1 and b = 0::

    >>> import spectral_cs
    >>> free = spectral_cs.JacobiCoefficients.free(4)
    >>> free
    JacobiCoefficients(N=4, bound=1.0, schrodinger=True)

Its phase takes the values pi/2, pi, 3pi/2, ... on unit steps::

    >>> phase = spectral_cs.jacobi_to_canonical(free)
    >>> phase
    StepPhase(steps=5, L_K=5.0)
    >>> phase.L.tolist()
    [1.0, 2.0, 3.0, 4.0, 5.0]

and converting back recovers the coefficients::

    >>> back = spectral_cs.canonical_to_jacobi(phase)
    >>> back.a.tolist(), [abs(x) < 1e-12 for x in back.b]
    ([-1.0, -1.0, -1.0, -1.0, -1.0], [True, True, True, True])

Both m-functions take points of the upper half plane.  For the free operator
m(i) = i (sqrt(5) - 1) / 2::

    >>> long_free = spectral_cs.JacobiCoefficients.free(200)
    >>> m = spectral_cs.m_jacobi(long_free, 1j)
    >>> round(m.imag, 10), abs(m.real) < 1e-12
    (0.6180339887, True)
    >>> abs(spectral_cs.m_canonical(spectral_cs.jacobi_to_canonical(long_free), 1j) - m) < 1e-10
    True

A phase is read from and written to JSON with ``Reader`` and ``Writer``::

    >>> import io
    >>> reader = spectral_cs.Reader(io.StringIO('{"L": [1, 3], "phi": [1.5707963267948966, 2.356194490192345]}'))
    >>> ds = reader.read()
    >>> [round(x, 12) for x in spectral_cs.ds_to_schrodinger(ds).tolist()]
    [1.0]

The discrete Schrodinger phases are constant on [1, 2), so the Jacobi phase
which is 3pi/4 on [1, 3/2) and pi on [3/2, 2) is separated from all of them.
``nondensity_certificate`` sweeps the second angle psi of the discrete
Schrodinger family and reports the smallest pairing distance::

    >>> cert = spectral_cs.nondensity_certificate(spectral_cs.counterexample_phase(),
    ...                                           resolution=1000)
    >>> cert.separated, sorted(cert.infima)
    (True, ['unnormalized', 'weighted'])

Failures raise subclasses of ``SpectralError`` naming what went wrong::

    >>> spectral_cs.StepPhase([1, 2], [1.5707963267948966, 1.5707963267948966])
    Traceback (most recent call last):
    ...
    spectral_cs.errors.InvariantError: [increasing-steps] phi_2 - phi_1 = 0.0 is not in (0, pi)

The command line frontend ``spectral-cs`` wraps these operations in the
verbs ``convert``, ``mfunc``, ``verify`` and ``certify``.
'''

from spectral_cs.errors import (SpectralError, ParseError, InvariantError, DegenerateInputError,
                                NotDiscreteSchrodingerError, RangeError, DomainError,
                                InapplicableError, NumericalError, TruncationError)
from spectral_cs.model import (JacobiCoefficients, FundamentalSolutions, StepPhase,
                               TraceNormedHamiltonian, DiscreteCanonicalState,
                               PolarSolutionData, MGrid, AsymptoticEstimate, TestFunction,
                               NonDensityCertificate)
from spectral_cs.operator import (transfer_matrix, fundamental_solutions, recover_a,
                                  recover_b)
from spectral_cs.canonical import (projection, propagate_singular, propagate_phase,
                                   h_integral, normalize_angles)
from spectral_cs.transforms import (jacobi_to_canonical, canonical_to_jacobi,
                                    ds_constraint_residual, ds_to_schrodinger,
                                    ds_second_step_length)
from spectral_cs.weyl import (m_jacobi, m_canonical, herglotz_check,
                              finite_measure_asymptotics, evaluate_grid)
from spectral_cs.weak_star import (pairing, weak_star_discrepancy, nondensity_certificate,
                                   counterexample_phase)
from spectral_cs.parser import Reader, Writer
from spectral_cs.checks import Base as Check

VERSION = '0.1.0'
