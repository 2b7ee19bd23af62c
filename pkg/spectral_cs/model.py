import collections
import math

import numpy as np

from spectral_cs.errors import InvariantError, RangeError, DomainError


#: absolute tolerance for constructed quantities (phi_1 = pi/2, L_1 = 1, a_0 = -1)
PHASE_TOL = 1e-12

_J = np.array([[0.0, -1.0], [1.0, 0.0]])


def _frozen(values, name, dtype=float):
    arr = np.array(values, dtype=dtype)
    if arr.ndim != 1:
        raise InvariantError('shape', '%s must be a flat sequence' % name)
    if not np.all(np.isfinite(arr)):
        raise InvariantError('finite', '%s contains non-finite values' % name)
    arr.flags.writeable = False
    return arr


class JacobiCoefficients(object):
    """ Truncated coefficients of a half-line Jacobi operator.

        ``a`` holds a_0..a_N and ``b`` holds b_1..b_N, so ``b[n - 1]`` is
        b_n.  The boundary coefficient a_0 is fixed to -1 and every a_n is
        negative.  ``bound`` is the declared sup-norm bound B; it is checked,
        never inferred.
    """

    __slots__ = ['a', 'b', 'bound']

    def __init__(self, a, b, bound):
        a = np.array(_frozen(a, 'a'))
        b = _frozen(b, 'b')
        if len(b) < 1:
            raise InvariantError('shape', 'at least one diagonal coefficient b_1 is required')
        if len(a) != len(b) + 1:
            raise InvariantError('shape',
                'expected a_0..a_N and b_1..b_N, got %d and %d values' % (len(a), len(b)))
        if abs(a[0] + 1.0) > PHASE_TOL:
            raise InvariantError('boundary-coefficient', 'a_0 must be -1, got %r' % float(a[0]))
        a[0] = -1.0
        positive = np.flatnonzero(a >= 0)
        if len(positive):
            raise InvariantError('negative-off-diagonal',
                'a_%d = %r is not negative' % (positive[0], float(a[positive[0]])))
        bound = float(bound)
        if not (bound > 0 and math.isfinite(bound)):
            raise InvariantError('coefficient-bound', 'bound must be a positive real, got %r' % bound)
        worst = max(np.abs(a).max(), np.abs(b).max())
        if worst > bound:
            raise InvariantError('coefficient-bound',
                'max(|a_n|, |b_n|) = %r exceeds the declared bound %r' % (float(worst), bound))
        a.flags.writeable = False
        #: off-diagonal coefficients a_0..a_N
        self.a = a
        #: diagonal coefficients b_1..b_N
        self.b = b
        #: declared bound B
        self.bound = bound

    @classmethod
    def free(cls, N):
        """ The free discrete Schrodinger operator, a = -1 and b = 0 """
        return cls(-np.ones(N + 1), np.zeros(N), 1.0)

    @classmethod
    def schrodinger(cls, b, bound=None):
        """ Discrete Schrodinger operator (a = -1) with potential b_1..b_N """
        b = np.asarray(b, dtype=float)
        if bound is None:
            bound = max(1.0, float(np.abs(b).max()) if len(b) else 1.0)
        return cls(-np.ones(len(b) + 1), b, bound)

    @property
    def N(self):
        """ The truncation length """
        return len(self.b)

    @property
    def is_schrodinger(self):
        return bool(np.all(self.a == -1.0))

    def a_n(self, n):
        if not 0 <= n <= self.N:
            raise RangeError('a_%d is outside the stored range 0..%d' % (n, self.N))
        return self.a[n]

    def b_n(self, n):
        if not 1 <= n <= self.N:
            raise RangeError('b_%d is outside the stored range 1..%d' % (n, self.N))
        return self.b[n - 1]

    def extended(self, N):
        """ Coefficients truncated or extended to length ``N``.

            Beyond the stored range the last stored pair (a_N, b_N) is
            repeated, which keeps the declared bound.
        """
        if N < 1:
            raise RangeError('truncation length must be at least 1, got %d' % N)
        if N <= self.N:
            return JacobiCoefficients(self.a[:N + 1], self.b[:N], self.bound)
        extra = N - self.N
        a = np.concatenate([self.a, np.repeat(self.a[-1], extra)])
        b = np.concatenate([self.b, np.repeat(self.b[-1], extra)])
        return JacobiCoefficients(a, b, self.bound)

    def __eq__(self, other):
        if not isinstance(other, JacobiCoefficients):
            return NotImplemented
        return (np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b)
                and self.bound == other.bound)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __repr__(self):
        return 'JacobiCoefficients(N=%d, bound=%r, schrodinger=%s)' % (
            self.N, self.bound, self.is_schrodinger)

    def __getstate__(self):
        return dict((attr, getattr(self, attr)) for attr in self.__slots__)

    def __setstate__(self, state):
        for attr in self.__slots__:
            setattr(self, attr, state.get(attr))


class FundamentalSolutions(object):
    """ The zero-energy solutions c and s, indexed 0..N+1.

        c_0 = s_1 = 1 and c_1 = s_0 = 0.
    """

    __slots__ = ['c', 's']

    def __init__(self, c, s):
        c = _frozen(c, 'c')
        s = _frozen(s, 's')
        if len(c) != len(s) or len(c) < 2:
            raise InvariantError('shape', 'c and s must have the same length, at least 2')
        if (c[0], c[1], s[0], s[1]) != (1.0, 0.0, 0.0, 1.0):
            raise InvariantError('initial-conditions', 'expected c_0 = s_1 = 1 and c_1 = s_0 = 0')
        self.c = c
        self.s = s

    @property
    def N(self):
        return len(self.c) - 2

    def wronskian(self, n):
        """ c_n s_{n+1} - c_{n+1} s_n """
        if not 0 <= n <= self.N:
            raise RangeError('Wronskian index %d is outside 0..%d' % (n, self.N))
        return self.c[n] * self.s[n + 1] - self.c[n + 1] * self.s[n]

    def wronskians(self):
        return self.c[:-1] * self.s[1:] - self.c[1:] * self.s[:-1]

    def __repr__(self):
        return 'FundamentalSolutions(N=%d)' % self.N


class PolarSolutionData(object):
    """ c_n + i s_n = R_n exp(i phi_n) for n >= 1, angles before normalization """

    __slots__ = ['R', 'raw_phi']

    def __init__(self, R, raw_phi):
        R = _frozen(R, 'R')
        raw_phi = _frozen(raw_phi, 'raw_phi')
        if len(R) != len(raw_phi):
            raise InvariantError('shape', 'R and raw_phi must have the same length')
        if np.any(R <= 0):
            raise InvariantError('positive-radius', 'R_n = 0 at n=%d' % (np.argmin(R) + 1))
        #: radii R_1, R_2, ...
        self.R = R
        #: atan2(s_n, c_n), unreduced
        self.raw_phi = raw_phi

    def __repr__(self):
        return 'PolarSolutionData(steps=%d)' % len(self.R)


class StepPhase(object):
    """ A non-decreasing right-continuous step function phi on (0, L_K).

        ``L`` holds the breakpoints L_1 < L_2 < ... (L_0 = 0 implicit) and
        ``phi`` the values phi_1, phi_2, ...: phi(t) = phi_1 on (0, L_1) and
        phi(t) = phi_{n+1} on [L_n, L_{n+1}).  Angles are stored unwrapped
        with every increment in (0, pi).
    """

    __slots__ = ['L', 'phi']

    def __init__(self, L, phi):
        L = _frozen(L, 'L')
        phi = _frozen(phi, 'phi')
        if len(L) != len(phi) or len(L) < 1:
            raise InvariantError('shape', 'L and phi must be nonempty and of equal length')
        if L[0] <= 0:
            raise InvariantError('strictly-increasing-breakpoints', 'L_1 = %r is not positive' % float(L[0]))
        steps = np.diff(L)
        if np.any(steps <= 0):
            n = np.flatnonzero(steps <= 0)[0] + 1
            raise InvariantError('strictly-increasing-breakpoints',
                'L_%d = %r does not exceed L_%d = %r' % (n + 1, float(L[n]), n, float(L[n - 1])))
        increments = np.diff(phi)
        bad = np.flatnonzero((increments <= 0) | (increments >= np.pi))
        if len(bad):
            n = bad[0] + 1
            raise InvariantError('increasing-steps',
                'phi_%d - phi_%d = %r is not in (0, pi)' % (n + 1, n, float(increments[bad[0]])))
        #: breakpoints L_1..L_K
        self.L = L
        #: values phi_1..phi_K (radians, unwrapped)
        self.phi = phi

    @property
    def steps(self):
        """ Number of steps K """
        return len(self.L)

    @property
    def starts(self):
        """ Left end points L_0..L_{K-1} """
        return np.concatenate([[0.0], self.L[:-1]])

    @property
    def lengths(self):
        """ Step lengths L_n - L_{n-1}, i.e. R_n^2 """
        return np.diff(np.concatenate([[0.0], self.L]))

    @property
    def R(self):
        return np.sqrt(self.lengths)

    def is_jacobi(self, tol=PHASE_TOL):
        return abs(self.phi[0] - np.pi / 2) <= tol and abs(self.L[0] - 1.0) <= tol

    def validate_jacobi(self, tol=PHASE_TOL):
        """ Raise unless phi = pi/2 exactly on (0, 1) """
        if abs(self.phi[0] - np.pi / 2) > tol:
            raise InvariantError('jacobi-normalization', 'phi_1 = %r, expected pi/2' % float(self.phi[0]))
        if abs(self.L[0] - 1.0) > tol:
            raise InvariantError('jacobi-normalization', 'L_1 = %r, expected 1' % float(self.L[0]))

    def step_index(self, t):
        """ 0-based index of the step containing ``t`` """
        if not 0 < t < self.L[-1]:
            raise RangeError('t = %r is outside (0, %r)' % (t, float(self.L[-1])))
        return int(np.searchsorted(self.L, t, side='right'))

    def value_at(self, t):
        return self.phi[self.step_index(t)]

    def restricted(self, K):
        """ The first ``K`` steps """
        if not 1 <= K <= self.steps:
            raise RangeError('cannot keep %d of %d steps' % (K, self.steps))
        return StepPhase(self.L[:K], self.phi[:K])

    def extended(self, K):
        """ The phase truncated or extended to ``K`` steps.

            Extension repeats the last step length and the last angle
            increment.  A single-step phase continues with unit increments
            of pi/2.
        """
        if K <= self.steps:
            return self.restricted(K)
        extra = np.arange(1, K - self.steps + 1)
        length = self.lengths[-1]
        increment = np.diff(self.phi)[-1] if self.steps > 1 else np.pi / 2
        L = np.concatenate([self.L, self.L[-1] + length * extra])
        phi = np.concatenate([self.phi, self.phi[-1] + increment * extra])
        return StepPhase(L, phi)

    def __eq__(self, other):
        if not isinstance(other, StepPhase):
            return NotImplemented
        return np.array_equal(self.L, other.L) and np.array_equal(self.phi, other.phi)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __repr__(self):
        return 'StepPhase(steps=%d, L_K=%r)' % (self.steps, float(self.L[-1]))

    def __getstate__(self):
        return dict((attr, getattr(self, attr)) for attr in self.__slots__)

    def __setstate__(self, state):
        for attr in self.__slots__:
            setattr(self, attr, state.get(attr))


def projection(phi):
    """ P_phi, the projection onto (cos phi, sin phi) """
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c * c, c * s], [c * s, s * s]])


class TraceNormedHamiltonian(object):
    """ H(t) = P_{phi(t)} for a step phase phi """

    __slots__ = ['phase']

    def __init__(self, phase):
        #: the underlying ``StepPhase``
        self.phase = phase

    def at(self, t):
        return projection(self.phase.value_at(t))

    def trace(self, t):
        return np.trace(self.at(t))

    def det(self, t):
        return np.linalg.det(self.at(t))

    @property
    def support(self):
        return 0.0, float(self.phase.L[-1])

    def __repr__(self):
        return 'TraceNormedHamiltonian(%r)' % self.phase


class DiscreteCanonicalState(object):
    """ Solution vectors u_0..u_k of J(u_{n+1} - u_n) = z H_{n+1} u_n """

    __slots__ = ['u', 'z']

    def __init__(self, u, z):
        u = np.array(u, dtype=complex)
        if u.ndim != 2 or u.shape[1] != 2:
            raise InvariantError('shape', 'u must have shape (k + 1, 2)')
        u.flags.writeable = False
        #: array of shape (k + 1, 2)
        self.u = u
        #: spectral parameter
        self.z = complex(z)

    def __len__(self):
        return len(self.u)

    def residuals(self, phase):
        """ |J(u_{n+1} - u_n) - z H_{n+1} u_n| for every stored step """
        out = []
        lengths = phase.lengths
        for n in range(len(self.u) - 1):
            H = lengths[n] * projection(phase.phi[n])
            lhs = _J.dot(self.u[n + 1] - self.u[n])
            out.append(np.linalg.norm(lhs - self.z * H.dot(self.u[n])))
        return np.array(out)

    def __repr__(self):
        return 'DiscreteCanonicalState(k=%d, z=%r)' % (len(self.u) - 1, self.z)


class MGrid(object):
    """ Spectral points z (Im z > 0) with m-values attached """

    __slots__ = ['z', 'm', 'N', 'source']

    def __init__(self, points, N=None, source=None):
        points = list(points)
        z = np.array([p[0] for p in points], dtype=complex)
        m = np.array([p[1] for p in points], dtype=complex)
        if np.any(z.imag <= 0):
            raise DomainError('grid point %r is not in the upper half plane'
                              % complex(z[np.argmin(z.imag)]))
        z.flags.writeable = False
        m.flags.writeable = False
        self.z = z
        self.m = m
        #: truncation length used
        self.N = N
        #: ``jacobi`` or ``canonical``
        self.source = source

    def __len__(self):
        return len(self.z)

    def __iter__(self):
        return iter(zip(self.z, self.m))

    def __repr__(self):
        return 'MGrid(points=%d, N=%r, source=%r)' % (len(self), self.N, self.source)


AsymptoticEstimate = collections.namedtuple('AsymptoticEstimate',
    ['a_est', 'mass_est', 'y_used', 'a_predicted', 'mass_predicted'])

HerglotzReport = collections.namedtuple('HerglotzReport',
    ['passed', 'min_imag', 'argmin_z', 'violations'])

Piece = collections.namedtuple('Piece', ['t0', 't1', 'f1', 'f2'])


class TestFunction(object):
    """ A piecewise-constant R^2-valued function of compact support in [0, inf).

        ``pieces`` are (t0, t1, f1, f2): the value (f1, f2) on [t0, t1).
    """

    __slots__ = ['pieces']
    __test__ = False

    def __init__(self, pieces):
        pieces = sorted(Piece(*(float(x) for x in p)) for p in pieces)
        if not pieces:
            raise InvariantError('test-function', 'a test function needs at least one piece')
        for p in pieces:
            if not all(math.isfinite(x) for x in p):
                raise InvariantError('test-function', 'piece %r is not finite' % (p,))
            if p.t0 < 0 or p.t1 <= p.t0:
                raise InvariantError('test-function', 'piece %r is not an interval in [0, inf)' % (p,))
        for left, right in zip(pieces, pieces[1:]):
            if right.t0 < left.t1:
                raise InvariantError('test-function', 'pieces %r and %r overlap' % (left, right))
        self.pieces = tuple(pieces)

    @classmethod
    def indicator(cls, t0, t1, vector=(1.0, 0.0)):
        """ vector times the characteristic function of [t0, t1) """
        return cls([(t0, t1, vector[0], vector[1])])

    @property
    def support(self):
        return self.pieces[0].t0, self.pieces[-1].t1

    def __eq__(self, other):
        if not isinstance(other, TestFunction):
            return NotImplemented
        return self.pieces == other.pieces

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __repr__(self):
        return 'TestFunction(%s)' % ', '.join(
            '[%r, %r)->(%r, %r)' % tuple(p) for p in self.pieces)


class NonDensityCertificate(object):
    """ Result of sweeping the discrete Schrodinger family against a Jacobi phase """

    __slots__ = ['phase_j', 'test_set', 'infimum', 'argmin_psi', 'resolution',
                 'convention', 'infima', 'psi', 'discrepancies']

    #: why a single angle parameterizes the family on the test supports
    reduction = ('every discrete Schrodinger phase is constant on [1, 1 + csc^2(psi - pi/2)) '
                 'which contains [1, 2); the test functions live in [1, 2), so only psi matters')

    def __init__(self, phase_j, test_set, infimum, argmin_psi, resolution,
                 convention, infima, psi, discrepancies):
        #: the target Jacobi ``StepPhase``
        self.phase_j = phase_j
        #: list of ``TestFunction``
        self.test_set = list(test_set)
        #: minimum over the sweep of the max pairing discrepancy
        self.infimum = float(infimum)
        #: the psi attaining it (smallest among ties)
        self.argmin_psi = float(argmin_psi)
        self.resolution = int(resolution)
        #: the convention ``infimum`` refers to
        self.convention = convention
        #: infimum for every computed convention
        self.infima = dict(infima)
        #: swept angles
        self.psi = psi
        #: convention name -> discrepancy per swept angle
        self.discrepancies = dict(discrepancies)

    @property
    def separated(self):
        return self.infimum > 0

    def __repr__(self):
        return 'NonDensityCertificate(infimum=%r, argmin_psi=%r, resolution=%d, convention=%s)' % (
            self.infimum, self.argmin_psi, self.resolution, self.convention)
