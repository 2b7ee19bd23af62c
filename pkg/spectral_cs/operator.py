"""
Jacobi and discrete Schrodinger coefficient data.

The eigenvalue equation is the three-term recurrence

    a_{n-1} y_{n-1} + a_n y_{n+1} + b_n y_n = z y_n,    n >= 1,

and ``c``, ``s`` are its zero-energy solutions with c_0 = s_1 = 1 and
c_1 = s_0 = 0.

    >>> coeffs = JacobiCoefficients([-1, -1], [2], bound=2)
    >>> sol = fundamental_solutions(coeffs)
    >>> sol.c.tolist(), sol.s.tolist()
    ([1.0, 0.0, -1.0], [0.0, 1.0, 2.0])
    >>> recover_a(sol, 1), recover_b(sol, coeffs.a, 0)
    (-1.0, 2.0)
"""
import logging

import numpy as np

from spectral_cs.errors import DegenerateInputError, NumericalError, RangeError
from spectral_cs.model import FundamentalSolutions, JacobiCoefficients


logger = logging.getLogger(__name__)

#: relative tolerance of the Wronskian health check in ``fundamental_solutions``
WRONSKIAN_HEALTH_TOL = 1e-9


def transfer_matrix(coeffs, n, z):
    """ M_n(z), mapping (y_{n-1}, y_n) to (y_n, y_{n+1}).

        >>> transfer_matrix(JacobiCoefficients([-1, -2], [3], bound=3), 1, 0).tolist()
        [[0.0, 1.0], [-0.5, 1.5]]
    """
    if not 1 <= n <= coeffs.N:
        raise RangeError('transfer matrix M_%d needs 1 <= n <= %d' % (n, coeffs.N))
    a_prev, a_n, b_n = coeffs.a[n - 1], coeffs.a[n], coeffs.b[n - 1]
    return np.array([[0.0, 1.0], [-a_prev / a_n, (z - b_n) / a_n]])


def solve_recurrence(coeffs, z, y0, y1, upto=None):
    """ y_0..y_upto from the forward recurrence, ``upto`` defaulting to N + 1 """
    upto = coeffs.N + 1 if upto is None else upto
    if not 1 <= upto <= coeffs.N + 1:
        raise RangeError('the recurrence reaches at most y_%d, asked for y_%d'
                         % (coeffs.N + 1, upto))
    a, b = coeffs.a, coeffs.b
    y = np.zeros(upto + 1, dtype=complex)
    y[0], y[1] = y0, y1
    for n in range(1, upto):
        y[n + 1] = ((z - b[n - 1]) * y[n] - a[n - 1] * y[n - 1]) / a[n]
    return y


def propagate_transfer(coeffs, z, y0, y1, upto=None):
    """ Same sequence as ``solve_recurrence``, built from transfer matrix products """
    upto = coeffs.N + 1 if upto is None else upto
    if not 1 <= upto <= coeffs.N + 1:
        raise RangeError('the recurrence reaches at most y_%d, asked for y_%d'
                         % (coeffs.N + 1, upto))
    v = np.array([y0, y1], dtype=complex)
    y = [v[0], v[1]]
    for n in range(1, upto):
        v = transfer_matrix(coeffs, n, z).dot(v)
        y.append(v[1])
    return np.array(y)


def fundamental_solutions(coeffs):
    """ The zero-energy solutions c and s up to index N + 1.

        The Wronskian identity a_n (c_n s_{n+1} - c_{n+1} s_n) = -1 is checked
        at every n, relative to the size of the products involved;
        ``NumericalError`` is raised when it fails or the solutions overflow.
    """
    a, b, N = coeffs.a, coeffs.b, coeffs.N
    c = np.zeros(N + 2)
    s = np.zeros(N + 2)
    c[0] = s[1] = 1.0
    for n in range(1, N + 1):
        c[n + 1] = -(a[n - 1] * c[n - 1] + b[n - 1] * c[n]) / a[n]
        s[n + 1] = -(a[n - 1] * s[n - 1] + b[n - 1] * s[n]) / a[n]

    if not (np.all(np.isfinite(c)) and np.all(np.isfinite(s))):
        raise NumericalError('zero-energy solutions overflow within N=%d steps' % N)

    products = np.abs(c[:-1] * s[1:]) + np.abs(c[1:] * s[:-1])
    scale = np.maximum(1.0, np.abs(a) * products)
    residual = np.abs(a * (c[:-1] * s[1:] - c[1:] * s[:-1]) + 1.0) / scale
    worst = int(np.argmax(residual))
    logger.debug('fundamental solutions N=%d: worst relative Wronskian residual %.3g at n=%d',
                 N, residual[worst], worst)
    if residual[worst] > WRONSKIAN_HEALTH_TOL:
        raise NumericalError('Wronskian identity lost at n=%d (relative residual %.3g)'
                             % (worst, residual[worst]))
    return FundamentalSolutions(c, s)


def recover_a(sol, n):
    """ a_n = -1 / (c_n s_{n+1} - c_{n+1} s_n) """
    w = sol.wronskian(n)
    if w == 0:
        raise DegenerateInputError(n)
    return float(-1.0 / w)


def recover_b(sol, a, n):
    """ b_{n+1} = a_n a_{n+1} (c_n s_{n+2} - c_{n+2} s_n) """
    if not 0 <= n <= sol.N - 1 or n + 1 >= len(a):
        raise RangeError('b_%d needs c, s up to index %d and a up to index %d'
                         % (n + 1, n + 2, n + 1))
    c, s = sol.c, sol.s
    return float(a[n] * a[n + 1] * (c[n] * s[n + 2] - c[n + 2] * s[n]))


def recover_coefficients(sol, bound=None):
    """ All coefficients a_0..a_N and b_1..b_N at once.

        ``bound`` defaults to the tight bound max(|a_n|, |b_n|).
    """
    w = sol.wronskians()
    zero = np.flatnonzero(w == 0)
    if len(zero):
        raise DegenerateInputError(int(zero[0]))
    a = -1.0 / w
    c, s = sol.c, sol.s
    b = a[:-1] * a[1:] * (c[:-2] * s[2:] - c[2:] * s[:-2])
    if bound is None:
        bound = max(np.abs(a).max(), np.abs(b).max())
    return JacobiCoefficients(a, b, bound)


def change_of_variables(sol, n):
    """ T_n = [[c_n, s_n], [c_{n+1}, s_{n+1}]], so T_n u_n = (y_n, y_{n+1}) """
    if not 0 <= n <= sol.N:
        raise RangeError('T_%d needs 0 <= n <= %d' % (n, sol.N))
    return np.array([[sol.c[n], sol.s[n]], [sol.c[n + 1], sol.s[n + 1]]])


def to_canonical_vector(sol, n, y_n, y_next):
    """ u_n = T_n^{-1} (y_n, y_{n+1}) """
    T = change_of_variables(sol, n)
    det = T[0, 0] * T[1, 1] - T[0, 1] * T[1, 0]
    if det == 0:
        raise DegenerateInputError(n)
    return np.array([T[1, 1] * y_n - T[0, 1] * y_next,
                     -T[1, 0] * y_n + T[0, 0] * y_next]) / det
