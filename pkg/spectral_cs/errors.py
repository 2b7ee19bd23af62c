"""
Exceptions raised by spectral_cs.

Every exception carries the exit status ``spectral_cs`` returns when it
reaches the command line.
"""


class SpectralError(Exception):
    """ Base class for all errors raised by this package """

    #: exit status used by the command line frontend
    exit_code = 1


class ParseError(SpectralError):
    """ Input could not be parsed (malformed JSON, missing keys, bad grid) """

    exit_code = 2


class InvariantError(SpectralError, ValueError):
    """ A named invariant of a domain object does not hold """

    exit_code = 3

    def __init__(self, invariant, message):
        #: short name of the failed invariant, e.g. ``increasing-steps``
        self.invariant = invariant
        super(InvariantError, self).__init__('[%s] %s' % (invariant, message))


class DegenerateInputError(InvariantError):
    """ Vanishing Wronskian: the solutions cannot come from Jacobi data """

    def __init__(self, n, message=None):
        self.index = n
        super(DegenerateInputError, self).__init__(
            'wronskian', message or 'c_n s_{n+1} - c_{n+1} s_n vanishes at n=%d' % n)


class NotDiscreteSchrodingerError(InvariantError):
    """ A phase violates R_n R_{n+1} sin(phi_{n+1} - phi_n) = 1 """

    def __init__(self, residual, index):
        #: the residual of largest modulus
        self.residual = residual
        #: the step n at which it occurs
        self.index = index
        super(NotDiscreteSchrodingerError, self).__init__(
            'discrete-schrodinger',
            'worst residual %r at n=%d' % (residual, index))


class RangeError(SpectralError, IndexError):
    """ An index lies outside the stored range """

    exit_code = 3


class DomainError(SpectralError, ValueError):
    """ An argument lies outside the domain of the operation """

    exit_code = 3


class InapplicableError(SpectralError):
    """ The operation does not apply to this input """

    exit_code = 4


class NumericalError(SpectralError, ArithmeticError):
    """ A computation produced non-finite values or failed a numerical check """

    exit_code = 5


class TruncationError(NumericalError):
    """ The truncated problem is degenerate; increase the truncation length """
