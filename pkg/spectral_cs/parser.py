import csv
import json
import math

from spectral_cs.errors import ParseError
from spectral_cs.model import JacobiCoefficients, NonDensityCertificate, StepPhase


#: CSV columns of an m-function grid
GRID_COLUMNS = ['re_z', 'im_z', 're_m', 'im_m', 'N', 'source']
#: CSV columns of a certificate sweep
SWEEP_COLUMNS = ['psi', 'weighted', 'unnormalized']


def _number(x):
    return repr(float(x))


class Reader(object):
    """ Reader for the JSON form of ``JacobiCoefficients`` and ``StepPhase`` """

    def __init__(self, fsock=None, filename=None):
        """ Create a new Reader for a JSON document.

            You must specify either fsock (stream) or filename.  Coefficients
            are recognised by the keys ``a``, ``b`` and ``bound``, phases by
            ``L`` and ``phi``.
        """
        super(Reader, self).__init__()

        if not (fsock or filename):
            raise ValueError('You must provide at least fsock or filename')

        if fsock is not None and filename is None:
            filename = getattr(fsock, 'name', None)
        #: name of the input, for messages
        self.filename = filename or '<stream>'
        self._reader = fsock

    def _load(self):
        try:
            if self._reader is not None:
                return json.load(self._reader)
            with open(self.filename) as handle:
                return json.load(handle)
        except ValueError as e:
            raise ParseError('%s: not valid JSON (%s)' % (self.filename, e))

    def _numbers(self, doc, key):
        values = doc.get(key)
        if not isinstance(values, list) or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in values):
            raise ParseError('%s: "%s" must be a list of numbers' % (self.filename, key))
        return values

    def read(self):
        """ Parse the document into a ``JacobiCoefficients`` or ``StepPhase`` """
        doc = self._load()
        if not isinstance(doc, dict):
            raise ParseError('%s: expected a JSON object' % self.filename)
        if 'a' in doc or 'b' in doc:
            bound = doc.get('bound')
            if not isinstance(bound, (int, float)) or isinstance(bound, bool):
                raise ParseError('%s: coefficients need a numeric "bound"' % self.filename)
            return JacobiCoefficients(self._numbers(doc, 'a'), self._numbers(doc, 'b'), bound)
        if 'L' in doc or 'phi' in doc:
            return StepPhase(self._numbers(doc, 'L'), self._numbers(doc, 'phi'))
        raise ParseError('%s: expected keys a, b, bound or L, phi; got %s'
                         % (self.filename, ', '.join(sorted(doc)) or 'none'))


class Writer(object):
    """ JSON writer for coefficients, phases and certificates """

    def __init__(self, stream):
        self.stream = stream

    def write(self, obj):
        """ write ``obj`` as one JSON document """
        self.stream.write(json.dumps(self.as_document(obj), indent=2) + '\n')

    def as_document(self, obj):
        if isinstance(obj, JacobiCoefficients):
            return self._format_coefficients(obj)
        if isinstance(obj, StepPhase):
            return self._format_phase(obj)
        if isinstance(obj, NonDensityCertificate):
            return self._format_certificate(obj)
        raise TypeError('cannot write %r' % (obj,))

    def _format_coefficients(self, coeffs):
        return {'a': coeffs.a.tolist(), 'b': coeffs.b.tolist(), 'bound': coeffs.bound}

    def _format_phase(self, phase):
        return {'L': phase.L.tolist(), 'phi': phase.phi.tolist()}

    def _format_certificate(self, cert):
        return {
            'infimum': cert.infimum,
            'argmin_psi': cert.argmin_psi,
            'argmin_cos2': math.cos(cert.argmin_psi) ** 2,
            'resolution': cert.resolution,
            'convention': cert.convention,
            'infima': dict(sorted(cert.infima.items())),
            'phase': self._format_phase(cert.phase_j),
            'test_set': [[p.t0, p.t1, p.f1, p.f2] for f in cert.test_set for p in f.pieces],
            'reduction': cert.reduction,
        }

    def flush(self):
        """Flush the writer"""
        try:
            self.stream.flush()
        except AttributeError:
            pass

    def close(self):
        """Close the writer"""
        try:
            self.stream.close()
        except AttributeError:
            pass


class GridWriter(object):
    """ CSV writer for ``MGrid`` values """

    def __init__(self, stream, lineterminator='\n'):
        self.writer = csv.writer(stream, lineterminator=lineterminator)
        self.stream = stream
        self.writer.writerow(GRID_COLUMNS)

    def write_grid(self, grid):
        for z, m in grid:
            self.writer.writerow([_number(z.real), _number(z.imag), _number(m.real),
                                  _number(m.imag), grid.N, grid.source])

    def write_herglotz(self, report):
        """ append the Herglotz summary as a comment row """
        self.stream.write('# herglotz %s min_im_m=%s at z=%s violations=%d\n' % (
            'pass' if report.passed else 'FAIL', _number(report.min_imag),
            repr(report.argmin_z), len(report.violations)))


class SweepWriter(object):
    """ CSV writer for the (psi, discrepancy) curve of a certificate """

    def __init__(self, stream, lineterminator='\n'):
        self.writer = csv.writer(stream, lineterminator=lineterminator)
        self.writer.writerow(SWEEP_COLUMNS)

    def write_certificate(self, cert):
        columns = [cert.discrepancies[name] for name in SWEEP_COLUMNS[1:]]
        for i, psi in enumerate(cert.psi):
            self.writer.writerow([_number(psi)] + [_number(col[i]) for col in columns])
