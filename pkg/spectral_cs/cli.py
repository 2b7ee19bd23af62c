"""
Command line frontend: ``spectral-cs {convert,mfunc,verify,certify}``.

Exit status is 0 on success, 1 on I/O errors and otherwise the
``exit_code`` of the ``SpectralError`` that stopped the command: 2 for
unparseable input, 3 for violated invariants, 4 for inapplicable inputs and
5 for numerical failures (including failed checks).
"""
import argparse
import collections
import contextlib
import csv
import logging
import os
import sys

from spectral_cs import VERSION
from spectral_cs import checks as checks_module
from spectral_cs import utils
from spectral_cs.errors import NumericalError, ParseError, SpectralError
from spectral_cs.model import JacobiCoefficients, StepPhase
from spectral_cs.parser import GridWriter, Reader, SweepWriter, Writer
from spectral_cs.transforms import (DS_TOL, canonical_to_jacobi, ds_to_schrodinger,
                                    is_discrete_schrodinger, jacobi_to_canonical)
from spectral_cs.weak_star import (CONVENTIONS, DEFAULT_RESOLUTION, nondensity_certificate,
                                   counterexample_phase)
from spectral_cs.weyl import SOURCES, evaluate_grid, herglotz_check


logger = logging.getLogger('spectral_cs')


class RunConfig(collections.namedtuple('RunConfig', [
        'command', 'input', 'output', 'truncation', 'tolerance', 'grid', 'resolution',
        'convention', 'counterexample', 'to', 'source', 'sweep', 'checks', 'threads',
        'args'])):
    """ Validated settings of one command line run """

    __slots__ = ()

    @classmethod
    def from_args(cls, args):
        values = dict((field, getattr(args, field, None)) for field in cls._fields)
        values['args'] = args
        return cls(**values)


def create_core_parser(checks=None):
    checks = checks_module.available_checks() if checks is None else checks
    parser = argparse.ArgumentParser(prog='spectral-cs',
            description='Jacobi operators, canonical systems and their m-functions',
            formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('--version', action='version', version='%(prog)s ' + VERSION)
    parser.add_argument('-v', '--verbose', action='count', default=0,
            help='Log progress (-v) or debugging detail (-vv) to stderr')
    parser.add_argument('--threads', type=int, default=None,
            help='Worker threads for grids and sweeps, capped by $%s' % utils.THREADS_ENV)
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    convert = commands.add_parser('convert', help='Convert coefficients to a phase or back',
            formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    convert.add_argument('input', help='JSON input (use - for STDIN)')
    convert.add_argument('--to', choices=['canonical', 'jacobi'], required=True,
            help='Target representation')
    convert.add_argument('--tol', dest='tolerance', type=float, default=DS_TOL,
            help='Discrete Schrodinger tolerance used with --to jacobi')
    convert.add_argument('-o', '--output', default=None, help='Output file [STDOUT]')

    mfunc = commands.add_parser('mfunc', help='Evaluate the m-function on a grid',
            formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    mfunc.add_argument('input', help='JSON input (use - for STDIN)')
    mfunc.add_argument('--source', choices=SOURCES, default=None,
            help='Evaluator (default: the one matching the input)')
    mfunc.add_argument('--grid', default=None,
            help='"x0:x1:dx,y0:y1:dy" or "/"-separated values (default: '
                 'x = -4..4 by 0.5, y = 0.5/1/2/4)')
    mfunc.add_argument('-N', dest='truncation', type=int, default=None,
            help='Truncation length (default: the stored length)')
    mfunc.add_argument('-o', '--output', default=None, help='Output CSV [STDOUT]')

    verify = commands.add_parser('verify', help='Run the invariant checks on an input',
            formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    verify.add_argument('input', help='JSON input (use - for STDIN)')
    verify.add_argument('--check', dest='checks', action='append', choices=list(checks),
            help='Check to run, may be repeated (default: all)')
    verify.add_argument('-o', '--output', default=None, help='Report file [STDOUT]')
    for check in checks.values():
        group = verify.add_argument_group(check.name, check.__doc__)
        check.customize_parser(group)

    certify = commands.add_parser('certify',
            help='Sweep discrete Schrodinger phases against a Jacobi phase',
            formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    certify.add_argument('input', nargs='?', default=None,
            help='JSON phase or coefficients (use - for STDIN)')
    certify.add_argument('--paper-example', '--counterexample', dest='counterexample',
            action='store_true',
            help='Use the phase pi/2, 3pi/4, pi on (0, 1), [1, 3/2), [3/2, 2)')
    certify.add_argument('--resolution', type=int, default=DEFAULT_RESOLUTION,
            help='Number of swept angles')
    certify.add_argument('--convention', choices=CONVENTIONS, default='weighted',
            help='Pairing convention reported as the infimum')
    certify.add_argument('-o', '--output', default=None, help='Certificate JSON [STDOUT]')
    certify.add_argument('--sweep', default=None,
            help='Sweep CSV (default: <output stem>-sweep.csv when -o is given)')

    return parser


@contextlib.contextmanager
def _output(path):
    if path is None or path == '-':
        yield sys.stdout
    else:
        with open(path, 'w', newline='') as stream:
            yield stream


def _read(path):
    if path == '-':
        return Reader(fsock=sys.stdin).read()
    return Reader(filename=path).read()


def cmd_convert(config):
    obj = _read(config.input)
    if config.to == 'canonical':
        if not isinstance(obj, JacobiCoefficients):
            raise ParseError('%s: --to canonical needs coefficients (a, b, bound)' % config.input)
        result = jacobi_to_canonical(obj)
    else:
        if not isinstance(obj, StepPhase):
            raise ParseError('%s: --to jacobi needs a phase (L, phi)' % config.input)
        obj.validate_jacobi()
        if is_discrete_schrodinger(obj, config.tolerance):
            logger.info('phase is discrete Schrodinger within %g; recovering the potential',
                        config.tolerance)
            result = JacobiCoefficients.schrodinger(ds_to_schrodinger(obj, config.tolerance))
        else:
            result = canonical_to_jacobi(obj)
    with _output(config.output) as stream:
        Writer(stream).write(result)
    return 0


def cmd_mfunc(config):
    points = None if config.grid is None else utils.parse_grid(config.grid)
    subject = _read(config.input)
    grid = evaluate_grid(subject, points, N=config.truncation, source=config.source,
                         threads=config.threads)
    report = herglotz_check(grid)
    with _output(config.output) as stream:
        writer = GridWriter(stream)
        writer.write_grid(grid)
        writer.write_herglotz(report)
    if not report.passed:
        raise NumericalError('Herglotz property fails at z = %r (Im m = %r)'
                             % (report.argmin_z, report.min_imag))
    return 0


def cmd_verify(config):
    available = checks_module.available_checks()
    names = config.checks or list(available)
    chain = [available[name](config.args) for name in names]
    subject = checks_module.make_subject(_read(config.input))
    results = checks_module.run_checks(chain, subject)
    failed = [check.name for check, result in results
              if result is not None and not check.informational]
    with _output(config.output) as stream:
        report = csv.writer(stream, delimiter='\t', lineterminator='\n')
        for check, result in results:
            if result is None:
                status = 'PASS'
            else:
                status = 'INFO' if check.informational else 'FAIL'
            report.writerow([check.name, status, '' if result is None else result])
    if failed:
        raise NumericalError('failed checks: %s' % ', '.join(failed))
    return 0


def cmd_certify(config):
    if config.counterexample == (config.input is not None):
        raise ParseError('certify needs exactly one of an input phase or --paper-example')
    if config.counterexample:
        phase = counterexample_phase()
    else:
        phase = _read(config.input)
        if isinstance(phase, JacobiCoefficients):
            phase = jacobi_to_canonical(phase)
    cert = nondensity_certificate(phase, config.resolution, config.convention, config.threads)
    sweep = config.sweep
    if sweep is None and config.output not in (None, '-'):
        sweep = os.path.splitext(config.output)[0] + '-sweep.csv'
    with _output(config.output) as stream:
        Writer(stream).write(cert)
    if sweep is not None:
        with _output(sweep) as stream:
            SweepWriter(stream).write_certificate(cert)
    return 0


COMMANDS = {
    'convert': cmd_convert,
    'mfunc': cmd_mfunc,
    'verify': cmd_verify,
    'certify': cmd_certify,
}


def main(argv=None):
    parser = create_core_parser()
    args = parser.parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    logger.setLevel(level)
    config = RunConfig.from_args(args)
    try:
        return COMMANDS[config.command](config)
    except SpectralError as e:
        logger.error('%s', e)
        return e.exit_code
    except OSError as e:
        logger.error('%s', e)
        return 1
