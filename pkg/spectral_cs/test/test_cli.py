import contextlib
import csv
import io
import json
import math
import os
import shutil
import tempfile
import unittest

from spectral_cs import cli

suite = unittest.TestSuite()


def path(fname):
    return os.path.join(os.path.dirname(__file__), fname)


def run(*argv):
    """ exit status and STDOUT of ``spectral-cs argv`` """
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        status = cli.main(list(argv))
    return status, out.getvalue()


def grid_rows(text):
    return list(csv.DictReader(line for line in text.splitlines() if not line.startswith('#')))


class TestConvert(unittest.TestCase):

    def test_to_canonical(self):
        status, out = run('convert', path('free-ds.json'), '--to', 'canonical')
        self.assertEqual(status, 0)
        doc = json.loads(out)
        self.assertEqual(doc['L'], [1.0, 2.0, 3.0, 4.0, 5.0])
        for n, phi in enumerate(doc['phi']):
            self.assertAlmostEqual(phi, (n + 1) * math.pi / 2, places=12)

    def test_to_jacobi_discrete_schrodinger(self):
        status, out = run('convert', path('constant-phase.json'), '--to', 'jacobi')
        self.assertEqual(status, 0)
        doc = json.loads(out)
        self.assertEqual(doc['a'], [-1.0, -1.0])
        self.assertAlmostEqual(doc['b'][0], 1.0, places=12)

    def test_to_jacobi(self):
        status, out = run('convert', path('counterexample-phase.json'), '--to', 'jacobi')
        self.assertEqual(status, 0)
        doc = json.loads(out)
        self.assertEqual(len(doc['b']), 2)
        self.assertAlmostEqual(doc['a'][1], -2.0, places=12)

    def test_output_file(self):
        tmp = tempfile.mkdtemp()
        try:
            target = os.path.join(tmp, 'phase.json')
            status, out = run('convert', path('free-ds.json'), '--to', 'canonical', '-o', target)
            self.assertEqual((status, out), (0, ''))
            with open(target) as handle:
                self.assertEqual(json.load(handle)['L'][-1], 5.0)
        finally:
            shutil.rmtree(tmp)

    def test_malformed(self):
        with self.assertLogs('spectral_cs', level='ERROR'):
            status, out = run('convert', path('malformed.json'), '--to', 'canonical')
        self.assertEqual((status, out), (2, ''))

    def test_wrong_input_kind(self):
        with self.assertLogs('spectral_cs', level='ERROR'):
            status, _ = run('convert', path('counterexample-phase.json'), '--to', 'canonical')
        self.assertEqual(status, 2)

    def test_bad_phase(self):
        with self.assertLogs('spectral_cs', level='ERROR') as logs:
            status, _ = run('convert', path('bad-phase.json'), '--to', 'jacobi')
        self.assertEqual(status, 3)
        assert 'jacobi-normalization' in logs.output[0]

    def test_missing_file(self):
        with self.assertLogs('spectral_cs', level='ERROR'):
            status, _ = run('convert', path('no-such-file.json'), '--to', 'canonical')
        self.assertEqual(status, 1)


class TestMfunc(unittest.TestCase):

    def test_default_grid(self):
        status, out = run('mfunc', path('free-ds.json'))
        self.assertEqual(status, 0)
        rows = grid_rows(out)
        self.assertEqual(len(rows), 68)
        self.assertEqual(set(row['source'] for row in rows), set(['jacobi']))
        assert out.splitlines()[-1].startswith('# herglotz pass')

    def test_free_value(self):
        status, out = run('mfunc', path('free-ds.json'), '--grid', '0:0:1,1', '-N', '200')
        self.assertEqual(status, 0)
        [row] = grid_rows(out)
        self.assertEqual((float(row['re_z']), float(row['im_z'])), (0.0, 1.0))
        self.assertAlmostEqual(float(row['im_m']), (math.sqrt(5) - 1) / 2, delta=1e-8)
        self.assertAlmostEqual(float(row['re_m']), 0.0, delta=1e-8)
        self.assertEqual(row['N'], '200')

    def test_sources_agree(self):
        _, jacobi = run('mfunc', path('free-ds.json'), '--source', 'jacobi', '-N', '200')
        _, canonical = run('mfunc', path('free-ds.json'), '--source', 'canonical', '-N', '200')
        for left, right in zip(grid_rows(jacobi), grid_rows(canonical)):
            self.assertEqual((left['re_z'], left['im_z']), (right['re_z'], right['im_z']))
            m1 = complex(float(left['re_m']), float(left['im_m']))
            m2 = complex(float(right['re_m']), float(right['im_m']))
            self.assertAlmostEqual(abs(m1 - m2), 0, delta=1e-8)

    def test_sources_agree_beyond_stored_data(self):
        args = ('mfunc', path('short-tail.json'), '--grid', '-1:1:1,1', '-N', '200')
        status, jacobi = run(*(args + ('--source', 'jacobi')))
        self.assertEqual(status, 0)
        status, canonical = run(*(args + ('--source', 'canonical')))
        self.assertEqual(status, 0)
        self.assertEqual(len(grid_rows(jacobi)), 3)
        for left, right in zip(grid_rows(jacobi), grid_rows(canonical)):
            m1 = complex(float(left['re_m']), float(left['im_m']))
            m2 = complex(float(right['re_m']), float(right['im_m']))
            self.assertAlmostEqual(abs(m1 - m2), 0, delta=1e-8)

    def test_empty_grid(self):
        with self.assertLogs('spectral_cs', level='ERROR'):
            status, out = run('mfunc', path('free-ds.json'), '--grid', '')
        self.assertEqual((status, out), (2, ''))

    def test_bad_thread_setting(self):
        old = os.environ.get('SPECTRAL_CS_THREADS')
        os.environ['SPECTRAL_CS_THREADS'] = 'many'
        try:
            with self.assertLogs('spectral_cs', level='ERROR'):
                status, _ = run('mfunc', path('free-ds.json'))
        finally:
            if old is None:
                del os.environ['SPECTRAL_CS_THREADS']
            else:
                os.environ['SPECTRAL_CS_THREADS'] = old
        self.assertEqual(status, 2)


class TestCertify(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_counterexample(self):
        target = os.path.join(self.tmp, 'cert.json')
        status, _ = run('--threads', '2', 'certify', '--counterexample', '-o', target)
        self.assertEqual(status, 0)
        with open(target) as handle:
            doc = json.load(handle)
        self.assertEqual(doc['resolution'], 10000)
        self.assertEqual(doc['convention'], 'weighted')
        assert 0.125 - 1e-12 <= doc['infimum'] <= 0.1251
        assert 0.25 - 1e-12 <= doc['infima']['unnormalized'] <= 0.2502
        self.assertAlmostEqual(doc['argmin_cos2'], 0.75, delta=1e-3)
        with open(os.path.join(self.tmp, 'cert-sweep.csv')) as handle:
            lines = handle.read().splitlines()
        self.assertEqual(len(lines), 10001)

    def test_builtin_example_flag(self):
        status, out = run('certify', '--paper-example', '--resolution', '10000')
        self.assertEqual(status, 0)
        doc = json.loads(out)
        assert 0.125 - 1e-12 <= doc['infimum'] <= 0.1251
        assert 0.25 - 1e-12 <= doc['infima']['unnormalized'] <= 0.2502
        _, alias = run('certify', '--counterexample', '--resolution', '10000')
        self.assertEqual(json.loads(alias), doc)

    def test_phase_input(self):
        status, out = run('certify', path('counterexample-phase.json'), '--resolution', '10',
                          '--convention', 'unnormalized')
        self.assertEqual(status, 0)
        doc = json.loads(out)
        assert doc['infimum'] > 0
        self.assertEqual(doc['infimum'], doc['infima']['unnormalized'])

    def test_constant_phase(self):
        with self.assertLogs('spectral_cs', level='ERROR'):
            status, _ = run('certify', path('constant-phase.json'))
        self.assertEqual(status, 4)

    def test_needs_one_source(self):
        with self.assertLogs('spectral_cs', level='ERROR'):
            self.assertEqual(run('certify')[0], 2)
        with self.assertLogs('spectral_cs', level='ERROR'):
            self.assertEqual(run('certify', path('counterexample-phase.json'), '--paper-example')[0], 2)


class TestVerify(unittest.TestCase):

    def report(self, out):
        return dict((row[0], row[1]) for row in csv.reader(out.splitlines(), delimiter='\t'))

    def test_free(self):
        status, out = run('verify', path('free-ds.json'))
        self.assertEqual(status, 0)
        report = self.report(out)
        self.assertEqual(len(report), 9)
        self.assertEqual(set(report.values()), set(['PASS']))

    def test_informational(self):
        status, out = run('verify', path('counterexample-phase.json'))
        self.assertEqual(status, 0)
        report = self.report(out)
        self.assertEqual(report['discrete-schrodinger'], 'INFO')
        self.assertEqual(report['roundtrip'], 'PASS')

    def test_failure(self):
        with self.assertLogs('spectral_cs', level='WARNING'):
            status, out = run('verify', path('bad-phase.json'))
        self.assertEqual(status, 5)
        self.assertEqual(self.report(out)['jacobi-phase'], 'FAIL')

    def test_selected_checks(self):
        status, out = run('verify', path('free-ds.json'), '--check', 'wronskian',
                          '--check', 'herglotz', '--wronskian-tol', '1e-14')
        self.assertEqual(status, 0)
        self.assertEqual(sorted(self.report(out)), ['herglotz', 'wronskian'])

    def test_truncation_beyond_stored_data(self):
        status, out = run('verify', path('short-tail.json'), '--check', 'm-equality',
                          '--m-truncation', '200')
        self.assertEqual(status, 0)
        self.assertEqual(self.report(out)['m-equality'], 'PASS')

    def test_unknown_option(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                cli.main(['verify', path('free-ds.json'), '--no-such-option'])
        self.assertEqual(cm.exception.code, 2)


suite.addTests(unittest.TestLoader().loadTestsFromTestCase(TestConvert))
suite.addTests(unittest.TestLoader().loadTestsFromTestCase(TestMfunc))
suite.addTests(unittest.TestLoader().loadTestsFromTestCase(TestCertify))
suite.addTests(unittest.TestLoader().loadTestsFromTestCase(TestVerify))


def load_tests(loader, tests, pattern):
    return suite
