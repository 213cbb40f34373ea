from io import StringIO
import os
import tempfile
from unittest import mock

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from densities.formats import format_density
from densities.services.density_service import DensityService
from lab.exceptions import ConfigInvalid
from lab.models import ExperimentRun
from lab.run_config import load_run_config
from lab.services.identity_suite import IdentitySuiteService
from lab.services.run_log_service import RunLogService
from free_group.exceptions import SpecParseError


class LabCommandTestCase(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def write(self, name, text):
        path = self.path(name)
        with open(path, 'w') as handle:
            handle.write(text)
        return path

    def run_command(self, name, **options):
        out, err = StringIO(), StringIO()
        call_command(name, stdout=out, stderr=err, **options)
        return out.getvalue(), err.getvalue()

    def assertExitCode(self, code, name, **options):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(name, **options)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception


class SettingsTests(SimpleTestCase):
    def test_local_sqlite_only(self):
        database = settings.DATABASES['default']
        self.assertEqual(database['ENGINE'], 'django.db.backends.sqlite3')
        for key in ('USER', 'PASSWORD', 'HOST', 'PORT'):
            self.assertFalse(database.get(key), key)
        self.assertNotIn('localhost', settings.ALLOWED_HOSTS)

    def test_no_output_directory_setting(self):
        # --out names the destination
        self.assertFalse(hasattr(settings, 'LAB_OUTPUT_DIR'))


class RunConfigTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def config_file(self, text):
        path = os.path.join(self.tmp.name, 'run.env')
        with open(path, 'w') as handle:
            handle.write(text)
        return path

    def test_defaults(self):
        config = load_run_config()
        self.assertEqual(config.rank, 2)
        self.assertEqual(config.mode, 'exact')
        self.assertEqual(config.p, 2)
        self.assertFalse(config.timing)

    def test_file_values_and_flag_overrides(self):
        path = self.config_file("# experiment\nseed=3\nnmax=5\nfamily=eta\ntiming=true\n")
        config = load_run_config(path, seed=4, nmax=None)
        self.assertEqual(config.seed, 4)
        self.assertEqual(config.nmax, 5)
        self.assertEqual(config.family, 'eta')
        self.assertTrue(config.timing)

    def test_process_environment_is_ignored(self):
        with mock.patch.dict(os.environ, {'seed': '99', 'nmax': '2'}):
            config = load_run_config()
        self.assertNotEqual(config.seed, 99)
        self.assertEqual(config.nmax, 8)

    def test_exponent(self):
        self.assertEqual(load_run_config(p='inf').p, float('inf'))
        self.assertEqual(str(load_run_config(p='3/2').p), '3/2')
        with self.assertRaises(ConfigInvalid):
            load_run_config(p='1/2')
        with self.assertRaises(ConfigInvalid):
            load_run_config(p='two')

    def test_rejects_bad_values(self):
        with self.assertRaises(ConfigInvalid):
            load_run_config(rank=1)
        with self.assertRaises(ConfigInvalid):
            load_run_config(family='cubes')
        with self.assertRaises(ConfigInvalid):
            load_run_config(kind='eta', n=0)

    def test_rejects_unknown_key_and_missing_file(self):
        with self.assertRaises(SpecParseError):
            load_run_config(self.config_file("seed=1\ncolour=blue\n"))
        with self.assertRaises(SpecParseError):
            load_run_config(os.path.join(self.tmp.name, 'missing.env'))
        with self.assertRaises(SpecParseError):
            load_run_config(self.config_file("seed=abc\n"))

    def test_as_dict_is_json_ready(self):
        data = load_run_config(p='inf').as_dict()
        self.assertEqual(data['p'], 'inf')
        self.assertEqual(data['family'], 'spherical')


class IdentitiesCommandTests(LabCommandTestCase):
    def test_every_identity_passes(self):
        out, _ = self.run_command('identities', seed=1, samples=2)
        lines = out.splitlines()
        self.assertEqual(len(lines), len(IdentitySuiteService.names()))
        for line in lines:
            self.assertTrue(line.startswith('PASS '), line)

    def test_rank_three(self):
        out, _ = self.run_command('identities', seed=2, rank=3, samples=1)
        self.assertNotIn('FAIL', out)

    def test_injected_fault_is_caught(self):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('identities', samples=2, inject_fault='eta', stdout=out, stderr=StringIO())
        self.assertEqual(ctx.exception.returncode, 1)
        failing = [line for line in out.getvalue().splitlines() if line.startswith('FAIL')]
        self.assertEqual(len(failing), 1)
        self.assertTrue(failing[0].startswith('FAIL eta_mu: '))
        self.assertIn('--inject-fault eta', failing[0])

    def test_run_is_recorded(self):
        path = self.write('run.env', "seed=7\nsamples=1\n")
        self.run_command('identities', config=path)
        run = ExperimentRun.objects.get(command='identities')
        self.assertEqual(run.seed, 7)
        self.assertEqual(run.exit_code, 0)
        self.assertEqual(run.config['samples'], 1)

    def test_bad_config_is_a_usage_error(self):
        path = self.write('run.env', "seed=1\nspeed=2\n")
        self.assertExitCode(2, 'identities', config=path)
        self.assertFalse(ExperimentRun.objects.exists())


class ConvergeCommandTests(LabCommandTestCase):
    def read_rows(self, path):
        with open(path) as handle:
            return handle.read().splitlines()

    def test_invariant_observable_has_zero_error(self):
        # F^2 acts trivially on the swap action
        path = self.path('swap.csv')
        self.run_command('converge', action='swap', observable='indicator:0', nmax=3, out=path)
        self.assertEqual(self.read_rows(path), [
            'n,error_sup,error_lp,runtime_ms', '1,0,0,0', '2,0,0,0', '3,0,0,0',
        ])

    def test_uniform_eta_matches_spherical(self):
        spherical, _ = self.run_command('converge', action='sanov:5', nmax=4)
        eta, _ = self.run_command('converge', action='sanov:5', nmax=4, family='eta', density='uniform')
        self.assertEqual(spherical, eta)
        self.assertEqual(len(spherical.splitlines()), 5)

    def test_summary_goes_to_stderr(self):
        out, err = self.run_command('converge', action='sanov:5', nmax=3)
        self.assertNotIn('#', out)
        self.assertIn('# family=spherical', err)
        self.assertIn('# cond_exp_min=', err)
        self.assertIn('# orbit_count=', err)

    def test_horospherical_family(self):
        out, err = self.run_command('converge', action='random:7', family='horospherical', nmax=3, prefix='a1a2a1a2')
        self.assertEqual(len(out.splitlines()), 4)
        self.assertIn('# prefix=a1a2a1a2', err)

    def test_float_mode(self):
        out, err = self.run_command('converge', action='sanov:5', nmax=2, mode='float')
        self.assertIn('# approximate=true', err)
        self.assertEqual(out.splitlines()[0], 'n,error_sup,error_lp,runtime_ms')

    def test_usage_errors(self):
        self.assertExitCode(2, 'converge', action='sanov:x')
        self.assertExitCode(2, 'converge', action='sanov:5', rank=3)
        self.assertExitCode(2, 'converge', action='sanov:5', observable='indicator:9')
        self.assertExitCode(2, 'converge', action='sanov:5', family='sector', density='uniform')
        self.assertExitCode(2, 'converge', action='sanov:5', family='horospherical', nmax=4, prefix='a1a2')

    def test_resource_cap(self):
        psi = DensityService.refine(DensityService.constant_density(2), 5)
        density = self.write('deep.density', format_density(psi))
        self.assertExitCode(3, 'converge', action='sanov:5', family='mu', density=f'file:{density}', nmax=2, cap_sphere=5)
        self.assertEqual(ExperimentRun.objects.get(command='converge').exit_code, 3)


class CoveringCommandTests(LabCommandTestCase):
    def test_every_row_passes(self):
        out, _ = self.run_command('covering', instances=6, max_points=40, samples=3)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'instance,disjoint_ok,measure_ok,Cd,Cs,ratio')
        self.assertEqual(len(lines), 1 + 6 + 2)
        for line in lines[1:]:
            self.assertEqual(line.split(',')[1:3], ['true', 'true'], line)
        names = [line.split(',')[0] for line in lines[1:]]
        self.assertEqual(names[-2:], ['boundary-ball', 'boundary-sphere'])

    def test_non_shrinking_column(self):
        out, _ = self.run_command('covering', instances=0)
        ball, sphere = (line.split(',') for line in out.splitlines()[1:])
        # xi lies in its ball sets but never in its sphere sets
        self.assertEqual(ball[4], '1')
        self.assertTrue(sphere[4].startswith('est:'), sphere)

    def test_deterministic(self):
        first, _ = self.run_command('covering', instances=4, seed=11)
        second, _ = self.run_command('covering', instances=4, seed=11)
        self.assertEqual(first, second)


class DumpMeasureCommandTests(LabCommandTestCase):
    def test_density(self):
        out, _ = self.run_command('dump_measure', kind='density', density='sector:a1')
        lines = out.splitlines()
        self.assertEqual(lines[0], 'rank 2 depth 1')
        self.assertIn('a1 4/1', lines)
        self.assertIn('A1 0/1', lines)

    def test_mu_and_eta(self):
        mu, _ = self.run_command('dump_measure', kind='mu', density='sector:a1', n=2)
        self.assertTrue(mu.startswith('rank 2 radius 2'))
        eta, _ = self.run_command('dump_measure', kind='eta', density='uniform', n=1)
        self.assertTrue(eta.startswith('rank 2 radius 2'))

    def test_eta_needs_positive_n(self):
        self.assertExitCode(2, 'dump_measure', kind='eta', density='uniform', n=0)


class RunLogTests(TestCase):
    def test_prune_keeps_newest(self):
        config = load_run_config(seed=5)
        for _ in range(4):
            RunLogService.log_run('converge', config, 0)
        RunLogService.log_run('covering', config, 1)
        out = StringIO()
        call_command('prune_runs', keep=1, stdout=out)
        self.assertIn('Deleted 3 experiment runs', out.getvalue())
        self.assertEqual(ExperimentRun.objects.filter(command='converge').count(), 1)
        self.assertEqual(ExperimentRun.objects.filter(command='covering').count(), 1)

    def test_log_run_respects_setting(self):
        with self.settings(LAB_RECORD_RUNS=False):
            self.assertIsNone(RunLogService.log_run('converge', load_run_config(), 0))
        self.assertFalse(ExperimentRun.objects.exists())
