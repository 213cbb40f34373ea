from fractions import Fraction
import random
import time

from django.test import SimpleTestCase, override_settings

from actions.domain import Observable
from actions.services.action_builder_service import ActionBuilderService
from actions.services.action_service import ActionService
from actions.services.observable_service import ObservableService
from averaging.formats import format_convergence_csv, format_number
from averaging.services.convergence_service import ConvergenceService
from averaging.services.spherical_service import SphericalAverageService
from averaging.transfer_operator import TransferOperator
from densities.numerics import RealInterval
from densities.services.density_service import DensityService
from densities.services.sphere_measure_service import SphereMeasureService
from free_group.domain import alphabet
from free_group.exceptions import ResourceCapExceeded
from free_group.formats import parse_word
from free_group.services.sampling_service import SamplingService
from free_group.services.word_service import WordService


def random_case(rng, rank=2, max_points=10, blocks=1):
    n = rng.randint(max(2, blocks), max_points)
    action = ActionBuilderService.random_action(n, rng.randint(0, 10 ** 6), rank=rank, blocks=blocks)
    return action, ObservableService.random_observable(rng, action)


class SphericalDPTests(SimpleTestCase):
    def test_constant_is_fixed(self):
        action = ActionBuilderService.random_action(9, seed=1)
        f = ObservableService.constant(action, Fraction(3, 2))
        table = SphericalAverageService.spherical_dp(action, f, 8)
        for n, value in table.rows():
            self.assertEqual(value, f, n)

    def test_matches_bruteforce_rank_two(self):
        rng = random.Random(70)
        for _ in range(20):
            action, f = random_case(rng, blocks=rng.randint(1, 2))
            table = SphericalAverageService.spherical_dp(action, f, 6)
            for n in range(7):
                self.assertEqual(table.at(n), SphericalAverageService.sphere_bruteforce(action, f, n))

    def test_large_action_stays_fast(self):
        action = ActionBuilderService.random_action(10 ** 4, seed=75)
        f = ObservableService.random_observable(random.Random(75), action)
        start = time.perf_counter()
        table = SphericalAverageService.spherical_dp(action, f, 40)
        elapsed = time.perf_counter() - start
        self.assertEqual(len(table.indices), 41)
        self.assertFalse(table.approximate)
        self.assertLess(elapsed, 5)

    def test_matches_bruteforce_rank_three(self):
        rng = random.Random(71)
        for _ in range(3):
            action, f = random_case(rng, rank=3, max_points=7)
            table = SphericalAverageService.spherical_dp(action, f, 4)
            for n in range(5):
                self.assertEqual(table.at(n), SphericalAverageService.sphere_bruteforce(action, f, n))

    def test_radius_one(self):
        action, f = random_case(random.Random(72))
        expected = []
        for x in range(action.size):
            total = sum(f[action.letter_map(s.inverse())[x]] for s in alphabet(2))
            expected.append(total / 4)
        self.assertEqual(SphericalAverageService.sphere_bruteforce(action, f, 1), Observable(tuple(expected)))
        self.assertEqual(SphericalAverageService.sphere_bruteforce(action, f, 0), f)

    def test_even_radius_fixes_invariant_functions(self):
        rng = random.Random(73)
        for _ in range(5):
            action, f = random_case(rng, max_points=12)
            invariant = ActionService.cond_exp_even(action, f)
            table = SphericalAverageService.spherical_dp(action, invariant, 10)
            for n in range(0, 11, 2):
                self.assertEqual(table.at(n), invariant)

    def test_float_mode_close_to_exact(self):
        action, f = random_case(random.Random(74))
        exact = SphericalAverageService.spherical_dp(action, f, 12)
        approx = SphericalAverageService.spherical_dp(action, Observable.approx(f), 12)
        self.assertTrue(approx.approximate)
        for n in range(13):
            for a, b in zip(exact.at(n), approx.at(n)):
                self.assertAlmostEqual(float(a), b, places=9)

    def test_l1_contraction(self):
        rng = random.Random(75)
        for _ in range(5):
            action, f = random_case(rng, blocks=2)
            table = SphericalAverageService.spherical_dp(action, f, 8)
            bound = ObservableService.l1_norm(action, f)
            for _, value in table.rows():
                self.assertLessEqual(ObservableService.l1_norm(action, value), bound)

    @override_settings(LAB_BRUTEFORCE_CAP=10)
    def test_bruteforce_cap(self):
        action, f = random_case(random.Random(76))
        with self.assertRaises(ResourceCapExceeded) as ctx:
            SphericalAverageService.sphere_bruteforce(action, f, 3)
        self.assertEqual(ctx.exception.cap, 'LAB_BRUTEFORCE_CAP')


class SectorSumTests(SimpleTestCase):
    def test_channels_split_the_sphere(self):
        action, f = random_case(random.Random(77))
        engine = TransferOperator(action, f)
        for length in range(1, 6):
            for s in alphabet(2):
                expected = Fraction(0)
                for u in WordService.sphere(2, length):
                    if u.letters[0] != s:
                        expected += f[ActionService.apply_word(action, WordService.invert(u), 3 % action.size)]
                got = SphericalAverageService.sector_sum(action, f, 3 % action.size, length, s, engine)
                self.assertEqual(got, expected)

    def test_channels_sum_to_the_sphere(self):
        action, f = random_case(random.Random(78))
        engine = TransferOperator(action, f)
        for length in range(0, 6):
            total = sum(engine.channel(length, t) for t in alphabet(2))
            self.assertEqual(list(total), list(engine.sphere_sum(length)) if length else [0] * action.size)


class WeightedAverageTests(SimpleTestCase):
    def test_point_mass(self):
        rng = random.Random(80)
        action, f = random_case(rng)
        for _ in range(20):
            g = SamplingService.random_word(rng, 2, rng.randint(0, 5))
            value = SphericalAverageService.weighted_average(action, f, SphereMeasureService.point_mass(g))
            for x in range(action.size):
                self.assertEqual(value[x], f[ActionService.apply_word(action, WordService.invert(g), x)])

    def test_uniform_matches_dp(self):
        action, f = random_case(random.Random(81))
        table = SphericalAverageService.spherical_dp(action, f, 7)
        for n in range(8):
            mu = SphereMeasureService.uniform_sphere(2, n)
            self.assertEqual(SphericalAverageService.weighted_average(action, f, mu), table.at(n))

    def test_sector_density_is_sector_average(self):
        action, f = random_case(random.Random(82))
        a1 = parse_word("a1", 2)
        rho = DensityService.sector_density(a1)
        for n in (1, 2, 3):
            mu = SphereMeasureService.mu_from_density(rho, 2 * n)
            words = list(WordService.words_with_prefix(a1, 2 * n))
            expected = tuple(
                sum((f[ActionService.apply_word(action, WordService.invert(g), x)] for g in words), Fraction(0))
                / len(words)
                for x in range(action.size)
            )
            self.assertEqual(SphericalAverageService.weighted_average(action, f, mu).values, expected)

    def test_factored_matches_materialized(self):
        rng = random.Random(83)
        for _ in range(10):
            action, f = random_case(rng)
            psi = DensityService.random_density(rng, 2, rng.randint(0, 3))
            mu = SphereMeasureService.mu_from_density(psi, rng.randint(psi.depth, 5))
            self.assertEqual(
                SphericalAverageService.weighted_average(action, f, mu),
                SphericalAverageService.weighted_average(action, f, SphereMeasureService.materialize(mu)),
            )

    def test_eta_forms_agree(self):
        rng = random.Random(84)
        for _ in range(5):
            action, f = random_case(rng)
            psi = DensityService.random_density(rng, 2, 2)
            for n in (2, 3):
                coarse = SphereMeasureService.eta_from_density(psi, n)
                direct = SphereMeasureService.eta_from_density(psi, n, direct=True)
                self.assertEqual(
                    SphericalAverageService.weighted_average(action, f, coarse),
                    SphericalAverageService.weighted_average(action, f, direct),
                )

    def test_monotone(self):
        rng = random.Random(85)
        action, f = random_case(rng)
        g = Observable(tuple(v + rng.randint(0, 3) for v in f))
        psi = DensityService.random_density(rng, 2, 2)
        mu = SphereMeasureService.mu_from_density(psi, 4)
        low = SphericalAverageService.weighted_average(action, f, mu)
        high = SphericalAverageService.weighted_average(action, g, mu)
        self.assertTrue(all(a <= b for a, b in zip(low, high)))


class ConvergenceTests(SimpleTestCase):
    def test_invariant_observable_has_zero_error(self):
        action, f = random_case(random.Random(90), max_points=12)
        invariant = ActionService.cond_exp_even(action, f)
        report = ConvergenceService.convergence_report(action, invariant, 'spherical', range(1, 9))
        for row in report.rows:
            self.assertEqual(row.error_sup, 0)
            self.assertEqual(row.error_lp, 0)
        self.assertTrue(all(line.split(',')[1] == '0' for line in format_convergence_csv(report).splitlines()[1:]))

    def test_eta_with_constant_density_matches_spherical(self):
        action, f = random_case(random.Random(91))
        psi = DensityService.constant_density(2)
        spherical = ConvergenceService.convergence_report(action, f, 'spherical', range(1, 7))
        eta = ConvergenceService.convergence_report(action, f, 'eta', range(1, 7), psi=psi)
        self.assertEqual(format_convergence_csv(spherical), format_convergence_csv(eta))

    def test_sanov_errors_decay(self):
        action = ActionBuilderService.sanov_mod(5)
        indicator = ObservableService.indicator(action, 1)
        f = ObservableService.difference(indicator, ActionService.cond_exp_even(action, indicator))
        report = ConvergenceService.convergence_report(action, f, 'spherical', range(1, 9))
        self.assertGreater(report.rows[0].error_sup, 0)
        self.assertLess(report.rows[-1].error_sup, report.rows[0].error_sup)
        self.assertTrue(report.summary['final_is_minimum'])
        self.assertEqual(report.summary['orbit_count'], ActionService.orbit_count(action))
        self.assertEqual(report.summary['orbit_count'], 2)
        self.assertEqual(report.rows[0].error_sup, Fraction(1, 8))
        self.assertEqual(report.rows[-1].error_sup, Fraction(10321, 114791256))

    def test_reproducible(self):
        action, f = random_case(random.Random(92))
        psi = DensityService.random_density(random.Random(93), 2, 2)
        first = ConvergenceService.convergence_report(action, f, 'mu', range(1, 6), p=3, psi=psi)
        second = ConvergenceService.convergence_report(action, f, 'mu', range(1, 6), p=3, psi=psi)
        self.assertEqual(format_convergence_csv(first), format_convergence_csv(second))
        self.assertEqual(first.summary, second.summary)

    def test_maximal_profile(self):
        rng = random.Random(94)
        action, f = random_case(rng)
        table = SphericalAverageService.spherical_dp(action, f, 6)
        profile = ConvergenceService.maximal_profile(action, table, f, thresholds=(0, 1, 2))
        self.assertEqual(profile.indices, tuple(range(1, 7)))
        for n in range(1, 7):
            for m, a in zip(profile.values, table.at(n)):
                self.assertGreaterEqual(m, abs(a))
        self.assertEqual(len(profile.weak_type_rows), 3)

    def test_maximal_profile_of_constant(self):
        action = ActionBuilderService.random_action(6, seed=3)
        f = ObservableService.constant(action, -2)
        table = SphericalAverageService.spherical_dp(action, f, 4)
        profile = ConvergenceService.maximal_profile(action, table, f)
        self.assertEqual(set(profile.values), {2})

    def test_exponent_experiment_reports(self):
        action, f = random_case(random.Random(95))
        psi = DensityService.random_density(random.Random(96), 2, 3)
        header, rows = ConvergenceService.lq_pairing_experiment(action, f, psi, range(1, 4), 3, 2)
        self.assertTrue(header['exponents_admissible'])
        # pi(mu_2n^psi) = psi once 2n >= depth(psi)
        self.assertEqual(rows[-1][1], 0)


class FormatTests(SimpleTestCase):
    def test_numbers(self):
        self.assertEqual(format_number(Fraction(0)), "0")
        self.assertEqual(format_number(Fraction(-1, 3)), "-1/3")
        self.assertEqual(format_number(0.1), "0.1")
        self.assertEqual(format_number(RealInterval(1.0, 1.5, 1.25)), "1.25")
