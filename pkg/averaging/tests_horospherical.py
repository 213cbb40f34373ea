from fractions import Fraction
import random

from django.test import SimpleTestCase

from actions.formats import parse_observable_spec
from actions.services.action_builder_service import ActionBuilderService
from actions.services.action_service import ActionService
from actions.services.observable_service import ObservableService
from averaging.services.horospherical_service import HorosphericalAverageService
from averaging.services.spherical_service import SphericalAverageService
from averaging.tests import random_case
from boundary.domain import BoundaryPrefix
from boundary.exceptions import EvenRadiusRequired, InsufficientDepth
from boundary.services.boundary_service import BoundaryService
from densities.services.density_service import DensityService
from free_group.exceptions import InvalidParameter
from free_group.formats import parse_word
from free_group.services.sampling_service import SamplingService


def random_prefix(rng, rank, depth):
    return BoundaryPrefix(SamplingService.random_word(rng, rank, depth))


class HorosphericalAverageTests(SimpleTestCase):
    def test_constant_is_fixed(self):
        action = ActionBuilderService.random_action(8, seed=5)
        f = ObservableService.constant(action, 7)
        p = random_prefix(random.Random(100), 2, 6)
        for n in range(1, 6):
            self.assertEqual(HorosphericalAverageService.horospherical_average(action, f, p, n), f)
            self.assertEqual(HorosphericalAverageService.horospherical_ball_average(action, f, p, n), f)

    def test_dp_matches_enumeration(self):
        rng = random.Random(101)
        for rank, n_max in ((2, 4), (3, 3)):
            for _ in range(4):
                action, f = random_case(rng, rank=rank, max_points=8)
                p = random_prefix(rng, rank, n_max + 1)
                for n in range(1, n_max + 1):
                    self.assertEqual(
                        HorosphericalAverageService.horospherical_average(action, f, p, n),
                        HorosphericalAverageService.horospherical_average(action, f, p, n, method='enumerate'),
                    )

    def test_ball_dp_matches_enumeration(self):
        rng = random.Random(102)
        for _ in range(4):
            action, f = random_case(rng)
            p = random_prefix(rng, 2, 5)
            for n in range(0, 5):
                self.assertEqual(
                    HorosphericalAverageService.horospherical_ball_average(action, f, p, n),
                    HorosphericalAverageService.horospherical_ball_average(action, f, p, n, method='enumerate'),
                )

    def test_depends_on_first_letters_only(self):
        rng = random.Random(103)
        action, f = random_case(rng)
        for _ in range(100):
            n = rng.randint(1, 4)
            head = SamplingService.random_word(rng, 2, n + 1)
            p = BoundaryPrefix(SamplingService.random_extension(rng, head, n + 4))
            q = BoundaryPrefix(SamplingService.random_extension(rng, head, n + 4))
            self.assertEqual(
                HorosphericalAverageService.horospherical_average(action, f, p, n),
                HorosphericalAverageService.horospherical_average(action, f, q, n),
            )

    def test_divisor(self):
        p = random_prefix(random.Random(104), 3, 5)
        for n in range(1, 5):
            self.assertEqual(len(BoundaryService.horosphere_elements(p, n)), 4 * 5 ** (n - 1))

    def test_errors(self):
        action, f = random_case(random.Random(105))
        p = random_prefix(random.Random(106), 2, 3)
        with self.assertRaises(InsufficientDepth):
            HorosphericalAverageService.horospherical_average(action, f, p, 3)
        with self.assertRaises(EvenRadiusRequired):
            HorosphericalAverageService.horospherical_at_length(action, f, p, 3)
        with self.assertRaises(InvalidParameter):
            HorosphericalAverageService.horospherical_average(action, f, p, 0)
        self.assertEqual(
            HorosphericalAverageService.horospherical_at_length(action, f, p, 4),
            HorosphericalAverageService.horospherical_average(action, f, p, 2),
        )


class BoundaryIntegratedAverageTests(SimpleTestCase):
    def test_two_ways_agree(self):
        rng = random.Random(110)
        for _ in range(20):
            rank = rng.choice((2, 2, 3))
            action, f = random_case(rng, rank=rank, max_points=8, blocks=rng.randint(1, 2))
            psi = DensityService.random_density(rng, rank, rng.randint(0, 3))
            n = rng.randint(1, 3 if rank == 2 else 2)
            way_a, way_b = HorosphericalAverageService.boundary_integrated_average(action, f, psi, n)
            self.assertEqual(way_a, way_b)

    def test_constant_density_is_spherical(self):
        action, f = random_case(random.Random(111))
        table = SphericalAverageService.spherical_dp(action, f, 6)
        psi = DensityService.constant_density(2)
        for n in (1, 2, 3):
            way_a, way_b = HorosphericalAverageService.boundary_integrated_average(action, f, psi, n)
            self.assertEqual(way_a, table.at(2 * n))
            self.assertEqual(way_b, table.at(2 * n))

    def test_constant_observable(self):
        action = ActionBuilderService.random_action(6, seed=8)
        f = ObservableService.constant(action, Fraction(5, 3))
        psi = DensityService.random_density(random.Random(112), 2, 2)
        for value in HorosphericalAverageService.boundary_integrated_average(action, f, psi, 2):
            self.assertEqual(value, f)


class WeakPairingTests(SimpleTestCase):
    def test_matches_enumeration(self):
        rng = random.Random(120)
        for _ in range(200):
            action, f = random_case(rng, max_points=6)
            psi = DensityService.random_density(rng, 2, rng.randint(0, 3))
            x = rng.randrange(action.size)
            n = rng.randint(1, 2)
            self.assertEqual(
                HorosphericalAverageService.weak_pairing(action, f, x, psi, n),
                HorosphericalAverageService.weak_pairing(action, f, x, psi, n, method='enumerate'),
            )

    def test_constant_observable(self):
        action = ActionBuilderService.random_action(5, seed=9)
        f = ObservableService.constant(action, 4)
        psi = DensityService.random_density(random.Random(121), 2, 2)
        self.assertEqual(HorosphericalAverageService.weak_pairing(action, f, 2, psi, 3), 4)

    def test_constant_density_is_spherical(self):
        action, f = random_case(random.Random(122))
        table = SphericalAverageService.spherical_dp(action, f, 8)
        psi = DensityService.constant_density(2)
        for n in range(1, 5):
            for x in range(action.size):
                self.assertEqual(HorosphericalAverageService.weak_pairing(action, f, x, psi, n), table.at(2 * n)[x])

    def test_decays_towards_the_invariant_mean(self):
        action = ActionBuilderService.sanov_mod(5)
        f = parse_observable_spec('centered-indicator:1', action)
        target = ActionService.cond_exp_even(action, f)
        psi = DensityService.sector_density(parse_word('a1', 2))
        mass = DensityService.integrate(psi)

        def distance(n):
            return max(
                abs(HorosphericalAverageService.weak_pairing(action, f, x, psi, n) - target[x] * mass)
                for x in range(action.size)
            )

        self.assertLess(distance(8), distance(1))


class LiftTests(SimpleTestCase):
    def test_omega_keeps_the_point(self):
        rng = random.Random(130)
        action = ActionBuilderService.random_action(9, seed=10)
        for _ in range(50):
            n = rng.randint(6, 9)
            p = random_prefix(rng, 2, n + 2)
            x = rng.randrange(action.size)
            y, q = HorosphericalAverageService.lift(action, x, p, n, 'omega')
            self.assertEqual(y, x)
            self.assertEqual(BoundaryService.boundary_metric(p, q), Fraction(1, n))

    def test_psi_after_omega_against_shifted_phi(self):
        rng = random.Random(131)
        for _ in range(50):
            rank = rng.choice((2, 3))
            action = ActionBuilderService.random_action(8, seed=rng.randint(0, 999), rank=rank)
            n = rng.randint(6, 9)
            p = random_prefix(rng, rank, n + 3)
            x = rng.randrange(action.size)
            _, eta = HorosphericalAverageService.lift(action, x, p, n, 'omega')
            left = HorosphericalAverageService.lift(action, x, eta, n, 'psi')
            right = HorosphericalAverageService.shift_lift(
                action, *HorosphericalAverageService.lift(action, x, p, n, 'phi'), times=2
            )
            self.assertEqual(left[0], right[0])
            self.assertEqual(BoundaryService.boundary_metric(left[1], right[1]), Fraction(1, n - 1))

    def test_phi_uses_the_omega_witness(self):
        action = ActionBuilderService.sanov_mod(3)
        p = random_prefix(random.Random(132), 2, 9)
        y, q = HorosphericalAverageService.lift(action, 4, p, 7, 'phi')
        self.assertEqual(q, HorosphericalAverageService.lift(action, 4, p, 7, 'omega')[1])
        self.assertNotEqual((y, q), (4, p))

    def test_unknown_lift(self):
        p = random_prefix(random.Random(133), 2, 9)
        with self.assertRaises(InvalidParameter):
            HorosphericalAverageService.lift(ActionBuilderService.two_point_swap(), 0, p, 6, 'theta')
