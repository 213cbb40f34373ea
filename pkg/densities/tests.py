from fractions import Fraction
import random

from django.test import SimpleTestCase, override_settings

from boundary.services.boundary_service import BoundaryService
from densities.domain import BoundaryDensity, SphereMeasure
from densities.numerics import RealInterval
from densities.formats import (
    format_density, format_measure, parse_density, parse_density_spec, parse_measure,
)
from densities.services.density_service import DensityService
from densities.services.sphere_measure_service import SphereMeasureService
from free_group.exceptions import ResourceCapExceeded, SpecParseError
from free_group.formats import parse_word
from free_group.services.word_service import WordService


def random_sphere_measure(rng, rank, n):
    raw = {g: rng.randint(0, 5) for g in WordService.sphere(rank, n)}
    if not any(raw.values()):
        raw[next(iter(raw))] = 1
    total = sum(raw.values())
    return SphereMeasure(rank, n, {g: Fraction(v, total) for g, v in raw.items() if v})


class PiBoundaryTests(SimpleTestCase):
    def test_point_mass(self):
        psi = SphereMeasureService.pi_boundary(SphereMeasureService.point_mass(parse_word("a1", 2)))
        self.assertEqual(psi.values, {parse_word("a1", 2): 4})

    def test_uniform_is_constant_one(self):
        for n in range(0, 5):
            psi = SphereMeasureService.pi_boundary(SphereMeasureService.uniform_sphere(2, n))
            self.assertTrue(DensityService.same_function(psi, DensityService.constant_density(2)))

    def test_isometry(self):
        rng = random.Random(40)
        for _ in range(100):
            mu = random_sphere_measure(rng, 2, rng.randint(1, 3))
            self.assertEqual(mu.total_mass(), 1)
            self.assertEqual(DensityService.lq_norm(SphereMeasureService.pi_boundary(mu), 1), 1)


class MuFromDensityTests(SimpleTestCase):
    def test_constant_gives_uniform(self):
        mu = SphereMeasureService.mu_from_density(DensityService.constant_density(2), 3)
        for g in WordService.sphere(2, 3):
            self.assertEqual(mu.weight(g), Fraction(1, 36))

    def test_sector_density(self):
        a1 = parse_word("a1", 2)
        mu = SphereMeasureService.mu_from_density(DensityService.sector_density(a1), 2)
        for g in WordService.sphere(2, 2):
            expected = Fraction(1, 3) if g.letters[0] == a1.letters[0] else 0
            self.assertEqual(mu.weight(g), expected)

    def test_sector_density_uniform_on_prefix(self):
        w = parse_word("a1A2", 2)
        for n in (1, 2, 3):
            mu = SphereMeasureService.mu_from_density(DensityService.sector_density(w), 2 * n)
            support = SphereMeasureService.support(mu)
            self.assertEqual(len(support), 3 ** (2 * n - 2))
            self.assertTrue(all(g.letters[:2] == w.letters for g, _ in support))
            self.assertEqual(len({weight for _, weight in support}), 1)

    def test_small_radius_matches_refinement_sum(self):
        rng = random.Random(41)
        for m in (1, 2, 3):
            psi = DensityService.random_density(rng, 2, m)
            for n in range(0, m):
                mu = SphereMeasureService.mu_from_density(psi, n)
                for g in WordService.sphere(2, n):
                    expected = sum(
                        (psi.value(w) * BoundaryService.cylinder_measure(w)
                         for w in WordService.words_with_prefix(g, m)),
                        Fraction(0),
                    )
                    self.assertEqual(mu.weight(g), expected)
                self.assertEqual(mu.total_mass(), 1)

    def test_materialize_cap(self):
        mu = SphereMeasureService.uniform_sphere(2, 20)
        self.assertEqual(mu.total_mass(), 1)
        with override_settings(LAB_MATERIALIZE_RADIUS_CAP=6):
            with self.assertRaises(ResourceCapExceeded) as ctx:
                SphereMeasureService.materialize(mu)
        self.assertEqual(ctx.exception.cap, 'LAB_MATERIALIZE_RADIUS_CAP')


class EtaFromDensityTests(SimpleTestCase):
    def test_constant_gives_uniform(self):
        for direct in (False, True):
            eta = SphereMeasureService.eta_from_density(DensityService.constant_density(2), 1, direct=direct)
            self.assertEqual(eta.radius, 2)
            for g in WordService.sphere(2, 2):
                self.assertEqual(eta.weight(g), Fraction(1, 12))

    def test_supported_on_sphere(self):
        psi = DensityService.random_density(random.Random(42), 2, 2)
        eta = SphereMeasureService.eta_from_density(psi, 2)
        for g in WordService.ball(2, 3):
            self.assertEqual(eta.weight(g), 0)

    def test_total_mass(self):
        rng = random.Random(43)
        for _ in range(50):
            psi = DensityService.random_density(rng, 2, rng.randint(0, 3))
            n = rng.randint(1, 4)
            self.assertEqual(SphereMeasureService.eta_from_density(psi, n, direct=True).total_mass(), 1)

    def test_coarse_form_matches_direct(self):
        rng = random.Random(44)
        for _ in range(10):
            psi = DensityService.random_density(rng, 2, rng.randint(0, 2))
            n = rng.randint(max(psi.depth, 1), 3)
            coarse = SphereMeasureService.materialize(SphereMeasureService.eta_from_density(psi, n))
            direct = SphereMeasureService.materialize(SphereMeasureService.eta_from_density(psi, n, direct=True))
            self.assertEqual(coarse.weights, direct.weights)

    def test_eta_mu_identity(self):
        rng = random.Random(45)
        for rank, n_max in ((2, 4), (3, 3)):
            for _ in range(10):
                psi = DensityService.random_density(rng, rank, rng.randint(0, 3))
                for n in range(1, n_max + 1):
                    self.assertEqual(SphereMeasureService.eta_mu_residual(psi, n).values, {})

    def test_limit_is_exact_at_finite_depth(self):
        rng = random.Random(46)
        for _ in range(20):
            psi = DensityService.random_density(rng, 2, rng.randint(1, 3))
            for n in range(psi.depth, psi.depth + 2):
                eta = SphereMeasureService.eta_from_density(psi, n, direct=True)
                self.assertEqual(DensityService.lq_distance(SphereMeasureService.pi_boundary(eta), psi, 1), 0)


class MartingaleTests(SimpleTestCase):
    def test_projection_at_native_depth(self):
        psi = DensityService.random_density(random.Random(47), 2, 2)
        self.assertTrue(DensityService.same_function(DensityService.martingale_project(psi, 2), psi))

    def test_tower_and_mu_identity(self):
        rng = random.Random(48)
        for _ in range(50):
            psi = DensityService.random_density(rng, 2, 3)
            n = rng.randint(0, 3)
            projected = DensityService.martingale_project(psi, n)
            self.assertTrue(DensityService.same_function(
                DensityService.martingale_project(DensityService.martingale_project(psi, n + 1), n), projected,
            ))
            via_mu = SphereMeasureService.pi_boundary(SphereMeasureService.mu_from_density(psi, n))
            self.assertTrue(DensityService.same_function(projected, via_mu))


class LqNormTests(SimpleTestCase):
    def test_constant_one(self):
        one = DensityService.constant_density(3)
        for q in (1, 2, 5, float('inf')):
            self.assertEqual(DensityService.lq_norm(one, q), 1)
        approx = DensityService.lq_norm(one, Fraction(3, 2))
        self.assertIsInstance(approx, RealInterval)
        self.assertLessEqual(approx.lower, 1.0)
        self.assertGreaterEqual(approx.upper, 1.0)
        self.assertLess(approx.width, 1e-12)

    def test_sector(self):
        rho = DensityService.sector_density(parse_word("a1", 2))
        self.assertEqual(DensityService.lq_norm(rho, 1), 1)
        self.assertEqual(DensityService.lq_norm(rho, float('inf')), 4)
        self.assertEqual(DensityService.lq_norm(rho, 2), 2)

    def test_refinement_invariant(self):
        psi = DensityService.random_density(random.Random(49), 2, 1)
        for q in (1, 3, float('inf')):
            self.assertEqual(
                DensityService.lq_norm(psi, q), DensityService.lq_norm(DensityService.refine(psi, 3), q)
            )

    def test_holder(self):
        rng = random.Random(50)
        for _ in range(100):
            psi = DensityService.random_density(rng, 2, rng.randint(0, 2))
            phi = DensityService.random_density(rng, 2, rng.randint(0, 2))
            pairing = DensityService.pairing(psi, phi)
            self.assertLessEqual(
                pairing, DensityService.lq_norm(psi, 1) * DensityService.lq_norm(phi, float('inf'))
            )
            bound = float(DensityService.lq_norm(psi, 2)) * float(DensityService.lq_norm(phi, 2))
            self.assertLessEqual(float(pairing), bound * (1 + 1e-12))


class DensityFormatTests(SimpleTestCase):
    def test_density_text(self):
        psi = DensityService.sector_density(parse_word("a2", 2))
        text = format_density(psi)
        self.assertEqual(text.splitlines()[0], "rank 2 depth 1")
        self.assertIn("a2 4/1", text.splitlines())
        self.assertIn("a1 0/1", text.splitlines())
        self.assertTrue(DensityService.same_function(parse_density(text), psi))

    def test_measure_text(self):
        mu = SphereMeasureService.mu_from_density(DensityService.sector_density(parse_word("a1", 2)), 3)
        parsed = parse_measure(format_measure(mu))
        self.assertEqual(parsed, mu)
        self.assertTrue(format_measure(mu).startswith("rank 2 radius 3 factor 1\n"))

    def test_parse_errors(self):
        with self.assertRaises(SpecParseError):
            parse_density("rank 2 depth x\n")
        with self.assertRaises(SpecParseError) as ctx:
            parse_density("rank 2 depth 1\na1 1/2\na2 one\n")
        self.assertEqual(ctx.exception.position, len("rank 2 depth 1\na1 1/2\na2 "))

    def test_density_spec(self):
        self.assertTrue(DensityService.same_function(
            parse_density_spec("uniform", 2), DensityService.constant_density(2)
        ))
        self.assertEqual(parse_density_spec("sector:a1A2", 2).depth, 2)
        with self.assertRaises(SpecParseError) as ctx:
            parse_density_spec("sector:a1x", 2)
        self.assertEqual(ctx.exception.position, 9)
        with self.assertRaises(SpecParseError):
            parse_density_spec("gaussian", 2)
