from fractions import Fraction
import random

from django.test import SimpleTestCase, override_settings

from boundary.domain import BoundaryPrefix
from boundary.services.boundary_map_service import BoundaryMapService
from free_group.domain import ReducedWord
from free_group.exceptions import InvalidParameter, SpecParseError
from free_group.services.sampling_service import SamplingService
from relations.domain import FiniteRelation, FolnerFamily, TieBreak
from relations.exceptions import InvalidRelation
from relations.formats import format_covering_csv, format_instance, parse_instance
from relations.services.covering_service import CoveringService
from relations.services.instance_service import InstanceService
from relations.services.relation_service import RelationService


def singleton_family(size, n_max=2):
    return FolnerFamily(tuple(tuple(frozenset({b}) for b in range(size)) for _ in range(n_max)))


def class_family(relation, n_max=2):
    return FolnerFamily(tuple(
        tuple(frozenset(relation.class_of(b)) for b in range(relation.size)) for _ in range(n_max)
    ))


def random_values(rng, size):
    return [Fraction(rng.randint(-6, 6)) for _ in range(size)]


def three_point_instance():
    relation = FiniteRelation((0, 0, 0), (Fraction(1, 3),) * 3)
    family = FolnerFamily((
        tuple(frozenset({b}) for b in range(3)),
        (frozenset({0, 1, 2}),) * 3,
    ))
    return relation, family


class ValidateTests(SimpleTestCase):
    def test_random_instances_are_valid(self):
        for seed in range(20):
            relation, family = InstanceService.random_instance(seed, max_points=50)
            self.assertTrue(RelationService.validate(relation, family))

    def test_weights_must_be_class_constant(self):
        relation = FiniteRelation((0, 0, 1), (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)))
        with self.assertRaises(InvalidRelation) as ctx:
            RelationService.validate(relation)
        self.assertEqual(ctx.exception.element, 1)

    def test_mass_must_be_one(self):
        with self.assertRaises(InvalidRelation):
            RelationService.validate(FiniteRelation((0, 1), (Fraction(1, 3), Fraction(1, 3))))

    def test_family_stays_in_class(self):
        relation = FiniteRelation((0, 1), (Fraction(1, 2),) * 2)
        family = FolnerFamily(((frozenset({0, 1}), frozenset({1})),))
        with self.assertRaises(InvalidRelation):
            RelationService.validate(relation, family)

    def test_tie_break_injective(self):
        with self.assertRaises(InvalidRelation):
            TieBreak((1, 2, 1))

    def test_automorphism_keeps_classes(self):
        relation = FiniteRelation((0, 0, 1), (Fraction(1, 3),) * 3)
        self.assertEqual(RelationService.inner_automorphism(relation, (1, 0, 2))(0), 1)
        with self.assertRaises(InvalidRelation):
            RelationService.inner_automorphism(relation, (2, 1, 0))
        with self.assertRaises(InvalidRelation):
            RelationService.inner_automorphism(relation, (0, 0, 2))


class AverageTests(SimpleTestCase):
    def test_constant(self):
        relation, family = InstanceService.random_instance(1, max_points=40)
        f = [Fraction(3)] * relation.size
        self.assertEqual(set(RelationService.invariant_cond_exp(relation, f)), {3})
        for n in range(1, family.n_max + 1):
            self.assertEqual(set(RelationService.relation_average(family, f, n)), {3})

    def test_full_class_average_is_cond_exp(self):
        rng = random.Random(140)
        for seed in range(10):
            relation, _ = InstanceService.random_instance(seed, max_points=60)
            f = random_values(rng, relation.size)
            self.assertEqual(
                RelationService.relation_average(class_family(relation), f, 1),
                RelationService.invariant_cond_exp(relation, f),
            )

    def test_invariant_functions_are_fixed(self):
        rng = random.Random(141)
        for seed in range(10):
            relation, family = InstanceService.random_instance(seed, max_points=60)
            invariant = RelationService.invariant_cond_exp(relation, random_values(rng, relation.size))
            self.assertEqual(RelationService.invariant_cond_exp(relation, invariant), invariant)
            for n in range(1, family.n_max + 1):
                self.assertEqual(RelationService.relation_average(family, invariant, n), invariant)


class DoublingTests(SimpleTestCase):
    def test_singletons(self):
        relation, _ = InstanceService.random_instance(2, max_points=30)
        self.assertEqual(RelationService.doubling_constant(relation, singleton_family(relation.size)), 1)

    def test_boundary_families(self):
        instance = InstanceService.boundary_instance(2, 4, 2)
        self.assertEqual(RelationService.doubling_constant(instance.relation, instance.ball), 1)
        self.assertLessEqual(RelationService.doubling_constant(instance.relation, instance.sphere), Fraction(3, 2))


class DefectTests(SimpleTestCase):
    def test_identity_has_no_defect(self):
        relation, family = InstanceService.random_instance(3, max_points=40)
        identity = RelationService.identity_automorphism(relation)
        for n in range(1, family.n_max + 1):
            self.assertEqual(set(RelationService.folner_defect(family, identity, n)), {0})

    def test_finite_order_automorphism_leaves_balls_invariant(self):
        rng = random.Random(150)
        instance = InstanceService.boundary_instance(2, 4, 3)
        for _ in range(20):
            m = rng.randint(1, 3)
            p = BoundaryPrefix(SamplingService.random_word(rng, 2, 4))
            while True:
                head = SamplingService.random_word(rng, 2, m - 1)
                if m == 1 or head.letters[-1] != p.coordinate(m).inverse():
                    break
            q = BoundaryPrefix(ReducedWord(2, head.letters + p.word.letters[m - 1:]))
            beta = BoundaryMapService.build_inner_automorphism(p, q, m)
            phi = InstanceService.inner_automorphism_from_table(instance, beta)
            for n in range(m, 4):
                self.assertEqual(set(RelationService.folner_defect(instance.ball, phi, n)), {0})

    def test_coboundary_bound(self):
        rng = random.Random(151)
        for trial in range(100):
            relation, family = InstanceService.random_instance(trial, max_points=40)
            phi = RelationService.random_inner_automorphism(rng, relation)
            f = random_values(rng, relation.size)
            n = rng.randint(1, family.n_max)
            for gap, bound in RelationService.coboundary_gap(family, f, phi, n):
                self.assertLessEqual(gap, bound)


class CoveringTests(SimpleTestCase):
    def test_singletons_select_everything(self):
        relation, _ = InstanceService.random_instance(4, max_points=50)
        family = singleton_family(relation.size, 3)
        Y, rho, tie_break = InstanceService.random_covering_input(random.Random(160), relation, family)
        self.assertEqual(CoveringService.covering_select(relation, family, Y, rho, tie_break), tuple(sorted(Y)))

    def test_guarantees_on_random_instances(self):
        rng = random.Random(161)
        for seed in range(100):
            relation, family = InstanceService.random_instance(seed, max_points=80)
            Y, rho, tie_break = InstanceService.random_covering_input(rng, relation, family)
            report = CoveringService.covering_report(relation, family, Y, rho, tie_break)
            self.assertTrue(report.disjoint_ok, seed)
            self.assertTrue(report.measure_ok, seed)
            self.assertLessEqual(report.ratio, report.doubling)

    def test_ball_family_covers_in_measure(self):
        rng = random.Random(162)
        instance = InstanceService.boundary_instance(2, 4, 2)
        for _ in range(10):
            Y, rho, tie_break = InstanceService.random_covering_input(rng, instance.relation, instance.ball)
            report = CoveringService.covering_report(instance.relation, instance.ball, Y, rho, tie_break)
            self.assertEqual(report.doubling, 1)
            self.assertGreaterEqual(report.selected_mass, report.covered_mass)

    def test_input_order_does_not_matter(self):
        rng = random.Random(163)
        relation, family = InstanceService.random_instance(5, max_points=60)
        Y, rho, tie_break = InstanceService.random_covering_input(rng, relation, family)
        expected = CoveringService.covering_select(relation, family, Y, rho, tie_break)
        for _ in range(5):
            rng.shuffle(Y)
            self.assertEqual(CoveringService.covering_select(relation, family, Y, rho, tie_break), expected)


class MaximalCheckTests(SimpleTestCase):
    def test_centered_families_pass(self):
        rng = random.Random(170)
        for seed in range(100):
            relation, family = InstanceService.random_instance(seed, max_points=40, centered=True)
            f = random_values(rng, relation.size)
            check = CoveringService.maximal_check(relation, family, f, Fraction(rng.randint(1, 8), 2), family.n_max)
            self.assertTrue(check.certified)
            self.assertTrue(check.passed, seed)

    def test_constant(self):
        relation, family = InstanceService.random_instance(6, max_points=40, centered=True)
        check = CoveringService.maximal_check(relation, family, [Fraction(2)] * relation.size, 1, 2)
        self.assertEqual(check.mass, 1)
        self.assertGreaterEqual(check.bound, 1)

    def test_point_mass(self):
        relation, family = three_point_instance()
        check = CoveringService.maximal_check(relation, family, [1, 0, 0], Fraction(1, 2), 2)
        self.assertEqual(check.mass, Fraction(1, 3))
        self.assertEqual(check.bound, Fraction(2, 3))
        self.assertTrue(check.passed)
        self.assertEqual(CoveringService.maximal_function(family, [1, 0, 0], 2), (1, Fraction(1, 3), Fraction(1, 3)))


class NonShrinkingTests(SimpleTestCase):
    def test_centered_is_certified(self):
        relation, family = InstanceService.random_instance(7, max_points=40, centered=True)
        for trials in (0, 10):
            result = CoveringService.non_shrinking(relation, family, trials)
            self.assertTrue(result.certified)
            self.assertEqual(result.value, 1)

    def test_boundary_sphere_family(self):
        instance = InstanceService.boundary_instance(2, 4, 2)
        self.assertTrue(instance.ball.is_centered)
        self.assertFalse(instance.sphere.is_centered)
        result = CoveringService.non_shrinking(instance.relation, instance.sphere, trials=50, seed=3)
        self.assertFalse(result.certified)
        self.assertGreaterEqual(result.value, Fraction(2, 3))


class InstanceTests(SimpleTestCase):
    def test_boundary_instance(self):
        instance = InstanceService.boundary_instance(2, 4, 2)
        self.assertEqual(instance.relation.size, 108)
        self.assertEqual({len(m) for m in instance.relation.members.values()}, {9})
        self.assertTrue(RelationService.validate(instance.relation, instance.ball))
        self.assertTrue(RelationService.validate(instance.relation, instance.sphere))

    def test_boundary_instance_parameters(self):
        with self.assertRaises(InvalidParameter):
            InstanceService.boundary_instance(2, 2, 2)

    def test_random_instance_is_seeded(self):
        self.assertEqual(InstanceService.random_instance(9), InstanceService.random_instance(9))
        relation, _ = InstanceService.random_instance(9, max_points=25)
        self.assertLessEqual(relation.size, 25)

    @override_settings(LAB_RANDOM_INSTANCE={'classes': (1, 1), 'class_size': (4, 4), 'n_max': 2})
    def test_settings_shape_random_instances(self):
        relation, family = InstanceService.random_instance(0)
        self.assertEqual(relation.size, 4)
        self.assertEqual(family.n_max, 2)


class FormatTests(SimpleTestCase):
    def test_instance_text(self):
        relation, family = three_point_instance()
        text = format_instance(relation, family)
        self.assertTrue(text.startswith("points 3 classes 1\nclass 0 0\n"))
        self.assertIn("folner 2 1: 0 1 2\n", text)
        self.assertEqual(parse_instance(text), (relation, family))

    def test_parse_errors(self):
        with self.assertRaises(SpecParseError):
            parse_instance("points 2 classes 1\nclass 0 0\nclass 5 0\n")
        with self.assertRaises(SpecParseError) as ctx:
            parse_instance("points 1 classes 1\nclass 0 0\nweight 0 1/1\n")
        self.assertEqual(ctx.exception.position, len("points 1 classes 1\nclass 0 0\n"))

    def test_covering_csv(self):
        relation, family = three_point_instance()
        report = CoveringService.covering_report(relation, family, [0, 1], {0: 1, 1: 2}, TieBreak.identity(3))
        shrink = CoveringService.non_shrinking(relation, family)
        lines = format_covering_csv([("tiny", report, shrink)]).splitlines()
        self.assertEqual(lines[0], "instance,disjoint_ok,measure_ok,Cd,Cs,ratio")
        self.assertEqual(lines[1], "tiny,true,true,1,1,1")
